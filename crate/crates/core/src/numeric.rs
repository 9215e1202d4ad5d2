//! The q = 1 layer: integer alternating binomial sums and their divisibility.
//!
//! Binomials here come from their own multiplicative row builder and never
//! from the q-binomial table, so this module doubles as an oracle for the
//! polynomial code.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::check::{CheckResult, Witness};

fn row_cache() -> &'static Mutex<HashMap<i64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C(n, 0), ..., C(n, n)` by `C(n, k+1) = C(n, k) (n-k) / (k+1)`.
pub fn binom_row(n: i64) -> Arc<Vec<BigInt>> {
    assert!(n >= 0);
    if let Some(row) = row_cache().lock().unwrap().get(&n) {
        return row.clone();
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        c = c * (n - k) / (k + 1);
    }
    let row = Arc::new(row);
    row_cache().lock().unwrap().insert(n, row.clone());
    row
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binom_row(n)[k as usize].clone()
    }
}

pub fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(top, offset + k)^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomFactor {
    pub top: i64,
    pub offset: i64,
    pub power: u32,
}

impl BinomFactor {
    pub fn new(top: i64, offset: i64, power: u32) -> Self {
        Self { top, offset, power }
    }

    /// Central factor `C(2n, n + k)^power`.
    pub fn central(n: i64, power: u32) -> Self {
        Self::new(2 * n, n, power)
    }
}

/// `sum_{k=lo}^{hi} (-1)^k prod_f C(top_f, offset_f + k)^power_f`.
pub fn alt_binom_sum(factors: &[BinomFactor], lo: i64, hi: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for k in lo..=hi {
        let mut term = BigInt::one();
        for f in factors {
            let c = binomial(f.top, f.offset + k);
            if c.is_zero() {
                term = BigInt::zero();
                break;
            }
            term *= Pow::pow(&c, f.power);
        }
        if k.rem_euclid(2) == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntForm {
    /// `prod_i C(2 n_i, n_i + k)^{r_i}`.
    Central,
    /// `prod_i C(n_i + n_{i+1}, n_i + k)^{r_i}` with `n_{m+1} = n_1`.
    Cyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSumSpec {
    pub n: Vec<i64>,
    pub r: Vec<u32>,
    pub form: IntForm,
}

impl IntSumSpec {
    pub fn new(n: Vec<i64>, r: Vec<u32>, form: IntForm) -> Result<Self, String> {
        if n.is_empty() || n.len() != r.len() {
            return Err("n and r must be nonempty and of equal length".into());
        }
        if n.iter().any(|&v| v < 1) || r.iter().any(|&v| v < 1) {
            return Err("entries must be positive".into());
        }
        Ok(Self { n, r, form })
    }

    pub fn central(n: &[i64]) -> Self {
        Self { n: n.to_vec(), r: vec![1; n.len()], form: IntForm::Central }
    }

    pub fn cyclic(n: &[i64]) -> Self {
        Self { n: n.to_vec(), r: vec![1; n.len()], form: IntForm::Cyclic }
    }

    fn factors(&self) -> Vec<BinomFactor> {
        let m = self.n.len();
        (0..m)
            .map(|i| {
                let ni = self.n[i];
                let top = match self.form {
                    IntForm::Central => 2 * ni,
                    IntForm::Cyclic => ni + self.n[(i + 1) % m],
                };
                BinomFactor::new(top, ni, self.r[i])
            })
            .collect()
    }
}

/// The signed sum over `k`; terms outside the common support vanish.
pub fn alt_sum_int(spec: &IntSumSpec) -> BigInt {
    let span = *spec.n.iter().min().unwrap();
    let span = match spec.form {
        IntForm::Central => span,
        IntForm::Cyclic => spec.n[0],
    };
    alt_binom_sum(&spec.factors(), -span, span)
}

fn divide(check: &str, value: &BigInt, divisor: &BigInt) -> Result<BigInt, CheckResult> {
    let (quot, rem) = value.div_mod_floor(divisor);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(CheckResult::counterexample(
            check,
            Witness::IntNotDivisible { value: value.clone(), divisor: divisor.clone(), remainder: rem },
        ))
    }
}

/// `sum_k (-1)^k C(2n, n+k)^m / C(2n, n)`.
pub fn calkin_sum(n: i64, m: u32) -> Result<BigInt, CheckResult> {
    let total = alt_binom_sum(&[BinomFactor::central(n, m)], -n, n);
    divide("calkin", &total, &binomial(2 * n, n)).map_err(|c| c.with("n", n).with("m", m as i64))
}

/// `sum_{k=0}^n C(2n+k, k) C(2n, n+k)^2`.
pub fn calkin_m4(n: i64) -> BigInt {
    (0..=n)
        .map(|k| binomial(2 * n + k, k) * Pow::pow(&binomial(2 * n, n + k), 2u32))
        .sum()
}

/// `sum_{k=0}^n C(3n-k, n-k) C(2n+k, k) C(2n, n+k)^2`.
pub fn calkin_m5(n: i64) -> BigInt {
    (0..=n)
        .map(|k| {
            binomial(3 * n - k, n - k) * binomial(2 * n + k, k) * Pow::pow(&binomial(2 * n, n + k), 2u32)
        })
        .sum()
}

/// Calkin quotients for `m = 1..=5` against `0, 1, C(3n, n)` and the two single sums.
pub fn check_calkin(n: i64) -> CheckResult {
    let expected = [
        BigInt::zero(),
        BigInt::one(),
        binomial(3 * n, n),
        calkin_m4(n),
        calkin_m5(n),
    ];
    for (m, want) in (1..=5u32).zip(expected) {
        match calkin_sum(n, m) {
            Err(c) => return c,
            Ok(got) if got != want => {
                return CheckResult::counterexample("calkin", Witness::IntMismatch { lhs: got, rhs: want })
                    .with("n", n)
                    .with("m", m as i64)
            }
            Ok(_) => {}
        }
    }
    CheckResult::verified("calkin").with("n", n).with("m", "1..5")
}

/// Integer multisum side: `C(n_1+n_m, n_1) sum_lambda prod C(lambda_{i-1}, lambda_i) C(n_{i+1}+n_{i+2}, n_{i+1}-lambda_i)`.
pub fn calkin_general_rhs(n: &[i64]) -> BigInt {
    fn rec(n: &[i64], depth: usize, prev: i64, partial: BigInt, acc: &mut BigInt) {
        if depth == n.len() - 2 {
            *acc += partial;
            return;
        }
        let (a, b) = (n[depth + 1], n[depth + 2]);
        for lam in 0..=prev.min(a) {
            let f = binomial(prev, lam) * binomial(a + b, a - lam);
            rec(n, depth + 1, lam, &partial * f, acc);
        }
    }
    assert!(n.len() >= 3);
    let mut acc = BigInt::zero();
    rec(n, 0, n[0], BigInt::one(), &mut acc);
    binomial(n[0] + n[n.len() - 1], n[0]) * acc
}

pub fn check_calkin_general(n: &[i64]) -> CheckResult {
    let lhs = alt_sum_int(&IntSumSpec::cyclic(n));
    let rhs = calkin_general_rhs(n);
    CheckResult::from_bool("calkin-general", lhs == rhs, || Witness::IntMismatch { lhs: lhs.clone(), rhs: rhs.clone() })
        .with("n", n)
}

/// `n_1! prod_i (n_i+n_{i+1})! / (2n_i)! * sum_k (-1)^k prod_i C(2n_i, n_i+k)^{r_i}` with `n_{m+1} = 0`.
pub fn rebino_value(n: &[i64], r: &[u32]) -> Result<BigInt, Witness> {
    let m = n.len();
    let spec = IntSumSpec { n: n.to_vec(), r: r.to_vec(), form: IntForm::Central };
    let mut num = factorial(n[0]) * alt_sum_int(&spec);
    let mut den = BigInt::one();
    for i in 0..m {
        let next = if i + 1 < m { n[i + 1] } else { 0 };
        num *= factorial(n[i] + next);
        den *= factorial(2 * n[i]);
    }
    let (quot, rem) = num.div_mod_floor(&den);
    if !rem.is_zero() {
        return Err(Witness::IntNotDivisible { value: num, divisor: den, remainder: rem });
    }
    if quot.is_negative() {
        return Err(Witness::Negative { value: quot });
    }
    Ok(quot)
}

pub fn check_rebino(n: &[i64]) -> CheckResult {
    check_rebino_powers(n, &vec![1; n.len()])
}

/// The same quantity with arbitrary positive exponents `r_i`.
pub fn check_rebino_powers(n: &[i64], r: &[u32]) -> CheckResult {
    let result = match rebino_value(n, r) {
        Ok(_) => CheckResult::verified("rebino"),
        Err(w) => CheckResult::counterexample("rebino", w),
    };
    let r: Vec<i64> = r.iter().map(|&x| x as i64).collect();
    result.with("n", n).with("r", r)
}

/// `(2m)! (2n)! / ((m+n)! m! n!)`.
pub fn mn_divisor(m: i64, n: i64) -> BigInt {
    factorial(2 * m) * factorial(2 * n) / (factorial(m + n) * factorial(m) * factorial(n))
}

/// `sum_k (-1)^k C(2m, m+k)^r C(2n, n+k)^s` divisible by [`mn_divisor`].
pub fn check_cor_mn(m: i64, n: i64, r: u32, s: u32) -> CheckResult {
    let sum = alt_binom_sum(&[BinomFactor::central(m, r), BinomFactor::central(n, s)], -m.min(n), m.min(n));
    let result = match divide("cor-mn", &sum, &mn_divisor(m, n)) {
        Ok(q) => CheckResult::verified("cor-mn").with("quotient", q.to_string().as_str()),
        Err(c) => c,
    };
    result.with("m", m).with("n", n).with("r", r as i64).with("s", s as i64)
}

/// Divisibility suites of the integer layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Cor43,
    Cor44,
    Cor46,
    Cor47,
    Cor246,
    Cor248,
    Conj51,
    Conj52,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Cor43,
        Suite::Cor44,
        Suite::Cor46,
        Suite::Cor47,
        Suite::Cor246,
        Suite::Cor248,
        Suite::Conj51,
        Suite::Conj52,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Cor43 => "cor43",
            Suite::Cor44 => "cor44",
            Suite::Cor46 => "cor46",
            Suite::Cor47 => "cor47",
            Suite::Cor246 => "cor246",
            Suite::Cor248 => "cor248",
            Suite::Conj51 => "conj51",
            Suite::Conj52 => "conj52",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.id() == s)
    }
}

/// Grid limits: every size parameter in `1..=n_max`, exponent sums at most `exp_sum_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteBounds {
    pub n_max: i64,
    pub exp_sum_max: u32,
}

/// One grid point: the sum's factors, its `k` range and the claimed divisors.
#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub params: Vec<(&'static str, i64)>,
    pub factors: Vec<BinomFactor>,
    pub k_range: (i64, i64),
    pub divisors: Vec<BigInt>,
}

/// Exponent triples `(r, s, t)` with `r >= r0`, `s >= s0`, `t >= t0` and `r + s + t <= max`.
fn triples(r0: u32, s0: u32, t0: u32, max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for r in r0..=max {
        for s in s0..=max {
            for t in t0..=max {
                if r + s + t <= max {
                    out.push((r, s, t));
                }
            }
        }
    }
    out
}

pub fn suite_instances(suite: Suite, b: SuiteBounds) -> Vec<SuiteInstance> {
    let mut out = Vec::new();
    let e = b.exp_sum_max;
    let ns = 1..=b.n_max;
    match suite {
        Suite::Cor43 => {
            for m in ns.clone() {
                for n in ns.clone() {
                    for r in (1..).take_while(|r| 2 * r <= e) {
                        out.push(SuiteInstance {
                            params: vec![("m", m), ("n", n), ("r", r as i64)],
                            factors: vec![BinomFactor::new(m + n, m, r), BinomFactor::new(m + n, n, r)],
                            k_range: (-m, m),
                            divisors: vec![binomial(m + n, m)],
                        });
                    }
                }
            }
        }
        Suite::Cor44 => {
            for l in ns.clone() {
                for m in ns.clone() {
                    for n in ns.clone() {
                        for r in (1..).take_while(|r| 3 * r <= e) {
                            out.push(SuiteInstance {
                                params: vec![("l", l), ("m", m), ("n", n), ("r", r as i64)],
                                factors: vec![
                                    BinomFactor::new(l + m, l, r),
                                    BinomFactor::new(m + n, m, r),
                                    BinomFactor::new(n + l, n, r),
                                ],
                                k_range: (-l, l),
                                divisors: vec![binomial(l + m, l), binomial(m + n, m), binomial(n + l, n)],
                            });
                        }
                    }
                }
            }
        }
        Suite::Cor46 | Suite::Cor47 => {
            let list: Vec<(u32, u32, u32)> = if suite == Suite::Cor46 {
                triples(1, 0, 1, e)
                    .into_iter()
                    .filter(|&(r, _, t)| 2 * r + t <= e)
                    .map(|(r, _, t)| (r, r, t))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect()
            } else {
                triples(0, 0, 1, e)
            };
            for n in ns.clone() {
                for &(r, s, t) in &list {
                    let divisor = if suite == Suite::Cor46 {
                        binomial(2 * n, n) * (2 * n + 1)
                    } else {
                        binomial(2 * n, n)
                    };
                    out.push(SuiteInstance {
                        params: vec![("n", n), ("r", r as i64), ("s", s as i64), ("t", t as i64)],
                        factors: vec![
                            BinomFactor::new(2 * n + 1, n + 1, r),
                            BinomFactor::new(2 * n + 1, n, s),
                            BinomFactor::new(2 * n, n, t),
                        ],
                        k_range: (-n, n),
                        divisors: vec![divisor],
                    });
                }
            }
        }
        Suite::Cor246 | Suite::Cor248 | Suite::Conj51 | Suite::Conj52 => {
            let big = if matches!(suite, Suite::Cor246 | Suite::Conj51) { 3 } else { 4 };
            for n in ns.clone() {
                for (r, s, t) in triples(1, 1, 1, e) {
                    if suite == Suite::Conj52 && (r, s, t) == (1, 1, 1) {
                        continue;
                    }
                    let divisors = match suite {
                        Suite::Cor246 => vec![binomial(6 * n, n), binomial(6 * n, 3 * n)],
                        Suite::Cor248 => vec![binomial(8 * n, 3 * n)],
                        Suite::Conj51 => vec![binomial(6 * n, n) * 2, binomial(6 * n, 3 * n) * 6],
                        _ => vec![binomial(8 * n, 3 * n) * 2],
                    };
                    out.push(SuiteInstance {
                        params: vec![("n", n), ("r", r as i64), ("s", s as i64), ("t", t as i64)],
                        factors: vec![
                            BinomFactor::new(2 * big * n, big * n, r),
                            BinomFactor::new(4 * n, 2 * n, s),
                            BinomFactor::new(2 * n, n, t),
                        ],
                        k_range: (-n, n),
                        divisors,
                    });
                }
            }
        }
    }
    out
}

pub fn check_instance(suite: Suite, inst: &SuiteInstance) -> CheckResult {
    let sum = alt_binom_sum(&inst.factors, inst.k_range.0, inst.k_range.1);
    let mut result = CheckResult::verified(suite.id());
    for d in &inst.divisors {
        if let Err(c) = divide(suite.id(), &sum, d) {
            result = c;
            break;
        }
    }
    inst.params.iter().fold(result, |r, (name, v)| r.with(name, *v))
}

/// Every grid point of `suite`; failures are collected, never thrown.
pub fn check_divisibility_suite(suite: Suite, bounds: SuiteBounds) -> Vec<CheckResult> {
    suite_instances(suite, bounds).iter().map(|i| check_instance(suite, i)).collect()
}

/// Integer `t_{n,j}^{(r)}(1)`; each kernel `(2k+1) C(2n, n-k) / (n+k+1)` is exact.
pub fn t_int(n: i64, j: i64, r: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for k in j..=n {
        let kernel = binomial(2 * n, n - k) * (2 * k + 1) / (n + k + 1);
        let term = kernel * Pow::pow(&binomial(k + j, k - j), r);
        if (n - k) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `C(2j, j) t_{n,j}^{(r)}(1) / C(2n, n)`, `None` when not integral.
pub fn zud_int(n: i64, j: i64, r: u32) -> Option<BigInt> {
    let (q, rem) = (binomial(2 * j, j) * t_int(n, j, r)).div_mod_floor(&binomial(2 * n, n));
    rem.is_zero().then_some(q)
}

/// Integer Schmidt coefficients `c_0, ..., c_n` by the triangular solve.
pub fn schmidt_c_int(n: i64, r: u32) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::new();
    for np in 0..=n {
        let w = |k: i64| binomial(np, k) * binomial(np + k, k);
        let mut rest: BigInt = (0..=np).map(|k| Pow::pow(&w(k), r)).sum();
        for (k, ck) in c.iter().enumerate() {
            rest -= w(k as i64) * ck;
        }
        c.push(rest / w(np));
    }
    c
}

/// `sum_j C(n, j)^3`.
pub fn franel3(n: i64) -> BigInt {
    (0..=n).map(|j| Pow::pow(&binomial(n, j), 3u32)).sum()
}

/// `(n1+n2+n3)! / (n1! n2! n3!)`.
pub fn multinomial3(n1: i64, n2: i64, n3: i64) -> BigInt {
    factorial(n1 + n2 + n3) / (factorial(n1) * factorial(n2) * factorial(n3))
}

/// Integer sum side of the Pfaff-Saalschutz identity.
pub fn pfaff_int(n1: i64, n2: i64, n3: i64, k: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 0..=(n1 - k) {
        let lower = [r, r + 2 * k, n1 - k - r, n2 - k - r, n3 - k - r];
        if lower.iter().any(|&i| i < 0) {
            continue;
        }
        let den: BigInt = lower.iter().map(|&i| factorial(i)).product();
        acc += factorial(n1 + n2 + n3 - k - r) / den;
    }
    acc
}

/// Integer `t^{(2)}` closed form `(2n)! j!^2 / (n! (2j)! (2j-n)! (n-j)!^2)`.
pub fn t2_closed_int(n: i64, j: i64) -> BigInt {
    if 2 * j < n {
        return BigInt::zero();
    }
    factorial(2 * n) * Pow::pow(&factorial(j), 2u32)
        / (factorial(n) * factorial(2 * j) * factorial(2 * j - n) * Pow::pow(&factorial(n - j), 2u32))
}

/// Integer `t^{(3)}` closed form `(2n)! / ((3j-n)! (n-j)!^3)`.
pub fn t3_closed_int(n: i64, j: i64) -> BigInt {
    if 3 * j < n {
        return BigInt::zero();
    }
    factorial(2 * n) / (factorial(3 * j - n) * Pow::pow(&factorial(n - j), 3u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(6, 3), big(20));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(3, 5), big(0));
    }

    #[test]
    fn alt_sum_examples() {
        assert_eq!(alt_sum_int(&IntSumSpec::central(&[1, 1])), big(2));
        let squared = IntSumSpec::new(vec![1], vec![2], IntForm::Central).unwrap();
        assert_eq!(alt_sum_int(&squared), big(2));
        // k = -1: 1, k = 0: 8, k = 1: 1
        assert_eq!(alt_sum_int(&IntSumSpec::cyclic(&[1, 1, 1])), big(6));
        assert!(IntSumSpec::new(vec![1, 2], vec![1], IntForm::Central).is_err());
    }

    #[test]
    fn calkin_examples() {
        assert_eq!(calkin_sum(1, 4).unwrap(), big(7));
        assert_eq!(calkin_m4(1), big(7));
        assert_eq!(calkin_sum(1, 5).unwrap(), calkin_m5(1));
        assert!(check_calkin(6).is_verified());
    }

    #[test]
    fn rebino_examples() {
        assert!(check_rebino(&[1, 1]).is_verified());
        assert!(check_rebino(&[2, 3, 1]).is_verified());
        assert!(check_cor_mn(2, 3, 2, 1).is_verified());
        // n_1 = .. = n_r = m, then n: the rebino prefactor reduces to the (m, n) divisor
        let sum = alt_binom_sum(&[BinomFactor::central(2, 1), BinomFactor::central(3, 1)], -2, 2);
        assert!((sum % mn_divisor(2, 3)).is_zero());
    }

    #[test]
    fn suite_examples() {
        let b = SuiteBounds { n_max: 1, exp_sum_max: 3 };
        let cor46 = check_instance(Suite::Cor46, &suite_instances(Suite::Cor46, b)[0]);
        assert!(cor46.is_verified());
        let conj51 = suite_instances(Suite::Conj51, b);
        assert_eq!(conj51.len(), 1);
        assert_eq!(conj51[0].divisors, vec![big(12), big(120)]);
        assert!(check_instance(Suite::Conj51, &conj51[0]).is_verified());
        let cor248 = suite_instances(Suite::Cor248, b);
        assert_eq!(cor248[0].divisors, vec![big(56)]);
        assert!(check_instance(Suite::Cor248, &cor248[0]).is_verified());
        assert!(suite_instances(Suite::Conj52, b).is_empty());
    }

    #[test]
    fn schmidt_integers() {
        assert_eq!(schmidt_c_int(2, 2)[2], big(10));
        assert_eq!(franel3(2), big(10));
        assert!(schmidt_c_int(5, 1).iter().all(|c| c.is_one()));
        assert_eq!(zud_int(1, 1, 2), Some(big(1)));
    }

    #[test]
    fn dixon_and_pfaff() {
        assert_eq!(multinomial3(1, 1, 1), big(6));
        assert_eq!(pfaff_int(1, 1, 1, 0), big(8));
        assert_eq!(pfaff_int(1, 1, 1, 1), big(1));
    }
}
