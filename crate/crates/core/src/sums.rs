//! Alternating sums of cyclic products of Gaussian binomials.
//!
//! For `n = (n_1, ..., n_m)` with `n_{m+1} = n_1` the raw sum is
//!
//! ```text
//! A(n; j) = sum_{k=-n_1}^{n_1} (-1)^k q^(j k^2 + k(k-1)/2) prod_i [n_i + n_{i+1}, n_i + k]
//! ```
//!
//! and the normalised sum is `S(n; j) = A(n; j) / [n_1 + n_m, n_1]`, which is
//! in N[q] for `0 <= j <= m-1`. Everything here is computed exactly; checks
//! return a [`CheckResult`] carrying a witness on failure.

use thiserror::Error;

use crate::check::{poly_eq, CheckResult, Witness};
use crate::exact::{LaurentPoly, NotDivisible};
use crate::qcore::{inv_qfac_is_zero, qbinom, qbinom_ref, qfac};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("need at least one n_i")]
    Empty,
    #[error("n_{index} = {value} must be positive")]
    NonPositive { index: usize, value: i64 },
    #[error("{0}")]
    Unsupported(String),
}

/// Parameters `(n_1, ..., n_m; j)` of the alternating sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumSpec {
    n: Vec<i64>,
    j: i64,
}

impl SumSpec {
    pub fn new(n: Vec<i64>, j: i64) -> Result<Self, SpecError> {
        if n.is_empty() {
            return Err(SpecError::Empty);
        }
        if let Some((i, &v)) = n.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(SpecError::NonPositive { index: i + 1, value: v });
        }
        Ok(Self { n, j })
    }

    /// Recursion-internal variant that lets `n_1 = 0`.
    fn relaxed(n: Vec<i64>, j: i64) -> Self {
        debug_assert!(!n.is_empty() && n[0] >= 0 && n[1..].iter().all(|&v| v >= 1));
        Self { n, j }
    }

    pub fn n(&self) -> &[i64] {
        &self.n
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn m(&self) -> usize {
        self.n.len()
    }

    /// `n_{i+1}` with the cyclic convention, 0-based.
    fn next(&self, i: usize) -> i64 {
        self.n[(i + 1) % self.n.len()]
    }
}

/// `k(k-1)/2`, also for negative `k`.
pub fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// The `k`-indexed cyclic products of one `n`, shared across every `j`.
pub struct CyclicProducts {
    n: Vec<i64>,
    products: Vec<(i64, LaurentPoly)>,
}

impl CyclicProducts {
    pub fn new(n: &[i64]) -> Self {
        let spec = SumSpec::relaxed(n.to_vec(), 0);
        let n1 = spec.n[0];
        let products = (-n1..=n1)
            .filter_map(|k| {
                let mut acc = LaurentPoly::one();
                for i in 0..spec.m() {
                    let ni = spec.n[i];
                    let b = qbinom_ref(ni + spec.next(i), ni + k);
                    if b.is_zero() {
                        return None;
                    }
                    acc = &acc * &b;
                }
                Some((k, acc))
            })
            .collect();
        Self { n: n.to_vec(), products }
    }

    pub fn alt_sum(&self, j: i64) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (k, prod) in &self.products {
            let term = prod.clone().shift(j * k * k + choose2(*k));
            if k % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    pub fn normalizer(&self) -> LaurentPoly {
        let (n1, nm) = (self.n[0], self.n[self.n.len() - 1]);
        qbinom(n1 + nm, n1)
    }

    pub fn normalized(&self, j: i64) -> Result<LaurentPoly, NotDivisible> {
        self.alt_sum(j).div_exact(&self.normalizer())
    }
}

/// The raw alternating sum `A(n; j)`.
pub fn alt_sum(spec: &SumSpec) -> LaurentPoly {
    CyclicProducts::new(&spec.n).alt_sum(spec.j)
}

/// `S(n; j) = A(n; j) / [n_1 + n_m, n_1]`, failing when the division is not exact.
pub fn normalized_sum(spec: &SumSpec) -> Result<LaurentPoly, NotDivisible> {
    CyclicProducts::new(&spec.n).normalized(spec.j)
}

/// Weakly decreasing `(lambda_1, ..., lambda_{m-2})` with `lambda_0 = n_1`
/// that give a nonzero summand on the multisum side of the identity for `A(n; m-1)`.
pub fn lambda_sequences(n: &[i64]) -> Vec<Vec<i64>> {
    fn rec(n: &[i64], depth: usize, prev: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = n.len();
        if depth == m - 2 {
            out.push(cur.clone());
            return;
        }
        // lambda_i <= n_{i+1} or [n_{i+1} + n_{i+2}, n_{i+1} - lambda_i] vanishes
        for lam in 0..=prev.min(n[depth + 1]) {
            cur.push(lam);
            rec(n, depth + 1, lam, cur, out);
            cur.pop();
        }
    }
    assert!(n.len() >= 3);
    let mut out = Vec::new();
    rec(n, 0, n[0], &mut Vec::new(), &mut out);
    out
}

/// Multisum side of the identity for `A(n; m-1)`, `m >= 3`:
/// `[n_1+n_m, n_1] * sum_lambda prod_{i=1}^{m-2} q^(lambda_i^2) [lambda_{i-1}, lambda_i] [n_{i+1}+n_{i+2}, n_{i+1}-lambda_i]`.
pub fn thm1_rhs(n: &[i64]) -> LaurentPoly {
    fn rec(n: &[i64], depth: usize, prev: i64, partial: &LaurentPoly, acc: &mut LaurentPoly) {
        let m = n.len();
        if depth == m - 2 {
            *acc += partial;
            return;
        }
        let (a, b) = (n[depth + 1], n[depth + 2]);
        for lam in 0..=prev.min(a) {
            let factor = &*qbinom_ref(prev, lam) * &*qbinom_ref(a + b, a - lam);
            let next = (partial * &factor).shift(lam * lam);
            rec(n, depth + 1, lam, &next, acc);
        }
    }
    assert!(n.len() >= 3, "multisum side needs m >= 3");
    let mut acc = LaurentPoly::zero();
    rec(n, 0, n[0], &LaurentPoly::one(), &mut acc);
    let m = n.len();
    &qbinom(n[0] + n[m - 1], n[0]) * &acc
}

/// Multisum identity: `A(n; m-1) = thm1_rhs(n)`.
pub fn check_thm1(n: &[i64]) -> CheckResult {
    let lhs = CyclicProducts::new(n).alt_sum(n.len() as i64 - 1);
    poly_eq("thm1", &lhs, &thm1_rhs(n)).with("n", n)
}

/// Positivity: `S(n; j)` is a polynomial with nonnegative integer coefficients.
pub fn check_positivity(spec: &SumSpec) -> CheckResult {
    positivity_from(&CyclicProducts::new(&spec.n), spec.j)
}

/// Positivity for every `j` in `js`, sharing the cyclic products.
pub fn check_positivity_range(n: &[i64], js: impl IntoIterator<Item = i64>) -> Vec<CheckResult> {
    let products = CyclicProducts::new(n);
    js.into_iter().map(|j| positivity_from(&products, j)).collect()
}

fn positivity_from(products: &CyclicProducts, j: i64) -> CheckResult {
    let result = match products.normalized(j) {
        Err(e) => CheckResult::counterexample("thm2", Witness::NotDivisible { remainder: e.remainder }),
        Ok(s) if s.min_exp() < 0 => CheckResult::counterexample(
            "thm2",
            Witness::Note { message: format!("negative exponent in {s}") },
        ),
        Ok(s) if !s.is_nonneg() => {
            CheckResult::counterexample("thm2", Witness::NegativeCoefficient { poly: s })
        }
        Ok(_) => CheckResult::verified("thm2"),
    };
    result.with("n", products.n.clone()).with("j", j)
}

/// `A / D` kept unreduced; only used to compare sums of fractions.
struct Fraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Fraction {
    fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self { num, den }
    }

    fn add(&mut self, num: &LaurentPoly, den: &LaurentPoly) {
        if self.den == *den {
            self.num += num;
        } else {
            self.num = &(&self.num * den) + &(num * &self.den);
            self.den = &self.den * den;
        }
    }

    fn same_as(&self, other: &Fraction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Exact quotient when it exists, otherwise the fraction as-is.
    fn reduce(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den).ok()
    }
}

/// Recurrence lowering `m` by one:
/// `S(n_1..n_m; j) = sum_{l=0}^{n_1} q^(l^2) [n_1, l] [n_2+n_3, n_2-l] S(l, n_3..n_m; j-1)`.
///
/// Both sides are compared as fractions over their Gaussian-binomial
/// normalisers, so the check also covers `j` where `S` itself is not a polynomial.
pub fn check_lemma_rec(spec: &SumSpec) -> CheckResult {
    let n = &spec.n;
    let m = n.len();
    assert!(m >= 3, "recurrence needs m >= 3");
    let lhs_products = CyclicProducts::new(n);
    let lhs = Fraction::new(lhs_products.alt_sum(spec.j), lhs_products.normalizer());

    let mut rhs: Option<Fraction> = None;
    for l in 0..=n[0] {
        let weight = (&qbinom(n[0], l) * &qbinom(n[1] + n[2], n[1] - l)).shift(l * l);
        if weight.is_zero() {
            continue;
        }
        let mut sub = vec![l];
        sub.extend_from_slice(&n[2..]);
        let sub = CyclicProducts::new(&SumSpec::relaxed(sub, spec.j - 1).n);
        let num = &weight * &sub.alt_sum(spec.j - 1);
        let den = sub.normalizer();
        match rhs.as_mut() {
            None => rhs = Some(Fraction::new(num, den)),
            Some(acc) => acc.add(&num, &den),
        }
    }
    let rhs = rhs.unwrap_or(Fraction::new(LaurentPoly::zero(), LaurentPoly::one()));
    let ok = lhs.same_as(&rhs);
    CheckResult::from_bool("lemma21", ok, || Witness::Mismatch {
        lhs: lhs.reduce().unwrap_or(lhs.num.clone()),
        rhs: rhs.reduce().unwrap_or(rhs.num.clone()),
    })
    .with("n", n.clone())
    .with("j", spec.j)
}

/// `n_1 n_2 + n_2 n_3 + ... + n_{m-1} n_m`.
pub fn chain_weight(n: &[i64]) -> i64 {
    n.windows(2).map(|w| w[0] * w[1]).sum()
}

/// Duality `S(n; 0) = q^N S(n; m-1)|_{q -> 1/q}` with `N = chain_weight(n)`.
pub fn check_duality(n: &[i64]) -> CheckResult {
    let products = CyclicProducts::new(n);
    let m = n.len() as i64;
    let out = |r: CheckResult| r.with("n", n);
    let low = match products.normalized(0) {
        Ok(p) => p,
        Err(e) => return out(CheckResult::counterexample("duality", Witness::NotDivisible { remainder: e.remainder })),
    };
    let high = match products.normalized(m - 1) {
        Ok(p) => p,
        Err(e) => return out(CheckResult::counterexample("duality", Witness::NotDivisible { remainder: e.remainder })),
    };
    out(poly_eq("duality", &low, &high.reciprocal(chain_weight(n))))
}

/// Degree bound `deg S(n; m-1) <= chain_weight(n)`.
pub fn check_degree_bound(n: &[i64]) -> CheckResult {
    let products = CyclicProducts::new(n);
    let bound = chain_weight(n);
    let result = match products.normalized(n.len() as i64 - 1) {
        Err(e) => CheckResult::counterexample("degree-bound", Witness::NotDivisible { remainder: e.remainder }),
        Ok(s) => CheckResult::from_bool("degree-bound", s.max_exp().unwrap_or(0) <= bound, || {
            Witness::Note { message: format!("degree {:?} exceeds {bound}", s.max_exp()) }
        }),
    };
    result.with("n", n)
}

/// `(q)_{n1+n2+n3} / ((q)_{n1} (q)_{n2} (q)_{n3})`.
pub fn q_multinomial3(n1: i64, n2: i64, n3: i64) -> LaurentPoly {
    let den = &(&qfac(n1).unwrap() * &qfac(n2).unwrap()) * &qfac(n3).unwrap();
    qfac(n1 + n2 + n3)
        .unwrap()
        .div_exact(&den)
        .expect("q-multinomial coefficients are polynomials")
}

/// The q-Dixon sum with weight `q^((3k^2 - k)/2)`.
pub fn qdixon_sum(n1: i64, n2: i64, n3: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for k in -n1..=n1 {
        let prod = &(&qbinom(n1 + n2, n1 + k) * &qbinom(n2 + n3, n2 + k)) * &qbinom(n3 + n1, n3 + k);
        let term = prod.shift((3 * k * k - k) / 2);
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

pub fn check_qdixon(n1: i64, n2: i64, n3: i64) -> CheckResult {
    poly_eq("qdixon", &qdixon_sum(n1, n2, n3), &q_multinomial3(n1, n2, n3)).with("n", vec![n1, n2, n3])
}

/// Sum side of q-Pfaff-Saalschutz:
/// `sum_{r=0}^{n1-k} q^(r^2 + 2kr) (q)_{n1+n2+n3-k-r} / ((q)_r (q)_{r+2k} (q)_{n1-k-r} (q)_{n2-k-r} (q)_{n3-k-r})`.
pub fn qpfaff_sum(n1: i64, n2: i64, n3: i64, k: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for r in 0..=(n1 - k) {
        let lower = [r, r + 2 * k, n1 - k - r, n2 - k - r, n3 - k - r];
        if lower.iter().any(|&i| inv_qfac_is_zero(i)) {
            continue;
        }
        let den: LaurentPoly = lower.iter().map(|&i| qfac(i).unwrap()).product();
        let term = qfac(n1 + n2 + n3 - k - r)
            .unwrap()
            .div_exact(&den)
            .expect("each summand is a q-multinomial coefficient");
        acc += &term.shift(r * r + 2 * k * r);
    }
    acc
}

pub fn qpfaff_product(n1: i64, n2: i64, n3: i64, k: i64) -> LaurentPoly {
    &(&qbinom(n1 + n2, n1 + k) * &qbinom(n2 + n3, n2 + k)) * &qbinom(n3 + n1, n3 + k)
}

pub fn check_qpfaff(n1: i64, n2: i64, n3: i64, k: i64) -> CheckResult {
    poly_eq("qpfaff", &qpfaff_product(n1, n2, n3, k), &qpfaff_sum(n1, n2, n3, k))
        .with("n", vec![n1, n2, n3])
        .with("k", k)
}

/// Closed forms of `S(n1, n2, n3; j)` for `j = 0, 1, 2`.
pub fn m3_closed(n1: i64, n2: i64, n3: i64, j: i64) -> LaurentPoly {
    match j {
        1 => qbinom(n1 + n2 + n3, n2),
        2 => (0..=n1)
            .map(|l| (&qbinom(n1, l) * &qbinom(n2 + n3, n2 - l)).shift(l * l))
            .sum(),
        0 => (0..=n1)
            .map(|l| (&qbinom(n1, l) * &qbinom(n2 + n3, n2 - l)).shift((n1 - l) * (n2 - l) + n3 * l))
            .sum(),
        _ => panic!("closed forms exist for j in 0..=2, got {j}"),
    }
}

pub fn check_m3(n1: i64, n2: i64, n3: i64, j: i64) -> CheckResult {
    let closed = m3_closed(n1, n2, n3, j);
    let result = match normalized_sum(&SumSpec::relaxed(vec![n1, n2, n3], j)) {
        Ok(s) => poly_eq("m3", &s, &closed),
        Err(e) => CheckResult::counterexample("m3", Witness::NotDivisible { remainder: e.remainder }),
    };
    result.with("n", vec![n1, n2, n3]).with("j", j)
}

/// The central-binomial form with `n_{m+1} = 0`:
/// `(q)_{n_1} prod_i (q)_{n_i+n_{i+1}} / (q)_{2n_i} * sum_k (-1)^k q^(j k^2 + C(k,2)) prod_i [2n_i, n_i+k]`.
pub fn restated_sum(n: &[i64], j: i64) -> Result<LaurentPoly, NotDivisible> {
    let m = n.len();
    let n1 = n[0];
    let mut sum = LaurentPoly::zero();
    for k in -n1..=n1 {
        let prod: LaurentPoly = n.iter().map(|&ni| qbinom(2 * ni, ni + k)).product();
        if prod.is_zero() {
            continue;
        }
        let term = prod.shift(j * k * k + choose2(k));
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    let mut num = &qfac(n1).unwrap() * &sum;
    let mut den = LaurentPoly::one();
    for i in 0..m {
        let next = if i + 1 < m { n[i + 1] } else { 0 };
        num = &num * &qfac(n[i] + next).unwrap();
        den = &den * &qfac(2 * n[i]).unwrap();
    }
    num.div_exact(&den)
}

/// The `n_{m+1} = 0` form agrees with `S(n; j)` and lies in N[q].
pub fn check_restated(n: &[i64], j: i64) -> CheckResult {
    let result = match (restated_sum(n, j), normalized_sum(&SumSpec::relaxed(n.to_vec(), j))) {
        (Ok(r), Ok(s)) if r != s => CheckResult::counterexample("restated", Witness::Mismatch { lhs: r, rhs: s }),
        (Ok(r), Ok(_)) => CheckResult::from_bool("restated", r.is_nonneg() && r.min_exp() >= 0, || {
            Witness::NegativeCoefficient { poly: r.clone() }
        }),
        (Err(e), _) | (_, Err(e)) => {
            CheckResult::counterexample("restated", Witness::NotDivisible { remainder: e.remainder })
        }
    };
    result.with("n", n).with("j", j)
}

/// Number of terms in the cyclic sum that survive the zero convention.
pub fn live_terms(n: &[i64]) -> usize {
    CyclicProducts::new(n).products.iter().filter(|(_, p)| !p.is_zero()).count()
}
