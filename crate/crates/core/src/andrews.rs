//! Andrews' very-well-poised single sum against its (m-1)-fold multisum,
//! with every parameter specialised to an integer power of q.
//!
//! Each summand is a signed monomial times a ratio of `(1 - q^s)` factors.
//! Writing `q^s - 1` as a product of cyclotomic polynomials gives the exact
//! least common denominator of both sides, hence an exact degree bound for
//! the cleared difference. Agreement at more points than that bound is a
//! complete certificate.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::check::{CheckResult, Witness};
use crate::exact::{rational_pow, LaurentPoly, Rational};
use crate::qcore::qbinom;
use crate::sums::{choose2, thm1_rhs, CyclicProducts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AndrewsError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("{side:?} has a vanishing denominator factor")]
    Pole { side: Side },
    #[error("denominator vanishes at q = {point}")]
    PoleHit { point: Rational },
}

/// `a = q^e_a`, `b_i = q^e_b[i]`, `c_i = q^e_c[i]`, terminating at `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AndrewsParams {
    pub m: usize,
    pub big_n: i64,
    pub e_a: i64,
    pub e_b: Vec<i64>,
    pub e_c: Vec<i64>,
    pub a_to_one: bool,
    pub c_to_infinity: bool,
}

impl AndrewsParams {
    pub fn new(big_n: i64, e_a: i64, e_b: Vec<i64>, e_c: Vec<i64>) -> Result<Self, AndrewsError> {
        let p = Self {
            m: e_b.len(),
            big_n,
            e_a,
            e_b,
            e_c,
            a_to_one: false,
            c_to_infinity: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// `a -> 1` and every `c_i -> infinity`.
    pub fn limit(big_n: i64, e_b: Vec<i64>) -> Result<Self, AndrewsError> {
        let p = Self {
            m: e_b.len(),
            big_n,
            e_a: 0,
            e_b,
            e_c: Vec::new(),
            a_to_one: true,
            c_to_infinity: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), AndrewsError> {
        let bad = |s: &str| Err(AndrewsError::Invalid(s.to_string()));
        if self.m == 0 || self.e_b.len() != self.m {
            return bad("need m >= 1 exponents for b");
        }
        if self.big_n < 0 {
            return bad("N must be nonnegative");
        }
        if self.c_to_infinity != self.e_c.is_empty() {
            return bad("give e_c exactly when c is finite");
        }
        if !self.c_to_infinity && self.e_c.len() != self.m {
            return bad("need m exponents for c");
        }
        if self.a_to_one && self.e_a != 0 {
            return bad("a -> 1 requires e_a = 0");
        }
        Ok(())
    }

    fn ea(&self) -> i64 {
        if self.a_to_one {
            0
        } else {
            self.e_a
        }
    }
}

/// `+-q^shift * prod (1 - q^num) / prod (1 - q^den)` with all exponents positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTerm {
    pub neg: bool,
    pub shift: i64,
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

impl QTerm {
    pub fn eval(&self, q: &Rational) -> Result<Rational, AndrewsError> {
        let one = Rational::one();
        let mut num = rational_pow(q, self.shift);
        for &s in &self.num {
            num *= &one - rational_pow(q, s);
        }
        let mut den = one.clone();
        for &s in &self.den {
            den *= &one - rational_pow(q, s);
        }
        if den.is_zero() {
            return Err(AndrewsError::PoleHit { point: q.clone() });
        }
        let v = num / den;
        Ok(if self.neg { -v } else { v })
    }
}

#[derive(Default)]
struct TermBuilder {
    neg: bool,
    shift: i64,
    num: Vec<i64>,
    den: Vec<i64>,
    zero: bool,
    pole: bool,
}

impl TermBuilder {
    fn sign(&mut self, negative: bool) {
        self.neg ^= negative;
    }

    fn mono(&mut self, e: i64) {
        self.shift += e;
    }

    fn num(&mut self, s: i64) {
        match s {
            0 => self.zero = true,
            s if s < 0 => {
                self.neg ^= true;
                self.shift += s;
                self.num.push(-s);
            }
            s => self.num.push(s),
        }
    }

    fn den(&mut self, s: i64) {
        match s {
            0 => self.pole = true,
            s if s < 0 => {
                self.neg ^= true;
                self.shift -= s;
                self.den.push(-s);
            }
            s => self.den.push(s),
        }
    }

    /// `(q^e)_k` in the numerator.
    fn poch(&mut self, e: i64, k: i64) {
        for i in 0..k {
            self.num(e + i);
        }
    }

    fn poch_den(&mut self, e: i64, k: i64) {
        for i in 0..k {
            self.den(e + i);
        }
    }

    fn finish(self, side: Side) -> Result<Option<QTerm>, AndrewsError> {
        if self.pole {
            return Err(AndrewsError::Pole { side });
        }
        if self.zero {
            return Ok(None);
        }
        Ok(Some(QTerm { neg: self.neg, shift: self.shift, num: self.num, den: self.den }))
    }
}

/// Tuples `(l_1, ..., l_len)` of nonnegative integers with sum at most `bound`.
pub fn bounded_compositions(len: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for l in 0..=left {
            cur.push(l);
            rec(len, left - l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, bound, &mut Vec::new(), &mut out);
    out
}

fn lhs_terms(p: &AndrewsParams) -> Result<Vec<QTerm>, AndrewsError> {
    let (m, big_n, ea) = (p.m as i64, p.big_n, p.ea());
    let sum_b: i64 = p.e_b.iter().sum();
    let sum_c: i64 = p.e_c.iter().sum();
    let mut out = Vec::new();
    for k in 0..=big_n {
        let mut t = TermBuilder::default();
        if p.a_to_one {
            if k > 0 {
                t.poch(1, k - 1);
                t.num(2 * k);
            }
        } else {
            t.poch(ea, k);
            if k > 0 {
                t.num(ea + 2 * k);
                t.den(ea);
            }
        }
        for i in 0..p.m {
            t.poch(p.e_b[i], k);
            t.poch_den(ea + 1 - p.e_b[i], k);
            if !p.c_to_infinity {
                t.poch(p.e_c[i], k);
                t.poch_den(ea + 1 - p.e_c[i], k);
            }
        }
        t.poch(-big_n, k);
        t.poch_den(1, k);
        t.poch_den(ea + big_n + 1, k);
        t.mono(k * (m * ea + m + big_n - sum_b - sum_c));
        if p.c_to_infinity {
            t.sign(m * k % 2 == 1);
            t.mono(m * choose2(k));
        }
        out.extend(t.finish(Side::Lhs)?);
    }
    Ok(out)
}

fn rhs_terms(p: &AndrewsParams) -> Result<Vec<QTerm>, AndrewsError> {
    let (m, big_n, ea) = (p.m, p.big_n, p.ea());
    let finite = !p.c_to_infinity;
    let (b, c) = (&p.e_b, &p.e_c);
    let mut out = Vec::new();
    for l in bounded_compositions(m - 1, big_n) {
        let mut t = TermBuilder::default();
        t.poch(ea + 1, big_n);
        t.poch_den(ea + 1 - b[m - 1], big_n);
        if finite {
            t.poch(ea + 1 - b[m - 1] - c[m - 1], big_n);
            t.poch_den(ea + 1 - c[m - 1], big_n);
        }
        let mut lambda = 0;
        let mut aq_power = 0;
        for i in 0..m - 1 {
            let prev = lambda;
            lambda += l[i];
            t.poch_den(1, l[i]);
            t.poch(b[i + 1], lambda);
            t.poch_den(ea + 1 - b[i], lambda);
            if finite {
                t.poch(ea + 1 - b[i] - c[i], l[i]);
                t.poch(c[i + 1], lambda);
                t.poch_den(ea + 1 - c[i], lambda);
            }
            // 0-based i carries (aq)^(m-2-i) and, from i >= 1, 1/(b_i c_i)^(lambda_{i-1})
            aq_power += (m as i64 - 2 - i as i64) * l[i];
            if i >= 1 {
                t.mono(-b[i] * prev);
                if finite {
                    t.mono(-c[i] * prev);
                }
            }
            if !finite && i + 2 < m {
                t.sign(lambda % 2 == 1);
                t.mono(choose2(lambda));
            }
        }
        let total = lambda;
        t.poch(-big_n, total);
        if finite {
            t.poch_den(b[m - 1] + c[m - 1] - big_n - ea, total);
        } else {
            t.mono(total * (ea + big_n - b[m - 1]));
        }
        t.mono((ea + 1) * aq_power + total);
        out.extend(t.finish(Side::Rhs)?);
    }
    Ok(out)
}

/// Nonzero summands of one side.
pub fn side_terms(side: Side, p: &AndrewsParams) -> Result<Vec<QTerm>, AndrewsError> {
    p.validate()?;
    match side {
        Side::Lhs => lhs_terms(p),
        Side::Rhs => rhs_terms(p),
    }
}

/// Exact value of one side at `q_val`.
pub fn andrews_side(side: Side, p: &AndrewsParams, q_val: &Rational) -> Result<Rational, AndrewsError> {
    let mut acc = Rational::zero();
    for t in side_terms(side, p)? {
        acc += t.eval(q_val)?;
    }
    Ok(acc)
}

fn cyclotomic_cache() -> &'static Mutex<Vec<Arc<LaurentPoly>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<LaurentPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Arc::new(LaurentPoly::zero())]))
}

/// The `d`-th cyclotomic polynomial, `d >= 1`.
pub fn cyclotomic(d: usize) -> Arc<LaurentPoly> {
    assert!(d >= 1);
    let mut cache = cyclotomic_cache().lock().unwrap();
    while cache.len() <= d {
        let n = cache.len();
        let mut poly = LaurentPoly::one().shift(n as i64) - LaurentPoly::one();
        for e in (1..n).filter(|e| n % e == 0) {
            poly = poly.div_exact(&cache[e]).expect("cyclotomic factors divide q^n - 1");
        }
        cache.push(Arc::new(poly));
    }
    cache[d].clone()
}

fn totient(d: usize) -> i64 {
    cyclotomic(d).max_exp().unwrap_or(0)
}

/// One summand over the common denominator: `+-q^mono prod_d Phi_d^f[d]`.
#[derive(Debug, Clone)]
struct ClearedTerm {
    neg: bool,
    mono: i64,
    f: Vec<u32>,
}

/// Both sides written over one denominator `q^(-amin) prod_d Phi_d^den[d]`.
pub struct Cleared {
    den: Vec<u32>,
    amin: i64,
    degree: i64,
    sides: [Vec<ClearedTerm>; 2],
}

fn cyclotomic_exponents(factors: &[i64], width: usize) -> Vec<u32> {
    let mut e = vec![0u32; width];
    for &s in factors {
        let s = s as usize;
        for d in (1..=s).filter(|d| s % d == 0) {
            e[d] += 1;
        }
    }
    e
}

impl Cleared {
    pub fn new(lhs: &[QTerm], rhs: &[QTerm]) -> Self {
        let width = lhs
            .iter()
            .chain(rhs)
            .flat_map(|t| t.num.iter().chain(&t.den))
            .copied()
            .max()
            .unwrap_or(0) as usize
            + 1;
        let split = |t: &QTerm| {
            // 1 - q^s = -prod_{d | s} Phi_d
            let flips = (t.num.len() + t.den.len()) % 2 == 1;
            (
                t.neg ^ flips,
                t.shift,
                cyclotomic_exponents(&t.num, width),
                cyclotomic_exponents(&t.den, width),
            )
        };
        let raw: [Vec<_>; 2] = [lhs.iter().map(split).collect(), rhs.iter().map(split).collect()];
        let mut den = vec![0u32; width];
        let mut amin = i64::MAX;
        for (_, shift, _, d) in raw.iter().flatten() {
            amin = amin.min(*shift);
            for (acc, &x) in den.iter_mut().zip(d) {
                *acc = (*acc).max(x);
            }
        }
        if amin == i64::MAX {
            amin = 0;
        }
        let phi: Vec<i64> = (0..width).map(|d| if d == 0 { 0 } else { totient(d) }).collect();
        let mut degree = 0;
        let sides = raw.map(|terms| {
            terms
                .into_iter()
                .map(|(neg, shift, num, d)| {
                    let f: Vec<u32> = (0..width).map(|i| num[i] + den[i] - d[i]).collect();
                    let mono = shift - amin;
                    let deg = mono + f.iter().zip(&phi).map(|(&e, &p)| e as i64 * p).sum::<i64>();
                    degree = degree.max(deg);
                    ClearedTerm { neg, mono, f }
                })
                .collect()
        });
        Self { den, amin, degree, sides }
    }

    /// Upper bound on the degree of either cleared numerator.
    pub fn degree_bound(&self) -> i64 {
        self.degree
    }

    pub fn denominator(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one().shift(-self.amin);
        for (d, &e) in self.den.iter().enumerate().skip(1) {
            if e > 0 {
                acc = &acc * &cyclotomic(d).pow(e);
            }
        }
        acc
    }

    pub fn numerator(&self, side: Side) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for t in &self.sides[side as usize] {
            let mut poly = LaurentPoly::q_pow(t.mono);
            for (d, &e) in t.f.iter().enumerate().skip(1) {
                if e > 0 {
                    poly = &poly * &cyclotomic(d).pow(e);
                }
            }
            if t.neg {
                acc -= &poly;
            } else {
                acc += &poly;
            }
        }
        acc
    }

    /// `v^D * numerator(u / v)` as an integer, where `D` is the degree bound.
    fn eval_homogeneous(&self, side: Side, point: &PointData) -> BigInt {
        let mut acc = BigInt::zero();
        for t in &self.sides[side as usize] {
            let mut deg = t.mono;
            let mut v = (&point.u).pow(t.mono as u32);
            for (d, &e) in t.f.iter().enumerate().skip(1) {
                if e > 0 {
                    v *= Pow::pow(&point.h(d), e);
                    deg += e as i64 * totient(d);
                }
            }
            v *= (&point.v).pow((self.degree - deg) as u32);
            if t.neg {
                acc -= v;
            } else {
                acc += v;
            }
        }
        acc
    }
}

fn primes() -> &'static Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 200_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < limit {
            if sieve[i] {
                (i * i..limit).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..limit).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Sample point `i` of the sequence starting at `seed`: `p_(seed+i) / p_(seed+i+1)`.
pub fn sample_point(seed: u64, i: usize) -> Rational {
    let ps = primes();
    let k = seed as usize + i;
    Rational::new(BigInt::from(ps[k]), BigInt::from(ps[k + 1]))
}

struct PointData {
    u: BigInt,
    v: BigInt,
    h: Mutex<HashMap<usize, BigInt>>,
}

impl PointData {
    fn new(q: &Rational) -> Self {
        Self { u: q.numer().clone(), v: q.denom().clone(), h: Mutex::new(HashMap::new()) }
    }

    /// `v^phi(d) Phi_d(u / v)`.
    fn h(&self, d: usize) -> BigInt {
        let mut cache = self.h.lock().unwrap();
        cache
            .entry(d)
            .or_insert_with(|| {
                let phi = cyclotomic(d);
                let top = phi.max_exp().unwrap_or(0);
                phi.terms()
                    .map(|(e, c)| c * (&self.u).pow(e as u32) * (&self.v).pow((top - e) as u32))
                    .sum()
            })
            .clone()
    }
}

/// Agreement of both sides at `degree_bound + 1` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalCertificate {
    pub degree_bound: i64,
    pub seed: u64,
    pub q_points: Vec<Rational>,
    /// Both sides at each point, scaled by the same nonzero factor
    /// `v^D * Q(u/v)` (`Q` the common denominator) so the values are integers.
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
}

impl EvalCertificate {
    pub fn holds(&self) -> bool {
        self.q_points.len() as i64 > self.degree_bound && self.lhs == self.rhs
    }

    pub fn first_mismatch(&self) -> Option<usize> {
        self.lhs.iter().zip(&self.rhs).position(|(a, b)| a != b)
    }
}

fn point_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<PointData>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<PointData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn point_data(seed: u64, i: usize) -> Arc<PointData> {
    let mut cache = point_cache().lock().unwrap();
    cache
        .entry((seed, i))
        .or_insert_with(|| Arc::new(PointData::new(&sample_point(seed, i))))
        .clone()
}

/// Builds the evaluation certificate for one parameter set.
pub fn andrews_certificate(p: &AndrewsParams, seed: u64) -> Result<EvalCertificate, AndrewsError> {
    let lhs = side_terms(Side::Lhs, p)?;
    let rhs = side_terms(Side::Rhs, p)?;
    let cleared = Cleared::new(&lhs, &rhs);
    let count = cleared.degree_bound() as usize + 1;
    let mut cert = EvalCertificate {
        degree_bound: cleared.degree_bound(),
        seed,
        q_points: Vec::with_capacity(count),
        lhs: Vec::with_capacity(count),
        rhs: Vec::with_capacity(count),
    };
    for i in 0..count {
        let point = point_data(seed, i);
        let l = cleared.eval_homogeneous(Side::Lhs, &point);
        let r = cleared.eval_homogeneous(Side::Rhs, &point);
        cert.q_points.push(Rational::new(point.u.clone(), point.v.clone()));
        let stop = l != r;
        cert.lhs.push(l);
        cert.rhs.push(r);
        if stop {
            break;
        }
    }
    Ok(cert)
}

fn describe(p: &AndrewsParams, r: CheckResult) -> CheckResult {
    let mut r = r.with("m", p.m as i64).with("N", p.big_n);
    r = if p.a_to_one { r.with("a", "1") } else { r.with("e_a", p.e_a) };
    r = r.with("e_b", p.e_b.clone());
    if p.c_to_infinity {
        r.with("c", "inf")
    } else {
        r.with("e_c", p.e_c.clone())
    }
}

/// Identity check with the default point sequence.
pub fn andrews_check(p: &AndrewsParams) -> CheckResult {
    andrews_check_seeded(p, 0)
}

pub fn andrews_check_seeded(p: &AndrewsParams, seed: u64) -> CheckResult {
    let result = match andrews_certificate(p, seed) {
        Err(AndrewsError::Pole { side }) => {
            CheckResult::skipped("andrews", format!("not pole-free ({side:?} denominator vanishes)"))
        }
        Err(e) => CheckResult::skipped("andrews", e.to_string()),
        Ok(cert) => match cert.first_mismatch() {
            None if cert.holds() => CheckResult::verified("andrews")
                .with("degree_bound", cert.degree_bound)
                .with("points", cert.q_points.len() as i64),
            None => CheckResult::counterexample(
                "andrews",
                Witness::Note { message: "certificate has too few points".into() },
            ),
            Some(i) => {
                let q = cert.q_points[i].clone();
                let lhs = andrews_side(Side::Lhs, p, &q).unwrap_or_default();
                let rhs = andrews_side(Side::Rhs, p, &q).unwrap_or_default();
                CheckResult::counterexample("andrews", Witness::PointMismatch { point: q, lhs, rhs })
            }
        },
    };
    describe(p, result)
}

/// Exact symbolic comparison of the two cleared numerators.
pub fn andrews_check_symbolic(p: &AndrewsParams) -> CheckResult {
    let result = match (side_terms(Side::Lhs, p), side_terms(Side::Rhs, p)) {
        (Ok(l), Ok(r)) => {
            let cleared = Cleared::new(&l, &r);
            let (nl, nr) = (cleared.numerator(Side::Lhs), cleared.numerator(Side::Rhs));
            crate::check::poly_eq("andrews", &nl, &nr)
        }
        (Err(e), _) | (_, Err(e)) => CheckResult::skipped("andrews", e.to_string()),
    };
    describe(p, result)
}

/// Every parameter set with `m <= max_m`, `N <= max_n`, exponents in `lo..=hi`.
/// `e_a = 0` is taken as the limit `a -> 1`.
pub fn andrews_grid(max_m: usize, max_n: i64, lo: i64, hi: i64) -> Vec<AndrewsParams> {
    let mut out = Vec::new();
    let range: Vec<i64> = (lo..=hi).collect();
    for m in 1..=max_m {
        let tuples = cartesian(&range, 2 * m);
        for big_n in 0..=max_n {
            for &e_a in &range {
                for t in &tuples {
                    out.push(AndrewsParams {
                        m,
                        big_n,
                        e_a,
                        e_b: t[..m].to_vec(),
                        e_c: t[m..].to_vec(),
                        a_to_one: e_a == 0,
                        c_to_infinity: false,
                    });
                }
            }
        }
    }
    out
}

fn cartesian(values: &[i64], len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

/// Parameters that turn the single sum into `t_{n,j}^{(r)}`:
/// `m = floor(r/2)`, `a = q^-(2n+1)`, `N = n-j`, every `b_i, c_i = q^-(n-j)`
/// except `b_1 = q^-n` when `r` is even.
pub fn t_specialization(n: i64, j: i64, r: i64) -> AndrewsParams {
    assert!(r >= 2 && 0 <= j && j <= n);
    let m = (r / 2) as usize;
    let mut e_b = vec![-(n - j); m];
    if r % 2 == 0 {
        e_b[0] = -n;
    }
    AndrewsParams {
        m,
        big_n: n - j,
        e_a: -(2 * n + 1),
        e_b,
        e_c: vec![-(n - j); m],
        a_to_one: false,
        c_to_infinity: false,
    }
}

/// The single sum of [`t_specialization`] as a reduced-free fraction `(num, den)`.
pub fn side_fraction(side: Side, p: &AndrewsParams) -> Result<(LaurentPoly, LaurentPoly), AndrewsError> {
    let terms = side_terms(side, p)?;
    let cleared = match side {
        Side::Lhs => Cleared::new(&terms, &[]),
        Side::Rhs => Cleared::new(&[], &terms),
    };
    Ok((cleared.numerator(side), cleared.denominator()))
}

/// `t_{n,j}^{(r)} = [n+j, 2j]^r q^(r C(n-j,2) - (r-1) C(n,2)) * LHS` at [`t_specialization`].
pub fn check_t_specialization(n: i64, j: i64, r: i64, t: &LaurentPoly) -> CheckResult {
    let p = t_specialization(n, j, r);
    let out = |c: CheckResult| c.with("n", n).with("j", j).with("r", r);
    let (num, den) = match side_fraction(Side::Lhs, &p) {
        Ok(f) => f,
        Err(e) => return out(CheckResult::skipped("andrews-t", e.to_string())),
    };
    let e = r * choose2(n - j) - (r - 1) * choose2(n);
    let lhs = (&num * &qbinom(n + j, 2 * j).pow(r as u32)).shift(e);
    let rhs = &den * t;
    let ok = lhs == rhs;
    out(CheckResult::from_bool("andrews-t", ok, || Witness::Mismatch {
        lhs: lhs.div_exact(&den).unwrap_or(lhs.clone()),
        rhs: t.clone(),
    }))
}

fn limit_lhs_terms(n_top: i64, e_b: &[i64]) -> Vec<QTerm> {
    let m = e_b.len() as i64;
    let sum_b: i64 = e_b.iter().sum();
    let mut out = vec![QTerm { neg: false, shift: 0, num: vec![], den: vec![] }];
    for k in 1..=n_top {
        let mut t = TermBuilder::default();
        // 1 + q^k = (1 - q^2k) / (1 - q^k)
        t.num(2 * k);
        t.den(k);
        for &b in e_b {
            t.poch(b, k);
            t.poch_den(1 - b, k);
        }
        t.poch(-n_top, k);
        t.poch_den(n_top + 1, k);
        t.sign(m * k % 2 == 1);
        t.mono(m * choose2(k) + k * (m + n_top - sum_b));
        out.extend(t.finish(Side::Lhs).expect("q-power b_i keep the limit sum pole-free"));
    }
    out
}

fn limit_rhs_terms(n_top: i64, e_b: &[i64]) -> Vec<QTerm> {
    let m = e_b.len();
    let mut out = Vec::new();
    for l in bounded_compositions(m - 1, n_top) {
        let mut t = TermBuilder::default();
        t.poch(1, n_top);
        t.poch_den(1 - e_b[m - 1], n_top);
        t.poch(1, n_top);
        let total: i64 = l.iter().sum();
        t.poch_den(1, n_top - total);
        let mut lambda = 0;
        for i in 0..m - 1 {
            t.poch_den(1, l[i]);
            lambda += l[i];
            t.poch(e_b[i + 1], lambda);
            t.poch_den(1 - e_b[i], lambda);
            t.sign(lambda % 2 == 1);
            t.mono(-e_b[i + 1] * lambda + choose2(lambda) + (m - 1 - i) as i64 * l[i]);
        }
        out.extend(t.finish(Side::Rhs).expect("q-power b_i keep the limit sum pole-free"));
    }
    out
}

/// Both sides of the `a -> 1`, `c -> infinity` limit as exact fractions.
pub fn andrews_limit_sides(n_top: i64, e_b: &[i64]) -> ((LaurentPoly, LaurentPoly), (LaurentPoly, LaurentPoly)) {
    let (l, r) = (limit_lhs_terms(n_top, e_b), limit_rhs_terms(n_top, e_b));
    let cl = Cleared::new(&l, &[]);
    let cr = Cleared::new(&[], &r);
    ((cl.numerator(Side::Lhs), cl.denominator()), (cr.numerator(Side::Rhs), cr.denominator()))
}

/// Limit identity with `b_i = q^(-n_i)`.
///
/// With `n.len() == m` this is the limit display itself. With
/// `n.len() == m - 1` it is the shifted form used to rederive the multisum
/// identity: the display at `m - 1` with `N = n_m = big_n`, multiplied by
/// `prod_i [n_i + n_{i+1}, n_i]`, must give `A(n; m-1)` and, for `m >= 3`,
/// the multisum side.
pub fn andrews_limit_check(m: usize, big_n: i64, n: &[i64]) -> CheckResult {
    let e_b: Vec<i64> = n.iter().map(|&x| -x).collect();
    let base = |r: CheckResult| r.with("m", m as i64).with("N", big_n).with("n", n);
    if n.len() == m {
        let ((ln, ld), (rn, rd)) = andrews_limit_sides(big_n, &e_b);
        let ok = &ln * &rd == &rn * &ld;
        return base(CheckResult::from_bool("andrews-limit", ok, || Witness::Mismatch {
            lhs: ln.div_exact(&ld).unwrap_or(ln.clone()),
            rhs: rn.div_exact(&rd).unwrap_or(rn.clone()),
        }));
    }
    if n.len() + 1 != m || m < 2 {
        return base(CheckResult::skipped("andrews-limit", "need m or m-1 exponents"));
    }
    let mut full = n.to_vec();
    full.push(big_n);
    let weight: LaurentPoly = (0..m).map(|i| qbinom(full[i] + full[(i + 1) % m], full[i])).product();
    let ((ln, ld), (rn, rd)) = andrews_limit_sides(big_n, &e_b);
    let target = CyclicProducts::new(&full).alt_sum(m as i64 - 1);
    let lhs_ok = &weight * &ln == &target * &ld;
    let rhs_ok = &weight * &rn == &target * &rd;
    let multisum_ok = m < 3 || thm1_rhs(&full) == target;
    base(CheckResult::from_bool("andrews-limit", lhs_ok && rhs_ok && multisum_ok, || {
        Witness::Note {
            message: format!("bridge failed: lhs {lhs_ok}, rhs {rhs_ok}, multisum {multisum_ok}"),
        }
    }))
}
