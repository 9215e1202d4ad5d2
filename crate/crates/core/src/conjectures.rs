//! Digit statistics in bases 3, 7 and 13, and gcds of power families of
//! central alternating sums.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::check::{CheckResult, Witness};
use crate::numeric::{alt_binom_sum, binomial, BinomFactor};

/// Base-`base` digits of `n`, most significant first; empty for `n = 0`.
pub fn digits(n: &BigInt, base: u32) -> Vec<u32> {
    assert!(base >= 2 && *n >= BigInt::zero());
    let mut out = n.to_radix_be(base).1;
    if out == [0] {
        out.clear();
    }
    out.into_iter().map(u32::from).collect()
}

pub fn from_digits(d: &[u32], base: u32) -> BigInt {
    d.iter().fold(BigInt::zero(), |acc, &x| acc * base + x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stat {
    Alpha,
    Beta,
    Gamma,
}

impl Stat {
    pub fn base(self) -> u32 {
        match self {
            Stat::Alpha => 3,
            Stat::Beta => 7,
            Stat::Gamma => 13,
        }
    }

    pub fn parse(s: &str) -> Option<Stat> {
        match s {
            "alpha" => Some(Stat::Alpha),
            "beta" => Some(Stat::Beta),
            "gamma" => Some(Stat::Gamma),
            _ => None,
        }
    }

    /// One digit of the scan: new state and whether a counted pattern closed.
    /// The state is a single flag: "inside a run of 2's" for alpha, "pending 1"
    /// for beta and gamma.
    fn step(self, state: bool, d: u32) -> (bool, u32) {
        match self {
            Stat::Alpha => match d {
                2 => (true, u32::from(!state)),
                0 => (false, 0),
                _ => (state, 0),
            },
            Stat::Beta => {
                let hit = state && !(4..=6).contains(&d);
                (d == 1, u32::from(hit))
            }
            Stat::Gamma => {
                let hit = state && (7..=12).contains(&d);
                (d == 1 || (state && d == 6), u32::from(hit))
            }
        }
    }

    fn finish(self, state: bool) -> u32 {
        u32::from(self == Stat::Beta && state)
    }

    pub fn of_digits(self, d: &[u32]) -> u32 {
        let (mut state, mut count) = (false, 0);
        for &x in d {
            let (s, inc) = self.step(state, x);
            state = s;
            count += inc;
        }
        count + self.finish(state)
    }

    pub fn of(self, n: &BigInt) -> u32 {
        self.of_digits(&digits(n, self.base()))
    }

    pub fn of_u64(self, mut n: u64) -> u32 {
        let base = self.base() as u64;
        let mut buf = [0u32; 64];
        let mut len = 0;
        while n > 0 {
            buf[len] = (n % base) as u32;
            n /= base;
            len += 1;
        }
        buf[..len].reverse();
        self.of_digits(&buf[..len])
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stat::Alpha => "alpha",
            Stat::Beta => "beta",
            Stat::Gamma => "gamma",
        })
    }
}

/// `n` with its digit expansion in one of the three bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStats {
    pub n: BigInt,
    pub stat: Stat,
    pub digits: Vec<u32>,
}

impl DigitStats {
    pub fn new(n: BigInt, stat: Stat) -> Self {
        let digits = digits(&n, stat.base());
        Self { n, stat, digits }
    }

    pub fn value(&self) -> u32 {
        self.stat.of_digits(&self.digits)
    }

    pub fn base(&self) -> u32 {
        self.stat.base()
    }
}

impl fmt::Display for DigitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.digits.iter().map(u32::to_string).collect();
        let sep = if self.base() > 10 { "," } else { "" };
        write!(f, "[{}]_{}", body.join(sep), self.base())
    }
}

pub fn alpha(n: &BigInt) -> u32 {
    Stat::Alpha.of(n)
}

pub fn beta(n: &BigInt) -> u32 {
    Stat::Beta.of(n)
}

pub fn gamma(n: &BigInt) -> u32 {
    Stat::Gamma.of(n)
}

/// Can `left` more digits take the scan from `(state, count)` to exactly `target`?
struct Feasible {
    stat: Stat,
    target: u32,
    memo: HashMap<(usize, bool, u32), bool>,
}

impl Feasible {
    fn can(&mut self, left: usize, state: bool, count: u32) -> bool {
        if count > self.target {
            return false;
        }
        if left == 0 {
            return count + self.stat.finish(state) == self.target;
        }
        if let Some(&v) = self.memo.get(&(left, state, count)) {
            return v;
        }
        let v = (0..self.stat.base()).any(|d| {
            let (s, inc) = self.stat.step(state, d);
            self.can(left - 1, s, count + inc)
        });
        self.memo.insert((left, state, count), v);
        v
    }
}

/// Least `n <= limit` with `stat(n) = target`, built digit by digit:
/// the shortest feasible length, then the smallest feasible digit at each place.
pub fn first_with(stat: Stat, target: u32, limit: &BigInt) -> Option<BigInt> {
    if target == 0 {
        return Some(BigInt::zero());
    }
    let base = stat.base();
    let mut f = Feasible { stat, target, memo: HashMap::new() };
    let max_len = digits(limit, base).len();
    for len in 1..=max_len {
        let mut state = false;
        let mut count = 0;
        let mut chosen = Vec::with_capacity(len);
        let mut ok = true;
        for pos in 0..len {
            let lowest = u32::from(pos == 0);
            let pick = (lowest..base).find(|&d| {
                let (s, inc) = stat.step(state, d);
                f.can(len - pos - 1, s, count + inc)
            });
            match pick {
                Some(d) => {
                    let (s, inc) = stat.step(state, d);
                    state = s;
                    count += inc;
                    chosen.push(d);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let n = from_digits(&chosen, base);
            return (n <= *limit).then_some(n);
        }
    }
    None
}

/// Linear scan used to cross-check [`first_with`].
pub fn first_with_brute(stat: Stat, target: u32, limit: u64) -> Option<u64> {
    (0..=limit).find(|&n| stat.of_u64(n) == target)
}

/// Which exponents a gcd runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GcdFamily {
    /// `r = m, m+1, ...`, conjectured gcd `C(2n, n)`.
    AllFrom(u32),
    /// `r = 3s + class`, `s >= 1`.
    Class(u32),
}

impl GcdFamily {
    pub fn exponents(self, window: usize) -> Vec<u32> {
        match self {
            GcdFamily::AllFrom(m) => (0..window as u32).map(|i| m + i).collect(),
            GcdFamily::Class(c) => (1..=window as u32).map(|s| 3 * s + c).collect(),
        }
    }

    pub fn conjectured(self, n: i64) -> BigInt {
        let central = binomial(2 * n, n);
        let nn = BigInt::from(n);
        match self {
            GcdFamily::AllFrom(_) | GcdFamily::Class(2) => central,
            GcdFamily::Class(0) => central * Pow::pow(&BigInt::from(3), alpha(&nn)),
            GcdFamily::Class(1) => {
                central * Pow::pow(&BigInt::from(7), beta(&nn)) * Pow::pow(&BigInt::from(13), gamma(&nn))
            }
            GcdFamily::Class(c) => panic!("residue class {c} out of range"),
        }
    }

    pub fn label(self) -> String {
        match self {
            GcdFamily::AllFrom(m) => format!("r>={m}"),
            GcdFamily::Class(c) => format!("3r+{c}"),
        }
    }
}

/// gcd of `sum_k (-1)^k C(2n, n+k)^r` over a finite window of exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdReport {
    pub n: i64,
    pub exponents: Vec<u32>,
    pub sums: Vec<BigInt>,
    /// gcd of the first `i + 1` sums.
    pub running: Vec<BigInt>,
    pub conjectured: BigInt,
    pub stabilized: bool,
}

impl GcdReport {
    pub fn gcd(&self) -> &BigInt {
        self.running.last().expect("window is nonempty")
    }

    pub fn conjecture_divides(&self) -> bool {
        let g = self.gcd();
        if g.is_zero() {
            return true;
        }
        !self.conjectured.is_zero() && g.is_multiple_of(&self.conjectured)
    }

    pub fn equal(&self) -> bool {
        *self.gcd() == self.conjectured
    }
}

pub fn central_power_sum(n: i64, r: u32) -> BigInt {
    alt_binom_sum(&[BinomFactor::central(n, r)], -n, n)
}

/// Window gcd against an explicit conjectured value.
pub fn gcd_window(n: i64, exponents: &[u32], conjectured: BigInt) -> GcdReport {
    assert!(!exponents.is_empty());
    let sums: Vec<BigInt> = exponents.iter().map(|&r| central_power_sum(n, r)).collect();
    let mut running = Vec::with_capacity(sums.len());
    let mut g = BigInt::zero();
    for s in &sums {
        g = g.gcd(s);
        running.push(g.clone());
    }
    let half = running.len() / 2;
    let stabilized = running[half..].iter().all(|x| x == &g);
    GcdReport { n, exponents: exponents.to_vec(), sums, running, conjectured, stabilized }
}

pub fn gcd_family_window(n: i64, family: GcdFamily, window: usize) -> GcdReport {
    gcd_window(n, &family.exponents(window), family.conjectured(n))
}

/// Consistency of one window with the conjecture: the conjectured value
/// divides the window gcd, and equals it once the window has stabilized.
pub fn check_gcd(n: i64, family: GcdFamily, window: usize) -> CheckResult {
    let id = match family {
        GcdFamily::AllFrom(_) => "conj53",
        GcdFamily::Class(_) => "conj54",
    };
    let rep = gcd_family_window(n, family, window);
    let out = |c: CheckResult| c.with("n", n).with("family", family.label().as_str()).with("window", window as i64);
    if !rep.conjecture_divides() {
        return out(CheckResult::counterexample(
            id,
            Witness::IntNotDivisible {
                value: rep.gcd().clone(),
                divisor: rep.conjectured.clone(),
                remainder: rep.gcd().mod_floor(&rep.conjectured),
            },
        ));
    }
    if rep.equal() {
        return out(CheckResult::verified(id));
    }
    if rep.stabilized {
        return out(CheckResult::counterexample(
            id,
            Witness::IntMismatch { lhs: rep.gcd().clone(), rhs: rep.conjectured.clone() },
        ));
    }
    let ratio = rep.gcd() / &rep.conjectured;
    out(CheckResult::skipped(id, format!("window not stabilized, gcd / conjectured = {ratio}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(digits(&b(185), 3), vec![2, 0, 2, 1, 2]);
        assert_eq!(digits(&b(2480), 7), vec![1, 0, 1, 4, 2]);
        assert_eq!(digits(&b(3296), 13), vec![1, 6, 6, 7]);
        assert!(digits(&b(0), 3).is_empty());
        assert_eq!(from_digits(&[1, 7, 1, 7, 1, 7, 1, 7], 13), b(97_110_800));
    }

    #[test]
    fn statistics() {
        assert_eq!(alpha(&b(185)), 2);
        assert_eq!(alpha(&b(1640)), 4);
        assert_eq!(alpha(&b(0)), 0);
        assert_eq!(beta(&b(2480)), 1);
        assert_eq!(beta(&b(400)), 4);
        assert_eq!(beta(&b(4)), 0);
        assert_eq!(gamma(&b(3296)), 1);
        assert_eq!(gamma(&b(97_110_800)), 4);
        assert_eq!(gamma(&b(1)), 0);
        // a 6-run broken by another digit does not count
        assert_eq!(Stat::Gamma.of_digits(&[1, 6, 5, 7]), 0);
        assert_eq!(Stat::Gamma.of_u64(3296), 1);
    }

    #[test]
    fn display() {
        assert_eq!(DigitStats::new(b(185), Stat::Alpha).to_string(), "[20212]_3");
        assert_eq!(DigitStats::new(b(3296), Stat::Gamma).to_string(), "[1,6,6,7]_13");
        assert_eq!(DigitStats::new(b(400), Stat::Beta).value(), 4);
    }

    #[test]
    fn first_occurrences() {
        assert_eq!(first_with(Stat::Alpha, 4, &b(10_000)), Some(b(1640)));
        assert_eq!(first_with(Stat::Beta, 4, &b(1000)), Some(b(400)));
        assert_eq!(first_with(Stat::Alpha, 4, &b(1000)), None);
        assert_eq!(first_with_brute(Stat::Alpha, 4, 10_000), Some(1640));
        for stat in [Stat::Alpha, Stat::Beta, Stat::Gamma] {
            for target in 1..3 {
                let fast = first_with(stat, target, &b(100_000));
                let slow = first_with_brute(stat, target, 100_000).map(BigInt::from);
                assert_eq!(fast, slow, "{stat} {target}");
            }
        }
    }

    #[test]
    fn gcd_examples() {
        let rep = gcd_family_window(1, GcdFamily::Class(0), 6);
        assert_eq!(rep.conjectured, b(2));
        assert!(rep.conjecture_divides());
        let rep = gcd_family_window(2, GcdFamily::Class(2), 6);
        assert_eq!(rep.conjectured, b(6));
        assert!(rep.conjecture_divides());
        let rep = gcd_window(1, &(2..=8).collect::<Vec<_>>(), b(2));
        assert_eq!(*rep.gcd(), b(2));
        assert!(rep.stabilized);
        assert!(check_gcd(3, GcdFamily::AllFrom(2), 6).is_verified());
    }
}
