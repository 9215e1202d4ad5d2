//! Verification suites: each one expands its parameter grid into independent tasks.

use qsum_core::andrews::{andrews_check_seeded, andrews_grid, andrews_limit_check};
use qsum_core::conjectures::{check_gcd, gcd_family_window, GcdFamily, GcdReport};
use qsum_core::numeric::{check_instance, check_rebino_powers, suite_instances, Suite, SuiteBounds};
use qsum_core::qcore::qbinom;
use qsum_core::schmidt::{
    check_c_routes, check_t_closed, check_t_multisum, check_zud, legendre_forward, legendre_inverse, TCParams,
};
use qsum_core::sums::{
    check_duality, check_lemma_rec, check_m3, check_positivity, check_qdixon, check_qpfaff, check_thm1, SumSpec,
};
use qsum_core::{CheckResult, LaurentPoly, Witness};
use serde_json::{json, Value};

use crate::grid::{tuples, Span};

pub const SUITES: [&str; 25] = [
    "thm1",
    "thm2-positivity",
    "lemma21",
    "duality",
    "qdixon",
    "qpfaff",
    "m3",
    "andrews",
    "andrews-limit",
    "schmidt-c",
    "zud-t",
    "t-closed",
    "t-multisum",
    "legendre",
    "rebino",
    "cor43",
    "cor44",
    "cor46",
    "cor47",
    "cor246",
    "cor248",
    "conj51",
    "conj52",
    "conj53",
    "conj54",
];

/// Grid bounds for a suite; `None` means the suite's default.
#[derive(Debug, Clone, Default)]
pub struct Bounds {
    pub n: Option<Span>,
    pub m: Option<Span>,
    pub j: Option<Span>,
    pub r: Option<Span>,
    pub k: Option<Span>,
    pub big_n: Option<Span>,
    pub exp: Option<Span>,
    pub exp_sum: Option<u32>,
    pub seed: u64,
    pub r_window: usize,
    pub explore: bool,
}

pub type Task = Box<dyn Fn() -> (CheckResult, Option<Value>) + Send + Sync>;

fn task(f: impl Fn() -> CheckResult + Send + Sync + 'static) -> Task {
    Box::new(move || (f(), None))
}

fn at_least(name: &str, span: Span, min: i64) -> Result<Span, String> {
    if span.lo < min {
        return Err(format!("--{name} must be >= {min}, got {span}"));
    }
    Ok(span)
}

fn tc(n: i64, j: i64, r: i64) -> TCParams {
    TCParams::new(n, j, r).expect("bounds checked above")
}

pub fn build(suite: &str, b: &Bounds) -> Result<Vec<Task>, String> {
    let n_or = |d: Span| b.n.unwrap_or(d);
    let m_or = |d: Span| b.m.unwrap_or(d);
    let r_or = |d: Span| b.r.unwrap_or(d);
    let mut out: Vec<Task> = Vec::new();
    match suite {
        "thm1" => {
            let m = at_least("m", m_or(Span::new(3, 4)), 3)?;
            let n = at_least("n", n_or(Span::new(1, 3)), 1)?;
            for len in m.iter() {
                for t in tuples(len as usize, n) {
                    out.push(task(move || check_thm1(&t)));
                }
            }
        }
        "thm2-positivity" => {
            let m = at_least("m", m_or(Span::new(1, 3)), 1)?;
            let n = at_least("n", n_or(Span::new(1, 3)), 1)?;
            for len in m.iter() {
                let claimed = Span::new(0, len - 1);
                let js = match (b.j, b.explore) {
                    (Some(j), true) => j,
                    (None, true) => Span::new(len, len + 1),
                    (Some(j), false) => j.clamp(0, len - 1),
                    (None, false) => claimed,
                };
                for t in tuples(len as usize, n) {
                    for j in js.iter() {
                        let t = t.clone();
                        let spec = SumSpec::new(t, j).map_err(|e| e.to_string())?;
                        if claimed.contains(j) {
                            out.push(task(move || check_positivity(&spec)));
                        } else {
                            out.push(task(move || explore_positivity(&spec)));
                        }
                    }
                }
            }
        }
        "lemma21" => {
            let m = at_least("m", m_or(Span::new(3, 4)), 3)?;
            let n = at_least("n", n_or(Span::new(1, 3)), 1)?;
            for len in m.iter() {
                let js = b.j.unwrap_or(Span::new(-2, len));
                for t in tuples(len as usize, n) {
                    for j in js.iter() {
                        let spec = SumSpec::new(t.clone(), j).map_err(|e| e.to_string())?;
                        out.push(task(move || check_lemma_rec(&spec)));
                    }
                }
            }
        }
        "duality" => {
            let m = at_least("m", m_or(Span::new(1, 4)), 1)?;
            let n = at_least("n", n_or(Span::new(1, 3)), 1)?;
            for len in m.iter() {
                for t in tuples(len as usize, n) {
                    out.push(task(move || check_duality(&t)));
                }
            }
        }
        "qdixon" => {
            let n = at_least("n", n_or(Span::new(0, 5)), 0)?;
            for t in tuples(3, n) {
                out.push(task(move || check_qdixon(t[0], t[1], t[2])));
            }
        }
        "qpfaff" => {
            let n = at_least("n", n_or(Span::new(0, 4)), 0)?;
            for t in tuples(3, n) {
                let lim = *t.iter().min().unwrap();
                let ks = b.k.unwrap_or(Span::new(-lim, lim)).clamp(-lim, lim);
                for k in ks.iter() {
                    let t = t.clone();
                    out.push(task(move || check_qpfaff(t[0], t[1], t[2], k)));
                }
            }
        }
        "m3" => {
            let n = at_least("n", n_or(Span::new(1, 4)), 1)?;
            let js = b.j.unwrap_or(Span::new(0, 2));
            for t in tuples(3, n) {
                for j in js.iter() {
                    let t = t.clone();
                    out.push(task(move || check_m3(t[0], t[1], t[2], j)));
                }
            }
        }
        "andrews" => {
            let m = at_least("m", m_or(Span::new(1, 2)), 1)?;
            let big_n = at_least("big-n", b.big_n.unwrap_or(Span::new(0, 3)), 0)?;
            let exp = b.exp.unwrap_or(Span::new(-2, 2));
            let seed = b.seed;
            for p in andrews_grid(m.hi as usize, big_n.hi, exp.lo, exp.hi) {
                if m.contains(p.m as i64) && big_n.contains(p.big_n) {
                    out.push(task(move || andrews_check_seeded(&p, seed)));
                }
            }
        }
        "andrews-limit" => {
            let m = at_least("m", m_or(Span::new(2, 3)), 2)?;
            let big_n = at_least("big-n", b.big_n.unwrap_or(Span::new(0, 3)), 0)?;
            let n = at_least("n", n_or(Span::new(1, 3)), 1)?;
            for len in m.iter() {
                let len = len as usize;
                for big in big_n.iter() {
                    for t in tuples(len, n) {
                        out.push(task(move || andrews_limit_check(len, big, &t)));
                    }
                    if big >= 1 {
                        for t in tuples(len - 1, n) {
                            out.push(task(move || andrews_limit_check(len, big, &t)));
                        }
                    }
                }
            }
        }
        "schmidt-c" => {
            let n = at_least("n", n_or(Span::new(0, 6)), 0)?;
            let r = at_least("r", r_or(Span::new(2, 4)), 2)?;
            for r in r.iter() {
                for n in n.iter() {
                    out.push(task(move || check_c_routes(n, r)));
                }
            }
        }
        "zud-t" | "t-closed" | "t-multisum" => {
            let (n_def, r_def, r_ok) = match suite {
                "zud-t" => (Span::new(0, 6), Span::new(2, 4), Span::new(2, i64::MAX)),
                "t-closed" => (Span::new(0, 8), Span::new(2, 3), Span::new(2, 3)),
                _ => (Span::new(0, 5), Span::new(4, 5), Span::new(4, i64::MAX)),
            };
            let n = at_least("n", n_or(n_def), 0)?;
            let r = r_or(r_def);
            if !r_ok.contains(r.lo) || !r_ok.contains(r.hi) {
                return Err(format!("--r for {suite} must lie in {}..{}", r_ok.lo, r_ok.hi.min(99)));
            }
            for r in r.iter() {
                for n in n.iter() {
                    for j in b.j.unwrap_or(Span::new(0, n)).clamp(0, n).iter() {
                        let p = tc(n, j, r);
                        out.push(match suite {
                            "zud-t" => task(move || check_zud(p)),
                            "t-closed" => task(move || check_t_closed(p)),
                            _ => task(move || check_t_multisum(p)),
                        });
                    }
                }
            }
        }
        "legendre" => {
            let n = at_least("n", n_or(Span::new(0, 6)), 0)?;
            let r = at_least("r", r_or(Span::new(1, 3)), 1)?;
            for r in r.iter() {
                for n in n.iter() {
                    out.push(task(move || check_legendre(n as usize, r as u32)));
                }
            }
        }
        "rebino" => {
            let m = at_least("m", m_or(Span::new(1, 3)), 1)?;
            let n = at_least("n", n_or(Span::new(1, 4)), 1)?;
            let r = at_least("r", r_or(Span::new(1, 1)), 1)?;
            for len in m.iter() {
                for t in tuples(len as usize, n) {
                    for e in tuples(len as usize, r) {
                        let e: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                        let t = t.clone();
                        out.push(task(move || check_rebino_powers(&t, &e)));
                    }
                }
            }
        }
        "conj53" | "conj54" => {
            let n = at_least("n", n_or(Span::new(1, 20)), 1)?;
            if b.r_window == 0 {
                return Err("--r-window must be positive".into());
            }
            let families: Vec<GcdFamily> = if suite == "conj53" {
                at_least("m", m_or(Span::new(1, 3)), 1)?.iter().map(|m| GcdFamily::AllFrom(m as u32)).collect()
            } else {
                (0..3).map(GcdFamily::Class).collect()
            };
            let window = b.r_window;
            for n in n.iter() {
                for &f in &families {
                    out.push(Box::new(move || {
                        let detail = gcd_detail(&gcd_family_window(n, f, window), f);
                        (check_gcd(n, f, window), Some(detail))
                    }));
                }
            }
        }
        other => {
            let s = Suite::parse(other).ok_or_else(|| format!("unknown suite '{other}'"))?;
            let n = at_least("n", n_or(Span::new(1, 10)), 1)?;
            let bounds = SuiteBounds { n_max: n.hi, exp_sum_max: b.exp_sum.unwrap_or(7) };
            for inst in suite_instances(s, bounds) {
                let sizes_ok = inst.params.iter().filter(|(k, _)| matches!(*k, "l" | "m" | "n")).all(|(_, v)| *v >= n.lo);
                if sizes_ok {
                    out.push(task(move || check_instance(s, &inst)));
                }
            }
        }
    }
    Ok(out)
}

/// Outside the claimed range nothing is asserted: a negative coefficient is reported, not counted.
fn explore_positivity(spec: &SumSpec) -> CheckResult {
    let r = check_positivity(spec);
    match r.witness() {
        Some(w) => CheckResult::skipped("thm2-explore", format!("outside N[q]: {w}")),
        None => CheckResult { check: "thm2-explore".into(), ..r },
    }
    .with("n", spec.n())
    .with("j", spec.j())
}

/// `b_k = [2k, k]^r`, pushed through the Legendre pair and back.
fn check_legendre(n: usize, r: u32) -> CheckResult {
    let b: Vec<LaurentPoly> = (0..=n as i64).map(|k| qbinom(2 * k, k).pow(r)).collect();
    let a: Vec<LaurentPoly> = (0..=n).map(|i| legendre_forward(&b, i)).collect();
    let back = legendre_inverse(&a, n);
    CheckResult::from_bool("legendre", back == b[n], || Witness::Mismatch { lhs: back.clone(), rhs: b[n].clone() })
        .with("n", n as i64)
        .with("r", r as i64)
}

pub fn gcd_detail(rep: &GcdReport, family: GcdFamily) -> Value {
    let strings = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    json!({
        "family": family.label(),
        "exponents": rep.exponents,
        "running_gcd": strings(&rep.running),
        "gcd": rep.gcd().to_string(),
        "conjectured": rep.conjectured.to_string(),
        "divides": rep.conjecture_divides(),
        "equal": rep.equal(),
        "stabilized": rep.stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(suite: &str, b: &Bounds) -> Vec<CheckResult> {
        build(suite, b).unwrap().iter().map(|t| t().0).collect()
    }

    #[test]
    fn every_suite_builds_with_defaults() {
        let b = Bounds { r_window: 6, ..Bounds::default() };
        for s in SUITES {
            assert!(!build(s, &b).unwrap().is_empty(), "{s}");
        }
    }

    #[test]
    fn small_grids_verify() {
        let b = Bounds { n: Some(Span::new(1, 2)), r_window: 6, ..Bounds::default() };
        for s in ["thm1", "qdixon", "legendre", "cor43", "conj54"] {
            assert!(run(s, &b).iter().all(CheckResult::is_verified), "{s}");
        }
    }

    #[test]
    fn bad_bounds_are_rejected() {
        let b = Bounds { m: Some(Span::new(2, 3)), ..Bounds::default() };
        assert!(build("thm1", &b).is_err());
        let b = Bounds { r: Some(Span::new(4, 4)), ..Bounds::default() };
        assert!(build("t-closed", &b).is_err());
        assert!(build("nope", &Bounds::default()).is_err());
    }
}
