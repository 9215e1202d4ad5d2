//! Acceptance suite: one line per criterion, all comparisons exact.
//!
//! Run with `cargo test -p qsum-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsum_core::andrews::{andrews_check, andrews_grid, andrews_limit_check, check_t_specialization};
use qsum_core::check::CheckResult;
use qsum_core::conjectures::{
    alpha, beta, first_with, first_with_brute, gamma, gcd_family_window, GcdFamily, Stat,
};
use qsum_core::numeric::{
    alt_sum_int, binomial, calkin_general_rhs, check_calkin, check_instance, check_rebino_powers, franel3,
    multinomial3, pfaff_int, schmidt_c_int, suite_instances, t2_closed_int, t3_closed_int, t_int, zud_int,
    IntSumSpec, Suite, SuiteBounds,
};
use qsum_core::qcore::qbinom;
use qsum_core::schmidt::{
    c2_closed, c_triangular, check_c_routes, check_t_closed, check_t_multisum, check_zud, t_closed, t_direct,
    zud_quantity, TCParams,
};
use qsum_core::sums::{
    alt_sum, check_duality, check_lemma_rec, check_positivity, check_qdixon, check_qpfaff, check_thm1,
    normalized_sum, qdixon_sum, qpfaff_sum, thm1_rhs, CyclicProducts, SumSpec,
};
use qsum_core::LaurentPoly;

/// Outcome of one criterion: failures keep the first few offending records.
struct Tally {
    checked: usize,
    skipped: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, skipped: 0, failures: Vec::new() }
    }

    fn record(&mut self, r: CheckResult) {
        self.checked += 1;
        if r.is_verified() {
            return;
        }
        if r.is_counterexample() {
            self.fail(format!("{r:?}"));
        } else {
            self.skipped += 1;
        }
    }

    /// A check whose skips are themselves failures.
    fn require(&mut self, r: CheckResult) {
        self.checked += 1;
        if !r.is_verified() {
            self.fail(format!("{r:?}"));
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn same(&mut self, what: String, q: BigInt, z: BigInt) {
        self.expect(q == z, || format!("{what}: {q} vs {z}"));
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            self.failures.push(msg);
        } else if self.failures.len() == 5 {
            self.failures.push("...".into());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn product_range(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut next = p.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

fn spec(n: &[i64], j: i64) -> SumSpec {
    SumSpec::new(n.to_vec(), j).unwrap()
}

fn tc(n: i64, j: i64, r: i64) -> TCParams {
    TCParams::new(n, j, r).unwrap()
}

fn multisum_identity() -> Tally {
    let mut t = Tally::new();
    for m in 3..=5 {
        for n in product_range(m, 1, 4) {
            t.require(check_thm1(&n));
        }
    }
    t
}

fn positivity() -> Tally {
    let mut t = Tally::new();
    for m in 1..=5 {
        for n in product_range(m, 1, 4) {
            for j in 0..m as i64 {
                t.require(check_positivity(&spec(&n, j)));
            }
        }
    }
    t
}

fn base_cases_and_recurrence() -> Tally {
    let mut t = Tally::new();
    for a in 1..=10 {
        let s = normalized_sum(&spec(&[a], 0)).unwrap();
        t.expect(s.is_zero(), || format!("S({a};0) = {s}"));
        for b in 1..=10 {
            let s1 = normalized_sum(&spec(&[a, b], 1)).unwrap();
            t.expect(s1.is_one(), || format!("S({a},{b};1) = {s1}"));
            let s0 = normalized_sum(&spec(&[a, b], 0)).unwrap();
            let want = LaurentPoly::q_pow(a * b);
            t.expect(s0 == want, || format!("S({a},{b};0) = {s0}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    // the recurrence lowers m, so it starts at m = 3
    for _ in 0..200 {
        let m = rng.gen_range(3..=5usize);
        let n: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
        let j = rng.gen_range(-2..=m as i64);
        t.require(check_lemma_rec(&spec(&n, j)));
    }
    for _ in 0..200 {
        let m = rng.gen_range(1..=5usize);
        let n: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
        t.require(check_duality(&n));
    }
    t
}

fn dixon_and_pfaff() -> Tally {
    let mut t = Tally::new();
    for n1 in 0..=8 {
        for n2 in 0..=8 {
            for n3 in 0..=8 {
                t.require(check_qdixon(n1, n2, n3));
            }
        }
    }
    for n in product_range(3, 0, 5) {
        let lim = *n.iter().min().unwrap();
        for k in -lim..=lim {
            t.require(check_qpfaff(n[0], n[1], n[2], k));
        }
    }
    t
}

fn calkin() -> Tally {
    let mut t = Tally::new();
    for n in 1..=30 {
        t.require(check_calkin(n));
    }
    t
}

fn schmidt_layer() -> Tally {
    let mut t = Tally::new();
    for r in 2..=5 {
        for n in 0..=8 {
            t.require(check_c_routes(n, r));
        }
    }
    let tri = c_triangular(50, 2).unwrap();
    for n in 0..=50i64 {
        let closed = c2_closed(n);
        t.expect(closed == tri[n as usize], || format!("c2_closed({n}) differs from triangular route"));
        let at_one = closed.eval_at_one();
        t.expect(at_one == franel3(n), || format!("c2_closed({n})(1) = {at_one}"));
    }
    for r in 2..=6 {
        for n in 0..=8 {
            for j in 0..=n {
                t.require(check_zud(tc(n, j, r)));
            }
        }
    }
    for r in 2..=3 {
        for n in 0..=10 {
            for j in 0..=n {
                t.require(check_t_closed(tc(n, j, r)));
            }
        }
    }
    for r in 4..=7 {
        for n in 0..=6 {
            for j in 0..=n {
                t.require(check_t_multisum(tc(n, j, r)));
            }
        }
    }
    t
}

fn andrews() -> Tally {
    let mut t = Tally::new();
    let grid = andrews_grid(2, 3, -4, 4);
    for p in &grid {
        t.record(andrews_check(p));
    }
    let verified = t.checked - t.skipped;
    t.expect(verified > 0, || "no pole-free parameter sets".into());
    for r in 2..=7 {
        for n in 0..=5 {
            for j in 0..=n {
                let td = t_direct(tc(n, j, r));
                t.require(check_t_specialization(n, j, r, &td));
            }
        }
    }
    for m in 2..=3usize {
        for big_n in 0..=3 {
            for n in product_range(m, 1, 3) {
                t.require(andrews_limit_check(m, big_n, &n));
            }
            if big_n >= 1 {
                for n in product_range(m - 1, 1, 3) {
                    t.require(andrews_limit_check(m, big_n, &n));
                }
            }
        }
    }
    t
}

fn integer_suite() -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..100 {
        let m = rng.gen_range(1..=4usize);
        let n: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=6)).collect();
        let r: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        t.require(check_rebino_powers(&n, &[1].repeat(m)));
        t.require(check_rebino_powers(&n, &r));
    }
    let proved = SuiteBounds { n_max: 20, exp_sum_max: 7 };
    for suite in [Suite::Cor43, Suite::Cor44, Suite::Cor46, Suite::Cor47, Suite::Cor246, Suite::Cor248] {
        for inst in suite_instances(suite, proved) {
            t.require(check_instance(suite, &inst));
        }
    }
    let open = SuiteBounds { n_max: 40, exp_sum_max: 7 };
    for suite in [Suite::Conj51, Suite::Conj52] {
        for inst in suite_instances(suite, open) {
            t.require(check_instance(suite, &inst));
        }
    }
    t
}

fn digit_statistics() -> Tally {
    let mut t = Tally::new();
    let b = |v: u64| BigInt::from(v);
    t.expect(alpha(&b(185)) == 2, || "alpha(185)".into());
    t.expect(beta(&b(2480)) == 1, || "beta(2480)".into());
    t.expect(gamma(&b(3296)) == 1, || "gamma(3296)".into());
    let limit = b(1_000_000_000);
    for (stat, want) in [(Stat::Alpha, 1640u64), (Stat::Beta, 400), (Stat::Gamma, 97_110_800)] {
        let start = Instant::now();
        let got = first_with(stat, 4, &limit);
        let took = start.elapsed();
        t.expect(got == Some(b(want)), || format!("first_with({stat}, 4) = {got:?}"));
        t.expect(took < Duration::from_secs(60), || format!("first_with({stat}) took {took:?}"));
    }
    for (stat, want) in [(Stat::Alpha, 1640u64), (Stat::Beta, 400)] {
        let got = first_with_brute(stat, 4, 100_000);
        t.expect(got == Some(want), || format!("brute first_with({stat}, 4) = {got:?}"));
    }
    t
}

fn gcd_windows() -> Tally {
    let mut t = Tally::new();
    for n in 1..=60 {
        for class in 0..3 {
            let rep = gcd_family_window(n, GcdFamily::Class(class), 6);
            t.expect(rep.conjecture_divides(), || format!("n={n} class {class}: conjectured value does not divide"));
            t.expect(rep.equal() && rep.stabilized, || {
                let gaps: Vec<String> = rep.running.iter().map(|g| (g / &rep.conjectured).to_string()).collect();
                format!(
                    "n={n} class {class}: equal={} stabilized={} running/conjectured=[{}]",
                    rep.equal(),
                    rep.stabilized,
                    gaps.join(", ")
                )
            });
        }
    }
    t
}

/// Every q-object above, evaluated at q = 1, against the integer layer.
fn cross_layer() -> Tally {
    let mut t = Tally::new();
    for n in 0..=12 {
        for k in 0..=n {
            t.same(format!("qbinom({n},{k})"), qbinom(n, k).eval_at_one(), binomial(n, k));
        }
    }
    for m in 3..=4 {
        for n in product_range(m, 1, 3) {
            let a = alt_sum(&spec(&n, 0)).eval_at_one();
            let z = alt_sum_int(&IntSumSpec::cyclic(&n));
            t.same(format!("alt_sum{n:?}"), a, z.clone());
            t.same(format!("multisum{n:?}"), thm1_rhs(&n).eval_at_one(), calkin_general_rhs(&n));
            let s = normalized_sum(&spec(&n, 1)).unwrap().eval_at_one();
            let cp = CyclicProducts::new(&n);
            let norm = cp.normalizer().eval_at_one();
            t.same(format!("normalized{n:?}"), s * &norm, z);
        }
    }
    for n in product_range(3, 0, 4) {
        t.same(format!("qdixon{n:?}"), qdixon_sum(n[0], n[1], n[2]).eval_at_one(), multinomial3(n[0], n[1], n[2]));
        for k in 0..=*n.iter().min().unwrap() {
            t.same(format!("qpfaff{n:?} k={k}"), qpfaff_sum(n[0], n[1], n[2], k).eval_at_one(), pfaff_int(n[0], n[1], n[2], k));
        }
    }
    for r in 2..=6 {
        for n in 0..=6 {
            for j in 0..=n {
                let p = tc(n, j, r);
                t.same(format!("t({n},{j},{r})"), t_direct(p).eval_at_one(), t_int(n, j, r as u32));
                let zq = zud_quantity(p).unwrap().eval_at_one();
                match zud_int(n, j, r as u32) {
                    Some(z) => t.same(format!("zud({n},{j},{r})"), zq, z),
                    None => t.fail(format!("zud({n},{j},{r}) not integral at q = 1")),
                }
            }
        }
        let cq = c_triangular(6, r).unwrap();
        for (n, (c, z)) in cq.iter().zip(schmidt_c_int(6, r as u32)).enumerate() {
            t.same(format!("c_{n}^({r})"), c.eval_at_one(), z);
        }
    }
    for n in 0..=10 {
        for j in 0..=n {
            t.same(format!("t2_closed({n},{j})"), t_closed(tc(n, j, 2)).eval_at_one(), t2_closed_int(n, j));
            t.same(format!("t3_closed({n},{j})"), t_closed(tc(n, j, 3)).eval_at_one(), t3_closed_int(n, j));
        }
    }
    for n in 0..=20 {
        t.same(format!("c2_closed({n})"), c2_closed(n).eval_at_one(), franel3(n));
    }
    t.expect(t.checked >= 500, || "fewer than 500 cross-layer instances".into());
    t
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Tally); 11] = [
        ("multisum identity, m in 3..=5, n_i <= 4", multisum_identity),
        ("positivity of S(n; j), m <= 5, n_i <= 4", positivity),
        ("base cases, recurrence and duality", base_cases_and_recurrence),
        ("q-Dixon and q-Pfaff-Saalschutz", dixon_and_pfaff),
        ("Calkin quotients, n <= 30", calkin),
        ("Schmidt coefficients and t kernels", schmidt_layer),
        ("Andrews certificates, specializations and limit", andrews),
        ("integer divisibility suite", integer_suite),
        ("digit statistics and first occurrences", digit_statistics),
        ("gcd windows per residue class, n <= 60", gcd_windows),
        ("q = 1 cross-layer oracle", cross_layer),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let took = start.elapsed();
        let status = if tally.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name} [{} checks, {} skipped, {:.1?}]",
            i + 1,
            tally.checked,
            tally.skipped,
            took
        );
        for f in &tally.failures {
            println!("    {f}");
        }
        if !tally.passed() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
