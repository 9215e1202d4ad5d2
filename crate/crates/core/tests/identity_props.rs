use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qsum_core::andrews::{andrews_check, andrews_side, AndrewsParams, Side};
use qsum_core::conjectures::{digits, from_digits, gcd_window, Stat};
use qsum_core::exact::rational_pow;
use qsum_core::schmidt::{legendre_forward, legendre_inverse};
use qsum_core::sums::{check_duality, check_lemma_rec, check_positivity, SumSpec};
use qsum_core::LaurentPoly;

fn pow(x: &BigRational, e: i64) -> BigRational {
    rational_pow(x, e)
}

/// `(x; q)_k` by the definition.
fn poch(x: &BigRational, q: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= BigRational::one() - &t;
        t *= q;
    }
    acc
}

/// Both sides of the terminating very-well-poised identity at a rational `q`,
/// written straight from the definition. `None` when a denominator vanishes.
fn reference_sides(q: &BigRational, e_a: i64, e_b: &[i64], e_c: &[i64], n: i64) -> Option<(BigRational, BigRational)> {
    let m = e_b.len();
    let a = pow(q, e_a);
    let b: Vec<BigRational> = e_b.iter().map(|&e| pow(q, e)).collect();
    let c: Vec<BigRational> = e_c.iter().map(|&e| pow(q, e)).collect();
    let qn = pow(q, -n);
    let aq = &a * q;
    let bc: BigRational = b.iter().zip(&c).map(|(x, y)| x * y).product();
    let z = pow(&a, m as i64) * pow(q, m as i64 + n) / &bc;

    let ratio = |num: BigRational, den: BigRational| if den.is_zero() { None } else { Some(num / den) };
    let mut lhs = BigRational::zero();
    for k in 0..=n {
        let mut num = poch(&a, q, k) * poch(&qn, q, k) * (BigRational::one() - &a * pow(q, 2 * k));
        let mut den = poch(q, q, k) * poch(&(&aq * pow(q, n)), q, k) * (BigRational::one() - &a);
        for i in 0..m {
            num *= poch(&b[i], q, k) * poch(&c[i], q, k);
            den *= poch(&(&aq / &b[i]), q, k) * poch(&(&aq / &c[i]), q, k);
        }
        lhs += ratio(num * pow(&z, k), den)?;
    }

    let (bm, cm) = (&b[m - 1], &c[m - 1]);
    let front = ratio(
        poch(&aq, q, n) * poch(&(&aq / (bm * cm)), q, n),
        poch(&(&aq / bm), q, n) * poch(&(&aq / cm), q, n),
    )?;
    let mut inner = BigRational::zero();
    let mut l = vec![0i64; m.saturating_sub(1)];
    loop {
        let partial: Vec<i64> = l.iter().scan(0, |s, &x| { *s += x; Some(*s) }).collect();
        let total = partial.last().copied().unwrap_or(0);
        if total <= n {
            let mut num = BigRational::one();
            let mut den = BigRational::one();
            for i in 0..m - 1 {
                let li = partial[i];
                num *= poch(&(&aq / (&b[i] * &c[i])), q, l[i]) * poch(&b[i + 1], q, li) * poch(&c[i + 1], q, li);
                den *= poch(q, q, l[i]) * poch(&(&aq / &b[i]), q, li) * poch(&(&aq / &c[i]), q, li);
            }
            num *= poch(&qn, q, total) * pow(q, total);
            den *= poch(&(bm * cm * &qn / &a), q, total);
            let aq_power: i64 = (0..m.saturating_sub(2)).map(|i| (m as i64 - 2 - i as i64) * l[i]).sum();
            num *= pow(&aq, aq_power);
            for i in 1..m - 1 {
                den *= pow(&(&b[i] * &c[i]), partial[i - 1]);
            }
            inner += ratio(num, den)?;
        }
        let mut i = 0;
        while i < l.len() {
            l[i] += 1;
            if l[i] <= n {
                break;
            }
            l[i] = 0;
            i += 1;
        }
        if i == l.len() {
            break;
        }
    }
    Some((lhs, front * inner))
}

fn spec_strategy(min_m: usize, max_m: usize, max_n: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1..=max_n, min_m..=max_m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lemma_recurrence(n in spec_strategy(3, 5, 4), j in -2i64..6) {
        let r = check_lemma_rec(&SumSpec::new(n, j).unwrap());
        prop_assert!(r.is_verified(), "{:?}", r);
    }

    #[test]
    fn positivity_and_duality(n in spec_strategy(1, 4, 5), j in 0i64..4) {
        let j = j % n.len() as i64;
        let r = check_positivity(&SumSpec::new(n.clone(), j).unwrap());
        prop_assert!(r.is_verified(), "{:?}", r);
        let d = check_duality(&n);
        prop_assert!(d.is_verified(), "{:?}", d);
    }

    #[test]
    fn legendre_round_trip(cs in prop::collection::vec(prop::collection::vec(-9i64..9, 0..5), 1..7)) {
        let b: Vec<LaurentPoly> = cs.iter().map(|c| LaurentPoly::from_i64s(0, c)).collect();
        let a: Vec<LaurentPoly> = (0..b.len()).map(|n| legendre_forward(&b, n)).collect();
        for n in 0..b.len() {
            prop_assert_eq!(&legendre_inverse(&a, n), &b[n]);
        }
    }

    #[test]
    fn digit_round_trip(n in 0u64..u64::MAX, base in 2u32..17) {
        let big = BigInt::from(n);
        let d = digits(&big, base);
        prop_assert!(d.first() != Some(&0));
        prop_assert!(d.iter().all(|&x| x < base));
        prop_assert_eq!(from_digits(&d, base), big);
    }

    #[test]
    fn alpha_ignores_trailing_zero_and_one(n in 0u64..1_000_000_000) {
        let a = Stat::Alpha.of_u64(n);
        prop_assert_eq!(Stat::Alpha.of_u64(3 * n), a);
        prop_assert_eq!(Stat::Alpha.of_u64(3 * n + 1), a);
        prop_assert_eq!(Stat::Alpha.of(&BigInt::from(n)), a);
    }

    #[test]
    fn gcd_window_shrinks(n in 1i64..25, start in 1u32..6, len in 1usize..6) {
        let short: Vec<u32> = (start..start + len as u32).collect();
        let long: Vec<u32> = (start..start + len as u32 + 2).collect();
        let (s, l) = (gcd_window(n, &short, BigInt::one()), gcd_window(n, &long, BigInt::one()));
        prop_assert!(s.gcd().is_multiple_of(l.gcd()));
        for (sum, run) in l.sums.iter().zip(&l.running) {
            prop_assert!(sum.is_multiple_of(run));
        }
    }

    #[test]
    fn andrews_matches_reference(
        m in 1usize..4,
        big_n in 0i64..4,
        e_a in 9i64..16,
        ebc in prop::collection::vec(-3i64..4, 6),
        num in 2i64..7,
        den in 2i64..7,
    ) {
        prop_assume!(num != den);
        let q = BigRational::new(num.into(), den.into());
        let (e_b, e_c) = (ebc[..m].to_vec(), ebc[3..3 + m].to_vec());
        let reference = reference_sides(&q, e_a, &e_b, &e_c, big_n);
        prop_assume!(reference.is_some());
        let (lhs, rhs) = reference.unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let p = AndrewsParams::new(big_n, e_a, e_b, e_c).unwrap();
        prop_assert_eq!(andrews_side(Side::Lhs, &p, &q).unwrap(), lhs);
        prop_assert_eq!(andrews_side(Side::Rhs, &p, &q).unwrap(), rhs);
        let r = andrews_check(&p);
        prop_assert!(r.is_verified(), "{:?}", r);
    }
}
