use num_integer::Integer;
use proptest::prelude::*;

use ncurve::{
    canonical_pair, different_exponent, enumerate_signatures, kummer_branch_valid, kummer_genus,
    kummer_signature, primitive_pairs, rh_genus_tame, rh_genus_wild, FiltrationProfile, OrbitDatum,
    RamificationError, Signature,
};

fn primitive_pair() -> impl Strategy<Value = (i64, i64, i64)> {
    (3i64..400)
        .prop_flat_map(|n| (Just(n), 1..n - 1, 1..n - 1))
        .prop_filter("primitive", |&(n, r, s)| {
            r + s < n && r.gcd(&n) == 1 && s.gcd(&n) == 1 && (r + s).gcd(&n) == 1
        })
}

fn filtration() -> impl Strategy<Value = (i64, Vec<i64>)> {
    let primes = prop::sample::select(vec![3i64, 5, 7]);
    (
        primes,
        0u32..4,
        1i64..5,
        1usize..5,
        prop::collection::vec(1usize..3, 3),
    )
        .prop_map(|(p, a, t, first, gaps)| {
            let t = if t % p == 0 { t + 1 } else { t };
            let mut orders = vec![p.pow(a) * t];
            // jumps at first, first + k p, ... so they agree mod p
            let mut level = 1usize;
            let mut jump = first;
            for (step, gap) in gaps.iter().enumerate().take(a as usize) {
                while level <= jump {
                    orders.push(p.pow(a - step as u32));
                    level += 1;
                }
                jump += gap * p as usize;
            }
            (p, orders)
        })
}

proptest! {
    #[test]
    fn single_branch_point_never_valid(n in 2i64..50, vals in prop::collection::vec(-60i64..60, 1..6), idx in 0usize..6, off in 1i64..50) {
        // all entries divisible by n except one, and total zero
        let mut ords: Vec<((), i64)> = vals.iter().map(|v| ((), v * n)).collect();
        let i = idx % ords.len();
        let odd = ords[i].1 + off % n + if off % n == 0 { 1 } else { 0 };
        ords[i].1 = odd;
        let sum: i64 = ords.iter().map(|o| o.1).sum();
        ords.push(((), -sum));
        let nondiv = ords.iter().filter(|o| o.1 % n != 0).count();
        if nondiv == 1 {
            prop_assert!(!kummer_branch_valid(n, &ords));
        }
    }

    #[test]
    fn zero_sum_lists_never_have_one_branch_point(n in 2i64..30, vals in prop::collection::vec(-40i64..40, 1..6)) {
        let sum: i64 = vals.iter().sum();
        let mut all = vals.clone();
        all.push(-sum);
        let nondiv = all.iter().filter(|v| *v % n != 0).count();
        prop_assert_ne!(nondiv, 1);
    }

    #[test]
    fn tame_genus_is_integral_or_rejected(n in 2i64..200, g0 in 0i64..3, picks in prop::collection::vec(0usize..64, 0..6)) {
        let divs: Vec<i64> = (2..=n).filter(|d| n % d == 0).collect();
        let e: Vec<i64> = picks.iter().map(|i| divs[i % divs.len()]).collect();
        let sig = Signature::new(g0, e.clone()).unwrap();
        let rhs = n * (2 * g0 - 2) + e.iter().map(|e| n / e * (e - 1)).sum::<i64>();
        match rh_genus_tame(n, &sig) {
            Ok(g) => prop_assert_eq!(2 * g - 2, rhs),
            Err(RamificationError::Inconsistent(_)) => prop_assert!(rhs % 2 != 0 || rhs < -2),
            Err(other) => prop_assert!(false, "unexpected {other:?}"),
        }
    }

    #[test]
    fn different_exponent_at_least_tame_part((p, orders) in filtration()) {
        let prof = FiltrationProfile::new(p, orders.clone()).unwrap();
        let d = different_exponent(&prof).unwrap();
        prop_assert!(d >= orders[0] - 1);
        prop_assert_eq!(d > orders[0] - 1, !prof.is_tame());
    }

    #[test]
    fn kummer_genus_invariant_under_orbit((n, r, s) in primitive_pair(), u_seed in 1i64..1000) {
        let g = kummer_genus(n, r, s).unwrap();
        prop_assert_eq!(kummer_genus(n, s, r).unwrap(), g);
        let u = (u_seed..u_seed + n).find(|u| u.gcd(&n) == 1).unwrap() % n;
        let (ur, us) = (u * r % n, u * s % n);
        if ur + us < n {
            prop_assert_eq!(kummer_genus(n, ur, us).unwrap(), g);
        }
        let t = n - r - s;
        prop_assert_eq!(kummer_genus(n, r, t).unwrap(), g);
        prop_assert!(n > 2 * g);
    }

    #[test]
    fn canonical_pair_is_idempotent((n, r, s) in primitive_pair()) {
        let c = canonical_pair(n, r, s).unwrap();
        prop_assert_eq!(canonical_pair(n, c.r(), c.s()).unwrap(), c);
        prop_assert_eq!(canonical_pair(n, s, r).unwrap(), c);
        prop_assert_eq!(c.genus(), kummer_genus(n, r, s).unwrap());
    }
}

#[test]
fn wild_formula_matches_tame_formula_on_tame_data() {
    // any prime above 30 makes every index tame
    let p = 31i64;
    for n in 2..=30i64 {
        let divs: Vec<i64> = (2..=n).filter(|d| n % d == 0).collect();
        // every multiset of up to four indices
        let mut stack = vec![(0usize, Vec::<i64>::new())];
        while let Some((start, e)) = stack.pop() {
            if let Ok(sig) = Signature::new(0, e.clone()) {
                let orbits: Vec<_> = e
                    .iter()
                    .map(|&ei| OrbitDatum::new(FiltrationProfile::tame(p, ei).unwrap(), n / ei))
                    .collect();
                let tame = rh_genus_tame(n, &sig).ok();
                let wild = rh_genus_wild(n, 0, &orbits).ok();
                assert_eq!(tame, wild, "N={n} {sig}");
            }
            if e.len() < 4 {
                for (i, &d) in divs.iter().enumerate().skip(start) {
                    let mut next = e.clone();
                    next.push(d);
                    stack.push((i, next));
                }
            }
        }
    }
}

#[test]
fn kummer_signatures_are_enumerated() {
    for n in 5..=40i64 {
        for pr in primitive_pairs(n) {
            let g = pr.genus();
            if g < 2 {
                continue;
            }
            let sig = kummer_signature(n, pr.r(), pr.s()).unwrap();
            assert!(enumerate_signatures(n, g).contains(&sig), "N={n} {pr}");
        }
    }
}

#[test]
fn hyperelliptic_type_enumerated_iff_even_genus() {
    for g in 2..=14i64 {
        let n = 2 * g + 2;
        let sig = Signature::new(0, [2, 2, g + 1, g + 1]).unwrap();
        assert_eq!(
            enumerate_signatures(n, g).contains(&sig),
            g % 2 == 0,
            "g={g}"
        );
    }
}

#[test]
fn no_positive_quotient_genus() {
    for n in 5..=60i64 {
        for g in 2..=(n - 1) / 2 {
            assert!(enumerate_signatures(n, g).iter().all(|s| s.g0() == 0));
        }
    }
}
