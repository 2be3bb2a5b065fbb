use polyembed::capacities::{
    continued_fraction, ellipsoid_capacities, polydisc_capacities, sharp_terms, weight_identities_hold, weight_sequence, Cutoff,
};
use polyembed::{q, Rational};
use proptest::prelude::*;

/// Every m*a + n*b up to `limit`, sorted with repetitions.
fn grid(a: &Rational, b: &Rational, limit: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut m = 0i64;
    loop {
        let x = a * &Rational::from(m);
        if &x > limit {
            break;
        }
        let mut n = 0i64;
        loop {
            let v = &x + &(b * &Rational::from(n));
            if &v > limit {
                break;
            }
            out.push(v);
            n += 1;
        }
        m += 1;
    }
    out.sort();
    out
}

/// min{c*m + d*n : (m+1)(n+1) >= k+1} by scanning all m, n <= k.
fn polydisc_brute(c: &Rational, d: &Rational, k: i64) -> Rational {
    let mut best: Option<Rational> = None;
    for m in 0..=k {
        let n = (k + 1 + m) / (m + 1) - 1;
        let v = c * &Rational::from(m) + d * &Rational::from(n);
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    }
    best.unwrap()
}

fn ball(w: &Rational, upto: usize) -> Vec<Rational> {
    // values d*w; enough to cover index upto
    let lim = w * &Rational::from(upto as i64 + 2);
    let mut g = grid(w, w, &lim);
    g.truncate(upto + 1);
    g
}

#[test]
fn ball_positions() {
    for a in [q(1, 1), q(3, 2)] {
        let v = ellipsoid_capacities(&a, &a, &Cutoff::Index(20 * 23 / 2 + 1)).unwrap();
        for d in 0..=20i64 {
            let lo = (d * d + d) / 2;
            let hi = (d * d + 3 * d) / 2;
            for k in lo..=hi {
                assert_eq!(v[k as usize], &a * &Rational::from(d), "a={a} d={d} k={k}");
            }
        }
    }
}

#[test]
fn polydisc_position_bound() {
    for b in [q(1, 1), q(13, 2)] {
        let v = polydisc_capacities(&Rational::one(), &b, &Cutoff::Index(400)).unwrap();
        for (k, m) in v.iter().enumerate() {
            if !m.is_integer() || *m > Rational::from(20) {
                continue;
            }
            let d = m.clone();
            let four_b = &b * &Rational::from(4);
            let bound = &d.square() / &four_b
                + &(&(&Rational::one() + &b) * &d) / &(&b * &Rational::from(2))
                + (&b - &Rational::one()).square() / four_b.clone();
            assert!(Rational::from(k as i64) <= bound, "b={b} k={k} M_k={m}");
        }
    }
}

#[test]
fn ellipsoid_matches_grid_oracle() {
    for (a, b) in [(q(1, 1), q(13, 2)), (q(2, 3), q(5, 7)), (q(1, 1), q(1300, 81))] {
        let lim = Rational::from(12);
        let g = grid(&a, &b, &lim);
        let v = ellipsoid_capacities(&a, &b, &Cutoff::Value(lim)).unwrap();
        assert_eq!(v, g);
    }
}

#[test]
fn polydisc_matches_oracle() {
    for (c, d) in [(q(1, 1), q(13, 2)), (q(10, 9), q(65, 9)), (q(3, 2), q(1, 1))] {
        let v = polydisc_capacities(&c, &d, &Cutoff::Index(300)).unwrap();
        for (k, x) in v.iter().enumerate() {
            assert_eq!(*x, polydisc_brute(&c, &d, k as i64));
        }
    }
}

#[test]
fn sharp_of_balls_shifts_ellipsoid() {
    // (#^l N(1,1)) # N(1, 3/2) = N(1, 3/2 + l)
    let upto = 30;
    let base = ellipsoid_capacities(&q(1, 1), &q(3, 2), &Cutoff::Index(upto)).unwrap();
    let one = ellipsoid_capacities(&q(1, 1), &q(1, 1), &Cutoff::Index(upto)).unwrap();
    let mut acc = base;
    for l in 1..=3i64 {
        acc = sharp_terms(&one, &acc, upto);
        let want = ellipsoid_capacities(&q(1, 1), &(&q(3, 2) + &Rational::from(l)), &Cutoff::Index(upto)).unwrap();
        assert_eq!(acc, want, "l={l}");
    }
}

#[test]
fn continued_fraction_example() {
    let cf: Vec<i64> = continued_fraction(&q(1300, 81)).iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(cf, vec![16, 20, 4]);
}

fn a_in(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (1i64..200).prop_flat_map(move |d| ((d * lo + 1)..=(d * hi)).prop_map(move |n| q(n, d)))
}

fn seq() -> impl Strategy<Value = Vec<Rational>> {
    (a_in(1, 5), a_in(1, 5)).prop_map(|(a, b)| ellipsoid_capacities(&a, &b, &Cutoff::Index(30)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weight_identities(a in a_in(1, 30)) {
        let w = weight_sequence(&a).unwrap();
        prop_assert!(weight_identities_hold(&w));
        let sq: Rational = w.flat().iter().map(|x| x.square()).sum();
        prop_assert_eq!(sq, a.clone());
        let s: Rational = w.flat().into_iter().sum();
        prop_assert_eq!(s, &a + &Rational::one() - Rational::new(1, a.denom().clone()));
    }

    #[test]
    fn sharp_commutes(x in seq(), y in seq()) {
        prop_assert_eq!(sharp_terms(&x, &y, 30), sharp_terms(&y, &x, 30));
    }

    #[test]
    fn sharp_associates(x in seq(), y in seq(), z in seq()) {
        let l = sharp_terms(&sharp_terms(&x, &y, 30), &z, 30);
        let r = sharp_terms(&x, &sharp_terms(&y, &z, 30), 30);
        prop_assert_eq!(l, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn ellipsoid_is_sharp_of_weight_balls(a in a_in(1, 10)) {
        let upto = 30;
        let w = weight_sequence(&a).unwrap();
        let mut acc = vec![Rational::zero()];
        for x in w.flat() {
            acc = sharp_terms(&acc, &ball(&x, upto), upto);
        }
        let n = ellipsoid_capacities(&Rational::one(), &a, &Cutoff::Index(upto)).unwrap();
        prop_assert_eq!(&acc[..], &n[..]);
    }
}
