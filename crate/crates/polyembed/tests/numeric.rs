use std::cmp::Ordering;

use polyembed::numeric::{quad_compare, quad_sqrt_of_rational};
use polyembed::{q, QuadExt, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| q(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..5000, 1i64..300).prop_map(|(n, d)| q(n, d))
}

/// Elements of the single field Q(sqrt(7)).
fn in_field() -> impl Strategy<Value = QuadExt> {
    (rational(), rational(), 1i64..6).prop_map(|(r, c, s)| {
        // sqrt(7 s^2) = s sqrt(7)
        QuadExt::new(r, c, &Rational::from(7 * s * s)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sqrt_squares_back(x in positive()) {
        let s = quad_sqrt_of_rational(&x).unwrap();
        prop_assert_eq!(s.square().as_rational().cloned(), Some(x));
        prop_assert!(s.is_positive());
    }

    #[test]
    fn compare_is_antisymmetric(u in in_field(), v in in_field()) {
        let a = quad_compare(&u, &v).unwrap();
        let b = quad_compare(&v, &u).unwrap();
        prop_assert_eq!(a, b.reverse());
        prop_assert_eq!(a == Ordering::Equal, u == v);
    }

    #[test]
    fn compare_is_transitive(u in in_field(), v in in_field(), w in in_field()) {
        let mut xs = [u, v, w];
        xs.sort_by(|a, b| quad_compare(a, b).unwrap());
        prop_assert!(xs[0] <= xs[2]);
        prop_assert!(quad_compare(&xs[0], &xs[1]).unwrap() != Ordering::Greater);
        prop_assert!(quad_compare(&xs[1], &xs[2]).unwrap() != Ordering::Greater);
    }

    #[test]
    fn compare_agrees_with_floats(u in in_field(), v in in_field()) {
        let (fu, fv) = (u.to_f64(), v.to_f64());
        if (fu - fv).abs() > 1e-6 {
            prop_assert_eq!(quad_compare(&u, &v).unwrap(), fu.partial_cmp(&fv).unwrap());
        }
    }

    #[test]
    fn field_operations(u in in_field(), v in in_field()) {
        let s = u.checked_add(&v).unwrap();
        prop_assert_eq!(s.checked_sub(&v).unwrap(), u.clone());
        if !v.is_zero() {
            let p = u.checked_mul(&v).unwrap();
            prop_assert_eq!(p.checked_div(&v).unwrap(), u);
        }
    }

    #[test]
    fn normalising_twice(r in rational(), c in rational(), n in 1i64..2000, d in 1i64..50) {
        let disc = q(n, d);
        let once = QuadExt::new(r, c, &disc).unwrap();
        let d2 = Rational::from_int(once.disc().clone());
        let twice = QuadExt::new(once.rat().clone(), once.coeff().clone(), &d2).unwrap();
        prop_assert_eq!(once.disc(), twice.disc());
        prop_assert_eq!(once.coeff(), twice.coeff());
        prop_assert_eq!(once.rat(), twice.rat());
    }

    #[test]
    fn floor_brackets(u in in_field()) {
        let f = Rational::from_int(u.floor());
        prop_assert!(QuadExt::from(&f) <= u);
        prop_assert!(u < QuadExt::from(&f + &Rational::one()));
    }

    #[test]
    fn text_round_trip(u in in_field()) {
        let back: QuadExt = u.to_string().parse().unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn rational_round_trip(r in rational()) {
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn incompatible_fields() {
    let a = QuadExt::sqrt_of(&q(2, 1)).unwrap();
    let b = QuadExt::sqrt_of(&q(3, 1)).unwrap();
    assert!(quad_compare(&a, &b).is_err());
    assert!(a.checked_add(&b).is_err());
    // sqrt(8) and sqrt(2) share a field
    let c = QuadExt::sqrt_of(&q(8, 1)).unwrap();
    assert_eq!(quad_compare(&a, &c).unwrap(), Ordering::Less);
}

#[test]
fn parser_rejects_decimals() {
    assert!("1.5".parse::<Rational>().is_err());
    assert!("3/0".parse::<Rational>().is_err());
    assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
}
