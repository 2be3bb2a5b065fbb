use polyembed::capacities::weight_sequence;
use polyembed::exceptional::{classify, cremona, positivity_check, product, reduce_class, ClassVector};
use polyembed::{q, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_class(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> ClassVector {
    let n = rng.gen_range(3..=8);
    let head = rng.gen_range(lo..=hi);
    let tail: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    ClassVector::from_ints(head, &tail)
}

fn random_rational_class(rng: &mut ChaCha8Rng) -> ClassVector {
    let n = rng.gen_range(3..=8);
    let mut r = || q(rng.gen_range(-40..=40), rng.gen_range(1..=6));
    let head = r();
    ClassVector::new(head, (0..n).map(|_| r()).collect())
}

/// Rejection-sample until `keep` accepts.
fn sample(rng: &mut ChaCha8Rng, lo: i64, hi: i64, keep: impl Fn(&ClassVector) -> bool) -> ClassVector {
    loop {
        let v = random_class(rng, lo, hi);
        if keep(&v) {
            return v;
        }
    }
}

fn permuted(rng: &mut ChaCha8Rng, v: &ClassVector) -> ClassVector {
    let mut t = v.tail.clone();
    t.shuffle(rng);
    ClassVector::new(v.head.clone(), t)
}

#[test]
fn cremona_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let v = random_rational_class(&mut rng);
        assert_eq!(cremona(&cremona(&v)), v);
    }
}

#[test]
fn cremona_preserves_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let x = random_rational_class(&mut rng);
        let y = random_rational_class(&mut rng);
        assert_eq!(product(&cremona(&x), &cremona(&y)), product(&x, &y), "x={x} y={y}");
    }
}

#[test]
fn cremona_maps_f_and_e_into_themselves() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let f = sample(&mut rng, -3, 6, |v| classify(v).in_f);
        assert!(classify(&cremona(&f)).in_f, "{f}");
        let e = sample(&mut rng, -2, 4, |v| classify(v).in_e);
        assert!(classify(&cremona(&e)).in_e, "{e}");
    }
}

#[test]
fn permutations_preserve_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let v = random_class(&mut rng, -2, 5);
        let f = classify(&v);
        let g = classify(&permuted(&mut rng, &v));
        assert_eq!((f.in_f, f.in_fplus, f.in_e), (g.in_f, g.in_fplus, g.in_e), "{v}");
    }
}

#[test]
fn reduced_classes_pair_nonnegatively_with_f() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 1000 {
        let x = sample(&mut rng, 0, 12, |v| {
            let f = classify(v);
            f.reduced && !product(v, v).is_negative()
        });
        let d = sample(&mut rng, -3, 8, |v| classify(v).in_f && !v.head.is_negative());
        let p = positivity_check(&x, &d);
        assert!(p.constrained);
        assert!(!p.product.is_negative(), "x={x} d={d} product={}", p.product);
        checked += 1;
    }
}

#[test]
fn unconstrained_when_hypotheses_fail() {
    // K lies in F but pairs negatively with reduced classes
    let k = positivity_check(&ClassVector::from_ints(9, &[4, 3, 2]), &ClassVector::from_ints(-3, &[-1, -1, -1]));
    assert!(!k.constrained);
    assert_eq!(k.product, q(-18, 1));
    // (1; 1,1,1) is not reduced
    let p = positivity_check(&ClassVector::from_ints(1, &[1, 1, 1]), &ClassVector::from_ints(0, &[-1]));
    assert!(!p.constrained);
    assert_eq!(positivity_check(&ClassVector::from_ints(3, &[1, 1, 1]), &ClassVector::from_ints(0, &[])).product, q(0, 1));
}

/// ((1+c) lam; c lam, lam, w(a)) scaled to integers.
fn embedding_class(a: &Rational, lam: &Rational, c: &Rational) -> ClassVector {
    let mut tail = vec![c * lam, lam.clone()];
    tail.extend(weight_sequence(a).unwrap().flat());
    let head = &(&Rational::one() + c) * lam;
    let den = tail
        .iter()
        .chain(std::iter::once(&head))
        .fold(num_bigint::BigInt::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let s = Rational::from_int(den);
    ClassVector::new(&head * &s, tail.iter().map(|x| x * &s).collect())
}

#[test]
fn certified_classes_reduce_within_head_steps() {
    let rows = [
        ((25, 2), (1, 1)),
        ((13, 1), (26, 25)),
        ((15, 1), (10, 9)),
        ((1300, 81), (10, 9)),
        ((17, 1), (34, 29)),
        ((19, 1), (38, 31)),
        ((21, 1), (42, 33)),
    ];
    for ((an, ad), (ln, ld)) in rows {
        let v = embedding_class(&q(an, ad), &q(ln, ld), &q(13, 2));
        assert!(!product(&v, &v).is_negative());
        let steps: usize = v.head.to_i64().unwrap() as usize + 1;
        let r = reduce_class(&v, steps).unwrap_or_else(|e| panic!("a={an}/{ad}: {e}"));
        assert!(classify(&r.reduced).reduced);
        assert_eq!(product(&r.reduced, &r.reduced), product(&v, &v));
    }
}

#[test]
fn self_product_minus_two_fails_to_reduce() {
    assert!(reduce_class(&ClassVector::from_ints(1, &[1, 1, 1]), 10).is_err());
    let r = reduce_class(&ClassVector::from_ints(2, &[1, 1, 1, 1]), 10).unwrap();
    assert_eq!(r.reduced, ClassVector::from_ints(1, &[1, 0, 0, 0]));
    assert_eq!(r.steps.len(), 1);
}
