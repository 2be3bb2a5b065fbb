use std::cmp::Ordering;

use polyembed::obstruction::{
    backtrack_candidates, enumerate_candidates, preset, search_point, verify_interval, GeneralizedWeight, SearchOptions,
};
use polyembed::{q, QuadExt, Rational};

/// Every nonnegative m with the two sum constraints, nonincreasing inside each
/// block of equal weights.
fn all_classes(gw: &GeneralizedWeight, d: i64) -> Vec<Vec<i64>> {
    let n = gw.len();
    let mut same_as_prev = vec![false; n];
    for &(s, l) in &gw.blocks {
        for i in s + 1..s + l {
            same_as_prev[i] = true;
        }
    }
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    fn go(i: usize, left: i64, sq: i64, m: &mut Vec<i64>, same: &[bool], out: &mut Vec<Vec<i64>>) {
        if i == m.len() {
            if left == 0 && sq == 0 {
                out.push(m.clone());
            }
            return;
        }
        let cap = if same[i] { m[i - 1].min(left) } else { left };
        for v in 0..=cap {
            if v * v > sq {
                break;
            }
            m[i] = v;
            go(i + 1, left - v, sq - v * v, m, same, out);
        }
        m[i] = 0;
    }
    go(0, 3 * d - 1, d * d + 1, &mut m, &same_as_prev, &mut out);
    out
}

/// Is L*lam + R > B*lam, with lam = sqrt(s), decided over the rationals.
fn exceeds(l: &Rational, r: &Rational, b: &Rational, s: &Rational) -> bool {
    // sign of R - k lam
    let k = b - l;
    let k2s = &k.square() * s;
    if k.is_positive() {
        r.is_positive() && r.square() > k2s
    } else if r.is_negative() {
        k2s > r.square()
    } else {
        r.is_positive() || k.is_negative()
    }
}

fn obstructs(a: &Rational, c: &Rational, w: &[Rational], d: i64, m: &[i64]) -> bool {
    let l = &(c * &Rational::from(m[0])) + &Rational::from(m[1]);
    let r: Rational = m[2..].iter().zip(w).map(|(&mi, wi)| wi * &Rational::from(mi)).sum();
    let b = &(c + &Rational::one()) * &Rational::from(d);
    exceeds(&l, &r, &b, &(a / &(c * &Rational::from(2))))
}

fn samples() -> Vec<Rational> {
    vec![q(6, 1), q(13, 2), q(7, 1), q(9, 1), q(21, 2), q(12, 1), q(13, 1), q(14, 1)]
}

#[test]
fn enumeration_matches_independent_oracle() {
    let c = q(13, 2);
    let mut seen = 0;
    for a in samples() {
        let gw = GeneralizedWeight::new(&a, &c).unwrap();
        for d in 1..=6 {
            let want: Vec<Vec<i64>> =
                all_classes(&gw, d).into_iter().filter(|m| obstructs(&a, &c, &gw.tail, d, m)).collect();
            let mut got = enumerate_candidates(&gw, d);
            got.sort();
            let mut want = want;
            want.sort();
            assert_eq!(got, want, "a={a} d={d}");
            seen += got.len();
        }
    }
    assert!(seen > 0, "no obstructive classes at all in the samples");
}

#[test]
fn exact_enumeration_matches_backtracking() {
    let c = q(13, 2);
    for a in [q(25, 2), q(33, 2), q(1300, 81), q(31, 2), q(40, 3)] {
        let gw = GeneralizedWeight::new(&a, &c).unwrap();
        for d in 1..=9 {
            let mut x = enumerate_candidates(&gw, d);
            let mut y = backtrack_candidates(&gw, d);
            x.sort();
            y.sort();
            assert_eq!(x, y, "a={a} d={d}");
        }
    }
}

#[test]
fn class_invariants() {
    let c = q(13, 2);
    for a in samples() {
        let gw = GeneralizedWeight::new(&a, &c).unwrap();
        let bound = gw.bound();
        let one_c = &c + &Rational::one();
        let qd = Rational::from_int(a.denom().clone());
        for d in 1..=5 {
            let dr = Rational::from(d);
            for m in all_classes(&gw, d) {
                assert!(m.iter().all(|&x| x >= 0));
                assert_eq!(m.iter().sum::<i64>(), 3 * d - 1);
                assert_eq!(m.iter().map(|x| x * x).sum::<i64>(), d * d + 1);
                // mu^2 <= (1+c)^2 lam^2 (1 + 1/d^2)
                let mu = gw.mu(d, &m);
                let cap = &(&one_c.square() * &(&a / &(&c * &Rational::from(2)))) * &(Rational::one() + Rational::new(1, d * d));
                if !mu.is_negative() {
                    assert_ne!(mu.square().partial_cmp(&QuadExt::from(cap)), Some(Ordering::Greater), "a={a} d={d} m={m:?}");
                }
                // -sum eps = 1 + d/((1+c) lam) (y - 1/q)
                let mut sum = QuadExt::zero();
                for (i, &mi) in m.iter().enumerate() {
                    let x = &gw.entry(i).scale(&dr) / &bound;
                    sum = &sum + &(-x).add_rational(&Rational::from(mi));
                }
                let y = (-bound.scale(&Rational::from(2))).add_rational(&(&a + &Rational::one()));
                let rhs = (&y.add_rational(&-qd.recip().unwrap()).scale(&dr) / &bound).add_rational(&Rational::one());
                assert_eq!(-sum, rhs, "a={a} d={d} m={m:?}");
                assert!(m.len() <= gw.len());
            }
        }
    }
}

#[test]
fn survivors_are_full_length() {
    let c = q(13, 2);
    for a in [q(1301, 81), q(49, 3), q(65, 4)] {
        let r = search_point(&a, &c).unwrap();
        let gw = GeneralizedWeight::new(&a, &c).unwrap();
        for s in &r.survivors {
            assert!(s.m.len() <= gw.len());
            assert_ne!(*s.m.last().unwrap(), 0);
        }
        assert!(r.counts.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn output_independent_of_thread_count() {
    let p = preset("5.3").unwrap();
    let one = verify_interval(&p, &SearchOptions { threads: Some(1), journal: None }).unwrap();
    let four = verify_interval(&p, &SearchOptions { threads: Some(4), journal: None }).unwrap();
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
    assert!(one.no_survivors());
}

#[test]
fn journal_resume_gives_same_report() {
    let dir = std::env::temp_dir().join(format!("polyembed-journal-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("search.jsonl");
    let _ = std::fs::remove_file(&path);
    let p = preset("5.2").unwrap();
    let fresh = verify_interval(&p, &SearchOptions { threads: Some(2), journal: None }).unwrap();
    let first = verify_interval(&p, &SearchOptions { threads: Some(2), journal: Some(&path) }).unwrap();

    // keep half the lines and leave a torn record at the end
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() > 2);
    let mut cut = lines[..lines.len() / 2].join("\n");
    cut.push('\n');
    cut.push_str(&lines[lines.len() / 2][..10]);
    std::fs::write(&path, cut).unwrap();

    let resumed = verify_interval(&p, &SearchOptions { threads: Some(3), journal: Some(&path) }).unwrap();
    let js = |r| serde_json::to_string(r).unwrap();
    assert_eq!(js(&fresh), js(&first));
    assert_eq!(js(&fresh), js(&resumed));
    // a third run finds every point in the journal
    let again = std::fs::read_to_string(&path).unwrap();
    let parsed = again.lines().filter(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()).count();
    assert_eq!(parsed, fresh.points);
    std::fs::remove_dir_all(&dir).unwrap();
}
