//! Floor-vector perturbation search for the interval [1300/81, 841/52] at c = 13/2.
//!
//! A candidate is a fixed 18-entry head (the two leading entries and the block of
//! sixteen 1-weights, seeded from an approximate floor vector plus one of twelve
//! perturbations) followed by any nonincreasing tail that completes the two sum
//! constraints. A structural filter then discards tails incompatible with the
//! block shape of the weight vector.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::weights::below_sqrt;

const HEAD: usize = 18;

type Parts = Rc<Vec<Vec<i64>>>;

/// Nonincreasing positive parts bounded by `cap` with sum `a` and square sum `b`.
#[derive(Default)]
pub struct PartitionCache {
    memo: HashMap<(i64, i64, i64), Parts>,
}

impl PartitionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solutions(&mut self, a: i64, b: i64, cap: i64) -> Parts {
        if let Some(v) = self.memo.get(&(a, b, cap)) {
            return v.clone();
        }
        let out = self.compute(a, b, cap);
        let rc = Rc::new(out);
        self.memo.insert((a, b, cap), rc.clone());
        rc
    }

    fn compute(&mut self, a: i64, b: i64, cap: i64) -> Vec<Vec<i64>> {
        if a * a < b {
            return Vec::new();
        }
        if a * a == b {
            return if a > cap { Vec::new() } else { vec![vec![a]] };
        }
        let mut set = BTreeSet::new();
        let top = isqrt(b).min(cap);
        for i in 1..=top {
            for k in self.solutions(a - i, b - i * i, i).iter() {
                let mut v = Vec::with_capacity(k.len() + 1);
                v.push(i);
                v.extend_from_slice(k);
                set.insert(v);
            }
        }
        set.into_iter().collect()
    }

    /// Every completion of `head` by a nonempty tail with sum `a` and square sum `b`.
    pub fn completions(&mut self, a: i64, b: i64, head: &[i64]) -> Vec<Vec<i64>> {
        if a < 0 || b < 0 {
            return Vec::new();
        }
        let cap = a.min(isqrt(b));
        if a * a < b {
            return Vec::new();
        }
        if a * a == b {
            if a > cap || a == 0 {
                return Vec::new();
            }
            let mut v = head.to_vec();
            v.push(a);
            return vec![v];
        }
        let mut out = Vec::new();
        for i in 1..=isqrt(b).min(cap) {
            for k in self.solutions(a - i, b - i * i, i).iter() {
                let mut v = head.to_vec();
                v.push(i);
                v.extend_from_slice(k);
                out.push(v);
            }
        }
        out
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Approximate floor vector: (13d/15, 2d/15, round(2d/(15 sqrt(16.1/13))) x 16).
pub fn seed(d: i64) -> [i64; HEAD] {
    let a3 = ((2 * d) as f64 / 15.0 / (16.1f64 / 13.0).sqrt()).round_ties_even() as i64;
    let mut v = [a3; HEAD];
    v[0] = d * 13 / 15;
    v[1] = d * 2 / 15;
    v
}

/// The twelve head perturbations.
pub fn perturbations() -> Vec<[i64; HEAD]> {
    let unit = |pos: usize, val: i64| {
        let mut t = [0i64; HEAD];
        t[pos] = val;
        t
    };
    let add = |xs: &[[i64; HEAD]]| {
        let mut t = [0i64; HEAD];
        for x in xs {
            for i in 0..HEAD {
                t[i] += x[i];
            }
        }
        t
    };
    let z = [0i64; HEAD];
    let (t1, t2, t3, t4) = (unit(0, 1), unit(1, 1), unit(2, 1), unit(HEAD - 1, -1));
    vec![
        z,
        t3,
        t4,
        t1,
        add(&[t1, t3]),
        add(&[t1, t4]),
        t2,
        add(&[t2, t3]),
        add(&[t2, t4]),
        add(&[t1, t2]),
        add(&[t1, t2, t3]),
        add(&[t1, t2, t4]),
    ]
}

/// All seeded candidates of degree d.
pub fn seeded_candidates(cache: &mut PartitionCache, d: i64) -> Vec<Vec<i64>> {
    let base = seed(d);
    let mut out = Vec::new();
    for p in perturbations() {
        let head: Vec<i64> = base.iter().zip(p.iter()).map(|(a, b)| a + b).collect();
        let s: i64 = head.iter().sum();
        let s2: i64 = head.iter().map(|x| x * x).sum();
        out.extend(cache.completions(3 * d - 1 - s, d * d + 1 - s2, &head));
    }
    out
}

/// Structural filter on the tail following the 16-block.
pub fn structural_filter(t: &[i64]) -> bool {
    let n = t.len();
    if t[1] < t[2] {
        return false;
    }
    if n >= 19 && t[17] < t[18] {
        return false;
    }
    if n >= 20 && !(n >= 22 && t[18] <= t[19] + 1) {
        return false;
    }
    if n >= 21 && t[19] != t[20] {
        return false;
    }
    if n >= 22 && t[19] != t[21] {
        return false;
    }
    if n >= 23 && t[21] > t[22] + 1 {
        return false;
    }
    // entry before the second block against the run of near-equal entries after it
    let mut k = 0usize;
    let mut v = t[17];
    while n > 18 + k && t[18 + k] + 1 >= t[18] {
        v -= t[18 + k];
        k += 1;
    }
    below_sqrt(v, k as i64 + 2)
}

/// Seeded candidates for every d in 2..=d_max passing the structural filter,
/// deduplicated and sorted by (d, m). Also returns the raw count before filtering.
pub fn seeded_search(d_max: i64) -> (usize, Vec<(i64, Vec<i64>)>) {
    let mut cache = PartitionCache::new();
    let mut raw = 0usize;
    let mut kept = BTreeSet::new();
    for d in 2..=d_max {
        let cands = seeded_candidates(&mut cache, d);
        raw += cands.len();
        for c in cands {
            if structural_filter(&c) {
                kept.insert((d, c));
            }
        }
    }
    (raw, kept.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        let mut c = PartitionCache::new();
        // sum 4, square sum 6: (2, 1, 1)
        assert_eq!(&*c.solutions(4, 6, 4), &vec![vec![2, 1, 1]]);
        assert_eq!(&*c.solutions(3, 9, 3), &vec![vec![3]]);
        assert!(c.solutions(3, 9, 2).is_empty());
        assert!(c.completions(0, 0, &[1]).is_empty());
    }

    #[test]
    fn every_candidate_meets_sums() {
        let mut c = PartitionCache::new();
        for d in 2..40 {
            for v in seeded_candidates(&mut c, d) {
                assert_eq!(v.iter().sum::<i64>(), 3 * d - 1);
                assert_eq!(v.iter().map(|x| x * x).sum::<i64>(), d * d + 1);
                assert!(v.len() > HEAD);
            }
        }
    }

    #[test]
    fn seed_values() {
        let s = seed(9);
        assert_eq!(s[0], 7);
        assert_eq!(s[1], 1);
        assert_eq!(s[2], 1);
    }
}
