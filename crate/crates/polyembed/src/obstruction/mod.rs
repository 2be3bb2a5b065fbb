//! Search for obstructive classes (d; m) against generalized weight vectors.
//!
//! A class obstructs at a when mu(d; m)(a) = m . w(a) / d exceeds (1+c) lam.
//! The search runs over every a0 = p/q of an interval with bounded q, enumerates
//! all such classes for each admissible d, and filters them through block-shape
//! conditions that every genuine exceptional class satisfies.

mod appendix;
mod enumerate;
mod journal;
mod weights;

use std::path::Path;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use appendix::{seeded_candidates, seeded_search, structural_filter, PartitionCache};
pub use enumerate::{backtrack_candidates, enumerate_candidates};
pub use journal::Journal;
pub use weights::{epsilon_stats, fractions_in, min_denominator, pq, EpsilonStats, GeneralizedWeight};

use weights::{abs_below_sqrt, below_sqrt};

use crate::error::{Error, Result};
use crate::numeric::{q, QuadExt, Rational};

/// Which block condition a candidate violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockViolation {
    /// A block is neither constant nor constant up to one unit at an end.
    BlockShape,
    /// More than one block is not constant.
    SeveralUnevenBlocks,
    /// An uneven block carries too little epsilon mass.
    UnevenBlockEpsilon,
    /// Entry before a block differs too much from the block sum (plus the next entry).
    AdjacentBlockSum,
    /// Entry before a block exceeds the whole remaining tail by too much.
    TailSum,
}

impl BlockViolation {
    pub fn name(self) -> &'static str {
        match self {
            BlockViolation::BlockShape => "block-shape",
            BlockViolation::SeveralUnevenBlocks => "several-uneven-blocks",
            BlockViolation::UnevenBlockEpsilon => "uneven-block-epsilon",
            BlockViolation::AdjacentBlockSum => "adjacent-block-sum",
            BlockViolation::TailSum => "tail-sum",
        }
    }
}

/// Check the block conditions of m (length at most l(a)) against the block structure of w(a).
pub fn block_filter(gw: &GeneralizedWeight, d: i64, m: &[i64]) -> std::result::Result<(), BlockViolation> {
    let big_m = gw.len();
    let mut v = m.to_vec();
    v.resize(big_m, 0);
    let eps = gw.epsilon(d, &v);
    let mut uneven = 0;
    for &(st, s) in &gw.blocks {
        if s < 2 {
            continue;
        }
        let seg = &v[st..st + s];
        if seg.iter().all(|&x| x == seg[0]) {
            continue;
        }
        uneven += 1;
        let last_low = seg[..s - 1].iter().all(|&x| x == seg[0]) && seg[s - 1] + 1 == seg[0];
        let first_high = seg[1..].iter().all(|&x| x == seg[1]) && seg[0] == seg[1] + 1;
        if !(last_low || first_high) {
            return Err(BlockViolation::BlockShape);
        }
        let mass = eps[st..st + s].iter().fold(QuadExt::zero(), |a, e| &a + &e.square());
        if mass < QuadExt::from(Rational::new(s as i64 - 1, s as i64)) {
            return Err(BlockViolation::UnevenBlockEpsilon);
        }
    }
    if uneven > 1 {
        return Err(BlockViolation::SeveralUnevenBlocks);
    }
    let nb = gw.blocks.len();
    for (j, &(st, s)) in gw.blocks.iter().enumerate().skip(1) {
        let k = st - 1;
        let last = j == nb - 1;
        let span = if last { s } else { s + 1 };
        let diff = v[k] - v[st..st + span].iter().sum::<i64>();
        let lim = if last { s + 1 } else { s + 2 } as i64;
        if !abs_below_sqrt(diff, lim) {
            return Err(BlockViolation::AdjacentBlockSum);
        }
        let rest = v[k] - v[st..].iter().sum::<i64>();
        if !below_sqrt(rest, (big_m - st + 1) as i64) {
            return Err(BlockViolation::TailSum);
        }
    }
    Ok(())
}

/// Lower bound on delta(q) = y(a) - 1/q over an interval, in one of two displayed forms.
#[derive(Clone, Debug)]
pub struct IntervalPreset {
    pub name: &'static str,
    pub lo: Rational,
    pub hi: Rational,
    pub c: Rational,
    /// delta(q) = delta_base - (1/q if subtract_inv_q).
    pub delta_base: QuadExt,
    pub subtract_inv_q: bool,
    /// Constant F in sqrt(q + F) >= 1 + delta(q) q / 3.
    pub f: i64,
    /// Smallest denominator used for the global d bound.
    pub q_lower: i64,
}

impl IntervalPreset {
    /// Default form: delta from the left endpoint, F = floor(hi) + 2.
    pub fn from_left_endpoint(name: &'static str, lo: Rational, hi: Rational, c: Rational) -> Result<Self> {
        let y = y_of(&lo, &c)?;
        let f = (hi.floor() + 2i32).to_i64().ok_or_else(|| Error::Domain("interval too large".into()))?;
        let q_lower = min_denominator(&lo, &hi);
        Ok(IntervalPreset { name, lo, hi, c, delta_base: y, subtract_inv_q: true, f, q_lower })
    }

    pub fn delta(&self, qd: i64) -> QuadExt {
        if self.subtract_inv_q {
            self.delta_base.add_rational(&-Rational::new(1, qd))
        } else {
            self.delta_base.clone()
        }
    }
}

fn y_of(a: &Rational, c: &Rational) -> Result<QuadExt> {
    let lam = QuadExt::sqrt_of(&(a / &(c * &Rational::from(2))))?;
    let k = (c + &Rational::one()) * Rational::from(2);
    Ok((-lam.scale(&k)).add_rational(&(a + &Rational::one())))
}

/// The four intervals on which d(a, 13/2) is shown to equal the volume bound.
pub fn presets() -> Vec<IntervalPreset> {
    let c = q(13, 2);
    let mut out = Vec::new();
    // delta lower bounds read off at the left endpoint, where lam is rational
    out.push(IntervalPreset {
        name: "5.1",
        lo: q(1300, 81),
        hi: q(841, 52),
        c: c.clone(),
        delta_base: QuadExt::from(q(31, 81)),
        subtract_inv_q: true,
        f: 18,
        q_lower: 5,
    });
    out.push(IntervalPreset {
        name: "5.2",
        lo: q(15028, 841),
        hi: q(961, 52),
        c: c.clone(),
        delta_base: QuadExt::from(q(1079, 841)),
        subtract_inv_q: true,
        f: 19,
        q_lower: 1,
    });
    out.push(IntervalPreset {
        name: "5.3",
        lo: q(18772, 961),
        hi: q(1089, 52),
        c: c.clone(),
        delta_base: QuadExt::from(q(2063, 961)),
        subtract_inv_q: true,
        f: 21,
        q_lower: 1,
    });
    let root = QuadExt::sqrt_of(&q(21, 13)).expect("positive");
    out.push(IntervalPreset {
        name: "5.4",
        lo: q(2548, 121),
        hi: q(27, 1),
        c,
        delta_base: (-root.scale(&q(15, 1))).add_rational(&q(21, 1)),
        subtract_inv_q: false,
        f: 29,
        q_lower: 1,
    });
    out
}

pub fn preset(name: &str) -> Option<IntervalPreset> {
    presets().into_iter().find(|p| p.name == name)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalBounds {
    pub q_max: i64,
    pub d_max: i64,
    /// Per-denominator bound on d with lam maximized over the interval.
    pub d_max_by_q: Vec<(i64, i64)>,
}

/// Largest q with sqrt(q + F) >= 1 + delta(q) q / 3, and the resulting bounds on d.
pub fn interval_bounds_for(p: &IntervalPreset) -> Result<IntervalBounds> {
    let dmin = p.delta(p.q_lower);
    if !dmin.is_positive() {
        return Err(Error::Hypotheses(format!("delta <= 0 on [{}, {}]", p.lo, p.hi)));
    }
    // sqrt(q+F) - 1 - delta(q) q/3 is concave in q, so the admissible q form an initial run
    let mut q_max = 0;
    for qd in 1..1_000_000i64 {
        let rhs = p.delta(qd).scale(&Rational::new(qd, 3)).add_rational(&Rational::one());
        if rhs.cmp_sqrt(&Rational::from(qd + p.f)) == std::cmp::Ordering::Greater {
            break;
        }
        q_max = qd;
    }
    let lam2 = &p.hi / &(&p.c * &Rational::from(2));
    let (_, lam_hi) = lam2.sqrt_bounds(48);
    let one_c = &p.c + &Rational::one();
    let bound_at = |qd: i64, delta: &QuadExt| -> Result<i64> {
        let (delta_lo, _) = rational_bracket(delta);
        if !delta_lo.is_positive() {
            return Err(Error::Hypotheses(format!("delta <= 0 at q = {qd}")));
        }
        let (_, s_hi) = Rational::from(q_max + p.f).sqrt_bounds(48);
        let ub = &(&one_c * &lam_hi) / &delta_lo * (s_hi - Rational::one());
        Ok(ub.floor().to_i64().unwrap_or(i64::MAX))
    };
    let d_max = bound_at(p.q_lower, &dmin)?;
    let mut d_max_by_q = Vec::new();
    for qd in p.q_lower..=q_max {
        let dq = p.delta(qd);
        if dq.is_positive() {
            d_max_by_q.push((qd, bound_at(qd, &dq)?));
        }
    }
    Ok(IntervalBounds { q_max, d_max, d_max_by_q })
}

/// Generic form: delta from the left endpoint and F = floor_a + 2.
pub fn interval_bounds(lo: &Rational, hi: &Rational, c: &Rational, floor_a: i64) -> Result<IntervalBounds> {
    let mut p = IntervalPreset::from_left_endpoint("custom", lo.clone(), hi.clone(), c.clone())?;
    p.f = floor_a + 2;
    interval_bounds_for(&p)
}

/// Rational bracket around a field element, tight to about 2^-40.
fn rational_bracket(x: &QuadExt) -> (Rational, Rational) {
    if let Some(r) = x.as_rational() {
        return (r.clone(), r.clone());
    }
    let y = x.coeff().square() * Rational::from_int(x.disc().clone());
    let (lo, hi) = y.sqrt_bounds(40);
    if x.coeff().is_positive() {
        (x.rat() + &lo, x.rat() + &hi)
    } else {
        (x.rat() - &hi, x.rat() - &lo)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate {
    pub q: i64,
    pub p: i64,
    pub d: i64,
    pub m: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FilterCount {
    pub name: String,
    pub survivors: usize,
}

/// Outcome of one a0: stage counts and the classes left at the end.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointResult {
    pub p: i64,
    pub q: i64,
    pub d_max: i64,
    pub counts: Vec<usize>,
    pub rejected: Vec<(Candidate, String)>,
    pub survivors: Vec<Candidate>,
}

pub const STAGES: [&str; 4] = ["obstructive", "full-length", "epsilon-identities", "block-conditions"];

/// Enumerate and filter every class for one a0.
pub fn search_point(a0: &Rational, c: &Rational) -> Result<PointResult> {
    let gw = GeneralizedWeight::new(a0, c)?;
    let d_max = gw.d_bound()?;
    let (p, qd) = pq(a0);
    let mut counts = vec![0usize; STAGES.len()];
    let mut rejected = Vec::new();
    let mut survivors = Vec::new();
    for d in 1..=d_max {
        for m in enumerate_candidates(&gw, d) {
            counts[0] += 1;
            let cand = Candidate { q: qd, p, d, m: m.clone() };
            if *m.last().expect("nonempty") == 0 {
                continue;
            }
            counts[1] += 1;
            let st = epsilon_stats(&gw, d, &m);
            if !(st.identity_holds && st.sum_identity_holds && st.sum_sq < QuadExt::one()) {
                rejected.push((cand, "epsilon-identities".to_string()));
                continue;
            }
            counts[2] += 1;
            match block_filter(&gw, d, &m) {
                Ok(()) => {
                    counts[3] += 1;
                    survivors.push(cand);
                }
                Err(v) => rejected.push((cand, v.name().to_string())),
            }
        }
    }
    Ok(PointResult { p, q: qd, d_max, counts, rejected, survivors })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalReport {
    pub interval: (Rational, Rational),
    pub c: Rational,
    pub q_max: i64,
    pub d_max: i64,
    pub points: usize,
    pub filters_applied: Vec<FilterCount>,
    pub candidates_found: Vec<Candidate>,
    pub rejected: Vec<(Candidate, String)>,
}

impl IntervalReport {
    pub fn no_survivors(&self) -> bool {
        self.candidates_found.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions<'a> {
    pub threads: Option<usize>,
    pub journal: Option<&'a Path>,
}

/// Run the search over every a0 = p/q in (lo, hi] with q <= q_max.
pub fn verify_interval(p: &IntervalPreset, opts: &SearchOptions) -> Result<IntervalReport> {
    let bounds = interval_bounds_for(p)?;
    let points = fractions_in(&p.lo, &p.hi, bounds.q_max);
    let key = format!("{}..{}@{}", p.lo, p.hi, p.c);
    let journal = match opts.journal {
        Some(path) => Some(Journal::open(path, &key)?),
        None => None,
    };
    let work = |a0: &Rational| -> Result<PointResult> {
        let (pp, qq) = pq(a0);
        if let Some(j) = &journal {
            if let Some(done) = j.lookup(pp, qq) {
                return Ok(done);
            }
        }
        let r = search_point(a0, &p.c)?;
        if let Some(j) = &journal {
            j.record(&r)?;
        }
        Ok(r)
    };
    let run = || points.par_iter().map(work).collect::<Result<Vec<_>>>();
    let mut results = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    results.sort_by_key(|r| (r.q, r.p));
    let mut totals = vec![0usize; STAGES.len()];
    let mut found = Vec::new();
    let mut rejected = Vec::new();
    for r in results {
        for (t, c) in totals.iter_mut().zip(&r.counts) {
            *t += c;
        }
        found.extend(r.survivors);
        rejected.extend(r.rejected);
    }
    found.sort();
    rejected.sort();
    Ok(IntervalReport {
        interval: (p.lo.clone(), p.hi.clone()),
        c: p.c.clone(),
        q_max: bounds.q_max,
        d_max: bounds.d_max,
        points: points.len(),
        filters_applied: STAGES
            .iter()
            .zip(totals)
            .map(|(n, s)| FilterCount { name: n.to_string(), survivors: s })
            .collect(),
        candidates_found: found,
        rejected,
    })
}

/// Trail of the floor-seeded search on [1300/81, 841/52]: seeded candidates that
/// pass the structural filter, those compatible with the block conditions at some
/// a0 of matching length, and those among them that actually obstruct there.
#[derive(Clone, Debug, Serialize)]
pub struct SeededTrail {
    pub d_max: i64,
    pub raw: usize,
    pub structural: Vec<(i64, Vec<i64>)>,
    pub block_compatible: Vec<(i64, Vec<i64>, Vec<Rational>)>,
    pub obstructive: Vec<(i64, Vec<i64>, Rational)>,
}

impl SeededTrail {
    pub fn counts(&self) -> [usize; 3] {
        [self.structural.len(), self.block_compatible.len(), self.obstructive.len()]
    }
}

pub fn seeded_trail(p: &IntervalPreset, d_max: i64, q_max: i64) -> Result<SeededTrail> {
    let (raw, structural) = seeded_search(d_max);
    let points = fractions_in(&p.lo, &p.hi, q_max);
    let weights: Vec<GeneralizedWeight> =
        points.iter().map(|a| GeneralizedWeight::new(a, &p.c)).collect::<Result<_>>()?;
    let mut block_compatible = Vec::new();
    let mut obstructive = Vec::new();
    for (d, m) in &structural {
        let mut ok_at = Vec::new();
        for gw in weights.iter().filter(|g| g.len() == m.len()) {
            if block_filter(gw, *d, m).is_ok() {
                ok_at.push(gw.a.clone());
                if gw.mu(*d, m) > gw.bound() {
                    obstructive.push((*d, m.clone(), gw.a.clone()));
                }
            }
        }
        if !ok_at.is_empty() {
            block_compatible.push((*d, m.clone(), ok_at));
        }
    }
    Ok(SeededTrail { d_max, raw, structural, block_compatible, obstructive })
}


#[cfg(test)]
mod known_obstruction {
    use super::*;

    #[test]
    fn found_above_volume() {
        // d(33/2, 13/2) = 33/29 exceeds the volume bound; the class lives at length l(17)
        let gw = GeneralizedWeight::new(&q(33, 2), &q(13, 2)).unwrap();
        let mut want = vec![8, 1];
        want.extend(std::iter::repeat(1).take(17));
        want.push(0);
        assert_eq!(enumerate_candidates(&gw, 9), vec![want]);
        let r = search_point(&q(33, 2), &q(13, 2)).unwrap();
        assert_eq!(r.counts, vec![1, 0, 0, 0]);
    }
}
