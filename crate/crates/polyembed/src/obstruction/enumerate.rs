use num_traits::ToPrimitive;

use super::weights::GeneralizedWeight;

/// A unit of equal centers: a singleton slot or a constant block.
struct Unit {
    start: usize,
    len: usize,
    floor: i64,
    /// Whether floor + 1 lies strictly within distance 1 of the center.
    can_raise: bool,
}

fn units(gw: &GeneralizedWeight, d: i64) -> Vec<Unit> {
    let x = gw.centers(d);
    let mut spans = vec![(0usize, 1usize), (1, 1)];
    spans.extend(gw.blocks.iter().copied());
    spans
        .into_iter()
        .map(|(start, len)| {
            let c = &x[start];
            let floor = c.floor().to_i64().expect("small center");
            let exact = c.as_rational().map(|r| r.is_integer()).unwrap_or(false);
            Unit { start, len, floor, can_raise: !exact }
        })
        .collect()
}

/// All m with sum 3d - 1, square sum d^2 + 1 and mu(d; m) > (1+c) lam.
///
/// Such m satisfy sum (m_i - x_i)^2 < 1, so each m_i is floor(x_i) or
/// floor(x_i) + 1; within a block the raised entries come first.
pub fn enumerate_candidates(gw: &GeneralizedWeight, d: i64) -> Vec<Vec<i64>> {
    assert!(d >= 1);
    let us = units(gw, d);
    let base_sum: i64 = us.iter().map(|u| u.floor * u.len as i64).sum();
    let base_sq: i64 = us.iter().map(|u| u.floor * u.floor * u.len as i64).sum();
    let need_j = 3 * d - 1 - base_sum;
    let need_s = d * d + 1 - base_sq;
    if need_j < 0 || need_s < 0 {
        return Vec::new();
    }
    // raising j entries of a unit adds j to the sum and j(2f + 1) to the square sum
    let mut out = Vec::new();
    let mut picks = vec![0usize; us.len()];
    let max_rest: Vec<i64> = (0..=us.len())
        .map(|i| us[i..].iter().filter(|u| u.can_raise).map(|u| u.len as i64).sum())
        .collect();
    fn rec(
        i: usize,
        j: i64,
        s: i64,
        us: &[Unit],
        max_rest: &[i64],
        picks: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if j < 0 || s < 0 || j > max_rest[i] {
            return;
        }
        if i == us.len() {
            if j == 0 && s == 0 {
                out.push(picks.to_vec());
            }
            return;
        }
        let u = &us[i];
        let top = if u.can_raise { u.len } else { 0 };
        for k in 0..=top {
            picks[i] = k;
            rec(i + 1, j - k as i64, s - k as i64 * (2 * u.floor + 1), us, max_rest, picks, out);
        }
        picks[i] = 0;
    }
    let mut raw = Vec::new();
    rec(0, need_j, need_s, &us, &max_rest, &mut picks, &mut raw);
    let bound = gw.bound();
    for pick in raw {
        let mut m = vec![0i64; gw.len()];
        for (u, &k) in us.iter().zip(&pick) {
            for t in 0..u.len {
                m[u.start + t] = u.floor + i64::from(t < k);
            }
        }
        if m.iter().any(|&v| v < 0) {
            continue;
        }
        if gw.mu(d, &m) > bound {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Exhaustive search over nonnegative m (nonincreasing within each block) with
/// the two sum constraints, keeping those with mu(d; m) > (1+c) lam.
/// Exponential; meant for cross-checking small cases.
pub fn backtrack_candidates(gw: &GeneralizedWeight, d: i64) -> Vec<Vec<i64>> {
    let n = gw.len();
    // cap[i]: upper bound for m_i from the previous entry of the same block
    let mut block_start = vec![true; n];
    for &(s, l) in &gw.blocks {
        for t in 1..l {
            block_start[s + t] = false;
        }
    }
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    fn rec(
        i: usize,
        sum_left: i64,
        sq_left: i64,
        m: &mut Vec<i64>,
        block_start: &[bool],
        gw: &GeneralizedWeight,
        d: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = m.len();
        let slots = (n - i) as i64;
        if sum_left < 0 || sq_left < 0 {
            return;
        }
        // nonnegative integers: sum^2 >= square sum, and sum^2 <= slots * square sum
        if sum_left * sum_left < sq_left || sum_left * sum_left > slots * sq_left {
            return;
        }
        if i == n {
            if sum_left == 0 && sq_left == 0 && gw.mu(d, m) > gw.bound() {
                out.push(m.clone());
            }
            return;
        }
        let mut cap = sum_left.min((sq_left as f64).sqrt() as i64 + 1);
        if !block_start[i] {
            cap = cap.min(m[i - 1]);
        }
        for v in (0..=cap).rev() {
            if v * v > sq_left {
                continue;
            }
            m[i] = v;
            rec(i + 1, sum_left - v, sq_left - v * v, m, block_start, gw, d, out);
        }
        m[i] = 0;
    }
    rec(0, 3 * d - 1, d * d + 1, &mut m, &block_start, gw, d, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn exact_matches_backtracking() {
        for a in [q(13, 1), q(1300, 81), q(97, 6), q(37, 2), q(21, 1), q(25, 2)] {
            for c in [q(13, 2), q(1, 1), q(3, 1)] {
                let gw = GeneralizedWeight::new(&a, &c).unwrap();
                for d in 1..=6 {
                    assert_eq!(enumerate_candidates(&gw, d), backtrack_candidates(&gw, d), "a={a} c={c} d={d}");
                }
            }
        }
    }

    #[test]
    fn d_one() {
        // d = 1 forces m = (1, 1, 0, ...): obstructive iff w1 + w2 > (1+c) lam, never strictly
        let gw = GeneralizedWeight::new(&q(2, 1), &q(1, 1)).unwrap();
        assert!(enumerate_candidates(&gw, 1).is_empty());
    }
}
