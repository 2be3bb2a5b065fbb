use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::capacities::weight_sequence;
use crate::error::{Error, Result};
use crate::numeric::{QuadExt, Rational};

/// w(a) = (c*lam, lam, W(a)) with lam = sqrt(a/(2c)).
#[derive(Clone, Debug)]
pub struct GeneralizedWeight {
    pub a: Rational,
    pub c: Rational,
    pub lambda: QuadExt,
    /// Weight sequence of a, flattened.
    pub tail: Vec<Rational>,
    /// (start, length) of each constant run of `tail`, indexed into the full vector
    /// (so the first block starts at 2).
    pub blocks: Vec<(usize, usize)>,
}

impl GeneralizedWeight {
    pub fn new(a: &Rational, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Domain(format!("c must be positive, got {c}")));
        }
        let w = weight_sequence(a)?;
        let lambda = QuadExt::sqrt_of(&(a / &(c * &Rational::from(2))))?;
        let mut blocks = Vec::with_capacity(w.entries.len());
        let mut pos = 2;
        for (_, m) in &w.entries {
            blocks.push((pos, *m));
            pos += m;
        }
        Ok(GeneralizedWeight { a: a.clone(), c: c.clone(), lambda, tail: w.flat(), blocks })
    }

    /// Total length l(a) of the vector including the two leading entries.
    pub fn len(&self) -> usize {
        2 + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry(&self, i: usize) -> QuadExt {
        match i {
            0 => self.lambda.scale(&self.c),
            1 => self.lambda.clone(),
            _ => QuadExt::from(&self.tail[i - 2]),
        }
    }

    /// (1 + c) * lam.
    pub fn bound(&self) -> QuadExt {
        self.lambda.scale(&(&self.c + &Rational::one()))
    }

    /// m . w as an exact field element.
    pub fn dot(&self, m: &[i64]) -> QuadExt {
        assert!(m.len() <= self.len(), "vector longer than weight");
        let mut lam_part = Rational::zero();
        let mut rat = Rational::zero();
        for (i, &mi) in m.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            let mr = Rational::from(mi);
            match i {
                0 => lam_part += &(&mr * &self.c),
                1 => lam_part += &mr,
                _ => rat += &(&mr * &self.tail[i - 2]),
            }
        }
        self.lambda.scale(&lam_part).add_rational(&rat)
    }

    /// mu(d; m) = m . w / d.
    pub fn mu(&self, d: i64, m: &[i64]) -> QuadExt {
        self.dot(m).scale(&Rational::new(1, d))
    }

    /// x = d * w / ((1 + c) lam), the real point the candidate must round.
    pub fn centers(&self, d: i64) -> Vec<QuadExt> {
        let one_c = &self.c + &Rational::one();
        let dr = Rational::from(d);
        let inv_lam = self.lambda.recip().expect("lam > 0");
        let mut out = Vec::with_capacity(self.len());
        out.push(QuadExt::from(&(&dr * &self.c) / &one_c));
        out.push(QuadExt::from(&dr / &one_c));
        for w in &self.tail {
            out.push(inv_lam.scale(&(&(&dr * w) / &one_c)));
        }
        out
    }

    /// y(a) = a + 1 - 2(1+c) lam.
    pub fn y(&self) -> QuadExt {
        let one_c2 = (&self.c + &Rational::one()) * Rational::from(2);
        (-self.lambda.scale(&one_c2)).add_rational(&(&self.a + &Rational::one()))
    }

    /// delta = y(a) - 1/q.
    pub fn delta(&self) -> QuadExt {
        self.y().add_rational(&-Rational::new(1, self.a.denom().clone()))
    }

    /// Upper bound on d from the key lemma at this a:
    /// d <= (1+c) lam / delta * (sqrt(q + floor(a) + 2) - 1).
    pub fn d_bound(&self) -> Result<i64> {
        let delta = self.delta();
        if !delta.is_positive() {
            return Err(Error::Hypotheses(format!("y(a) <= 1/q at a = {}", self.a)));
        }
        let q = self.a.denom();
        let l = Rational::from_int(q + self.a.floor() + 2);
        let one_c = &self.c + &Rational::one();
        let lam2 = &self.a / &(&self.c * &Rational::from(2));
        let (_, lam_hi) = lam2.sqrt_bounds(48);
        let (_, s_hi) = l.sqrt_bounds(48);
        let delta_lo = &(&self.a + &Rational::one()) - &(&(&one_c * &Rational::from(2)) * &lam_hi) - Rational::new(1, q.clone());
        if !delta_lo.is_positive() {
            return Err(Error::Hypotheses(format!("delta bound not positive at a = {}", self.a)));
        }
        let ub = &(&one_c * &lam_hi) / &delta_lo * (s_hi - Rational::one());
        ub.floor().to_i64().ok_or_else(|| Error::Domain("d bound overflow".into()))
    }

    /// Epsilon vector m - x as exact field elements.
    pub fn epsilon(&self, d: i64, m: &[i64]) -> Vec<QuadExt> {
        let x = self.centers(d);
        x.iter()
            .enumerate()
            .map(|(i, xi)| {
                let mi = m.get(i).copied().unwrap_or(0);
                (-xi.clone()).add_rational(&Rational::from(mi))
            })
            .collect()
    }
}

/// Canonical key for an a0 = p/q.
pub fn pq(a: &Rational) -> (i64, i64) {
    (a.numer().to_i64().expect("small p"), a.denom().to_i64().expect("small q"))
}

/// Fractions p/q in lowest terms with lo < p/q <= hi and q <= q_max, sorted by (q, p).
pub fn fractions_in(lo: &Rational, hi: &Rational, q_max: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        let qr = Rational::from(q);
        let p_lo = (lo * &qr).floor().to_i64().unwrap();
        let p_hi = (hi * &qr).floor().to_i64().unwrap();
        for p in p_lo..=p_hi {
            if p.gcd(&q) != 1 {
                continue;
            }
            let a = Rational::new(p, q);
            if &a > lo && &a <= hi {
                out.push(a);
            }
        }
    }
    out
}

/// Smallest denominator of a fraction in (lo, hi].
pub fn min_denominator(lo: &Rational, hi: &Rational) -> i64 {
    let mut q = 1;
    loop {
        if !fractions_in_q(lo, hi, q).is_empty() {
            return q;
        }
        q += 1;
    }
}

fn fractions_in_q(lo: &Rational, hi: &Rational, q: i64) -> Vec<Rational> {
    let qr = Rational::from(q);
    let p_lo = (lo * &qr).floor();
    let p_hi = (hi * &qr).floor();
    let mut out = Vec::new();
    let mut p = p_lo;
    while p <= p_hi {
        let a = Rational::new(p.clone(), q);
        if &a > lo && &a <= hi && a.denom().to_i64() == Some(q) {
            out.push(a);
        }
        p += 1;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonStats {
    pub sum: QuadExt,
    pub sum_sq: QuadExt,
    /// epsilon . w
    pub dot_w: QuadExt,
    /// d (mu - (1+c) lam)
    pub scaled_excess: QuadExt,
    pub identity_holds: bool,
    pub sum_identity_holds: bool,
}

/// Epsilon statistics together with the two exact identities they satisfy.
pub fn epsilon_stats(gw: &GeneralizedWeight, d: i64, m: &[i64]) -> EpsilonStats {
    let eps = gw.epsilon(d, m);
    let sum = eps.iter().fold(QuadExt::zero(), |a, e| &a + e);
    let sum_sq = eps.iter().fold(QuadExt::zero(), |a, e| &a + &e.square());
    let dot_w = eps.iter().enumerate().fold(QuadExt::zero(), |a, (i, e)| &a + &(e * &gw.entry(i)));
    let excess = (&gw.mu(d, m) - &gw.bound()).scale(&Rational::from(d));
    let identity_holds = dot_w == excess;
    // -sum eps = 1 + d/((1+c) lam) * (a + 1 - 1/q - 2(1+c) lam), given sum m = 3d - 1
    let rhs = (gw.delta().scale(&Rational::from(d)) / gw.bound()).add_rational(&Rational::one());
    let sum_identity_holds = (-sum.clone()) == rhs;
    EpsilonStats { sum, sum_sq, dot_w, scaled_excess: excess, identity_holds, sum_identity_holds }
}

/// True when v is nonnegative and v^2 < n, for integer v.
pub(crate) fn below_sqrt(v: i64, n: i64) -> bool {
    v < 0 || (v as i128) * (v as i128) < n as i128
}

pub(crate) fn abs_below_sqrt(v: i64, n: i64) -> bool {
    below_sqrt(v.abs(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn weight_layout() {
        let gw = GeneralizedWeight::new(&q(1300, 81), &q(13, 2)).unwrap();
        assert_eq!(gw.blocks[0], (2, 16));
        assert_eq!(gw.blocks[1], (18, 20));
        assert_eq!(gw.len(), 2 + 16 + 20 + 4);
        assert_eq!(gw.lambda, QuadExt::from(q(10, 9)));
        // sum of squares of w is ((1 + c) lam)^2
        let n2 = (0..gw.len()).fold(QuadExt::zero(), |a, i| &a + &gw.entry(i).square());
        assert_eq!(n2, gw.bound().square());
    }

    #[test]
    fn delta_at_left_endpoint() {
        let gw = GeneralizedWeight::new(&q(1300, 81), &q(13, 2)).unwrap();
        assert_eq!(gw.y(), QuadExt::from(q(31, 81)));
    }

    #[test]
    fn fractions() {
        let f = fractions_in(&q(1300, 81), &q(841, 52), 7);
        assert_eq!(f, vec![q(97, 6), q(113, 7)]);
        assert_eq!(min_denominator(&q(1300, 81), &q(841, 52)), 6);
    }
}
