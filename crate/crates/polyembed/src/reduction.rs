//! Finite certification of ellipsoid-into-polydisc embeddings.
//!
//! The capacity inequality `N_k(1,a) <= lam * M_k(1,b)` for every k is reduced
//! to a finite check: past a threshold `t*`, a lattice-point lower bound on the
//! ellipsoid side beats a closed-form upper bound on the polydisc side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::capacities::{scaled_cmp, CapacitySequence};
use crate::error::{Error, Result};
use crate::numeric::{QuadExt, Rational};

/// #{(m, n) >= 0 : m*a + n*b <= t}, by direct summation.
pub fn lattice_count_direct(a: u64, b: u64, t: u64) -> u64 {
    (0..=t / b).map(|n| (t - n * b) / a + 1).sum()
}

/// Polynomial in t whose coefficients depend on t mod period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// (quadratic, linear, constant) per residue class.
    pub coeffs: Vec<(Rational, Rational, Rational)>,
}

impl QuasiPolynomial {
    /// Interpolate the counting function of {m*a + n*b <= t} from exact counts
    /// at t = rho, rho + P, rho + 2P for every residue rho, with P = a*b.
    pub fn for_triangle(a: u64, b: u64) -> Self {
        assert!(a > 0 && b > 0);
        let period = a * b;
        let p = Rational::from(period);
        let two = Rational::from(2u64);
        let mut coeffs = Vec::with_capacity(period as usize);
        for rho in 0..period {
            let y0 = Rational::from(lattice_count_direct(a, b, rho));
            let y1 = Rational::from(lattice_count_direct(a, b, rho + period));
            let y2 = Rational::from(lattice_count_direct(a, b, rho + 2 * period));
            // second difference over spacing P
            let c2 = (&y2 - &(&two * &y1) + &y0) / (&two * &p * &p);
            let x0 = Rational::from(rho);
            let x1 = &x0 + &p;
            let c1 = (&y1 - &y0) / &p - &c2 * &(&x0 + &x1);
            let c0 = &y0 - &(&c2 * &x0.square()) - &(&c1 * &x0);
            coeffs.push((c2, c1, c0));
        }
        let qp = QuasiPolynomial { period, coeffs };
        let lead = Rational::new(1, 2 * a as i64 * b as i64);
        debug_assert!(qp.coeffs.iter().all(|c| c.0 == lead));
        qp
    }

    pub fn eval(&self, t: u64) -> Rational {
        let (c2, c1, c0) = &self.coeffs[(t % self.period) as usize];
        let x = Rational::from(t);
        c2 * &x.square() + c1 * &x + c0.clone()
    }
}

/// #{(m, n) >= 0 : m*(a/r) + n*(b/r) <= t} through the quasi-polynomial.
pub fn lattice_count(a: u64, b: u64, r: u64, t: u64) -> u64 {
    let qp = QuasiPolynomial::for_triangle(a, b);
    qp.eval(r * t).to_i64().expect("count is an integer") as u64
}

fn mod_inverse(x: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let e = x.extended_gcd(&m);
    assert!(e.gcd == 1, "not invertible");
    e.x.rem_euclid(m)
}

/// Counting data for the ellipsoid E(1, p/q): the lattice {m*q + n*p <= T}, T = q*t.
///
/// With gcd(p, q) = 1 the count is `T^2/(2pq) + (p+q+1)T/(2pq) + c0(T mod pq)`.
#[derive(Clone, Debug, Serialize)]
pub struct EllipsoidCounting {
    pub p: u64,
    pub q: u64,
    /// Coefficients in the variable T.
    pub quad: Rational,
    pub lin: Rational,
    pub c0_min: Rational,
    pub c0_max: Rational,
    pub c0_mean: Rational,
}

impl EllipsoidCounting {
    pub fn new(a: &Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Domain(format!("ellipsoid parameter must be positive, got {a}")));
        }
        let p = a.numer().to_u64().ok_or_else(|| Error::Domain("numerator too large".into()))?;
        let q = a.denom().to_u64().ok_or_else(|| Error::Domain("denominator too large".into()))?;
        let (pi, qi) = (p as i128, q as i128);
        let period = pi * qi;
        if period > 2_000_000_000 {
            return Err(Error::Domain(format!("period {period} too large for streaming")));
        }
        // stream T over one period: T is representable (uniquely, for T < pq)
        // iff n0 * p <= T where n0 = T * p^{-1} mod q
        let pinv = mod_inverse(pi % qi, qi);
        let lin_s = pi + qi + 1;
        let mut count: i128 = 0;
        let mut n0: i128 = 0;
        let (mut lo, mut hi, mut sum) = (i128::MAX, i128::MIN, 0i128);
        for t in 0..period {
            if n0 * pi <= t {
                count += 1;
            }
            let scaled = 2 * period * count - t * t - lin_s * t;
            lo = lo.min(scaled);
            hi = hi.max(scaled);
            sum += scaled;
            n0 += pinv;
            if n0 >= qi {
                n0 -= qi;
            }
        }
        let den = 2 * period;
        Ok(EllipsoidCounting {
            p,
            q,
            quad: Rational::new(1, den),
            lin: Rational::new(lin_s, den),
            c0_min: Rational::new(lo, den),
            c0_max: Rational::new(hi, den),
            c0_mean: Rational::new(BigInt::from(sum), BigInt::from(den) * BigInt::from(period)),
        })
    }

    /// Exact count of {m*q + n*p <= T}.
    pub fn count(&self, t: u64) -> u64 {
        lattice_count_direct(self.q, self.p, t)
    }

    /// Coefficient of t^2 in the lower bound, i.e. q/(2p).
    pub fn k_t2(&self) -> Rational {
        &self.quad * &Rational::from(self.q * self.q)
    }

    /// Coefficient of t in the leading part, i.e. (1 + (q+1)/p)/2.
    pub fn k_t(&self) -> Rational {
        &self.lin * &Rational::from(self.q)
    }

    /// Lower bound on the count at real t: Q(qt-1)^2 + L(qt-1) + min c0.
    pub fn lower_bound(&self, t: &Rational) -> Rational {
        let x = t * &Rational::from(self.q) - Rational::one();
        &self.quad * &x.square() + &self.lin * &x + self.c0_min.clone()
    }
}

/// Lower bound on #{k : N_k(1, a/r) <= t} from the quasi-polynomial.
pub fn k_lower_bound(a: u64, r: u64, t: &Rational) -> Result<Rational> {
    let e = EllipsoidCounting::new(&Rational::new(a, r))?;
    Ok(e.lower_bound(t))
}

/// Upper bound t^2/(4cd) + (c+d)t/(2cd) + (c-d)^2/(4cd) on the largest l with M_l(c,d) <= t.
pub fn l_upper_bound(c: &QuadExt, d: &QuadExt, t: &QuadExt) -> QuadExt {
    let (l2, l1, l0) = l_coefficients(c, d);
    &(&l2 * &t.square()) + &(&l1 * t) + &l0
}

fn l_coefficients(c: &QuadExt, d: &QuadExt) -> (QuadExt, QuadExt, QuadExt) {
    let cd4 = (c * d).scale(&Rational::from(4));
    let l2 = cd4.recip().expect("positive");
    let l1 = (c + d) / (c * d).scale(&Rational::from(2));
    let l0 = (c - d).square() / cd4;
    (l2, l1, l0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecidedBy {
    QuadraticCoefficient,
    LinearCoefficient,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedCertificate {
    pub a: Rational,
    pub lambda: QuadExt,
    pub b: Rational,
    #[serde(rename = "kN2")]
    pub k_n2: Rational,
    #[serde(rename = "lM2")]
    pub l_m2: QuadExt,
    #[serde(rename = "kN1")]
    pub k_n1: Rational,
    #[serde(rename = "lM1")]
    pub l_m1: QuadExt,
    pub threshold_t: Rational,
    pub checked_upto: usize,
    pub decided_by: DecidedBy,
    pub tight_indices: Vec<usize>,
    pub c0_min: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub a: Rational,
    pub lambda: QuadExt,
    pub b: Rational,
    pub obstruction_index: usize,
    pub n_value: Rational,
    pub m_value: Rational,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum CertifyOutcome {
    Embeds(EmbedCertificate),
    Obstructed(ObstructionReport),
}

impl CertifyOutcome {
    pub fn embeds(&self) -> bool {
        matches!(self, CertifyOutcome::Embeds(_))
    }

    pub fn certificate(&self) -> Option<&EmbedCertificate> {
        match self {
            CertifyOutcome::Embeds(c) => Some(c),
            CertifyOutcome::Obstructed(_) => None,
        }
    }
}

/// Smallest integer T >= 0 past which a2 t^2 + a1 t + a0 stays nonnegative.
fn crossing(a2: &QuadExt, a1: &QuadExt, a0: &QuadExt) -> BigInt {
    let eval = |t: &BigInt| {
        let x = Rational::from_int(t.clone());
        &(&a2.scale(&x.square()) + &a1.scale(&x)) + a0
    };
    let quadratic = !a2.is_zero();
    if quadratic {
        let disc = &a1.square() - &(a2 * a0).scale(&Rational::from(4));
        if disc.is_negative() {
            return BigInt::zero();
        }
    }
    let good = |t: &BigInt| {
        if eval(t).is_negative() {
            return false;
        }
        !quadratic || !(&a2.scale(&Rational::from_int(t * 2)) + a1).is_negative()
    };
    let zero = BigInt::zero();
    if good(&zero) {
        return zero;
    }
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while !good(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if good(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Decide whether E(1, a) embeds into P(lam, lam*b) by the capacity criterion.
///
/// Returns a certificate on success or the first index where N_k > lam*M_k.
pub fn certify_embedding(a: &Rational, lam: &QuadExt, b: &Rational) -> Result<CertifyOutcome> {
    if *a < Rational::one() || !b.is_positive() || !lam.is_positive() {
        return Err(Error::Domain(format!("need a >= 1, b > 0, lam > 0; got a={a}, b={b}, lam={lam}")));
    }
    let count = EllipsoidCounting::new(a)?;
    let c = lam.clone();
    let d = lam.scale(b);
    let (l2, l1, l0) = l_coefficients(&c, &d);
    let k2 = QuadExt::from(count.k_t2());
    let k1 = QuadExt::from(count.k_t());

    let decided_by = if k2 > l2 {
        DecidedBy::QuadraticCoefficient
    } else if k2 == l2 && k1 > l1 {
        DecidedBy::LinearCoefficient
    } else {
        // the finite part may still refute the embedding
        let mut n = CapacitySequence::ellipsoid(&Rational::one(), a)?;
        let mut m = CapacitySequence::polydisc(&Rational::one(), b)?;
        for k in 0..=2000 {
            if scaled_cmp(&n.term(k), lam, &m.term(k)) == std::cmp::Ordering::Greater {
                return Ok(obstructed(a, lam, b, k, &mut n, &mut m));
            }
        }
        return Err(Error::Undecidable(format!(
            "kN2={} lM2={} kN1={} lM1={}",
            count.k_t2(),
            l2,
            count.k_t(),
            l1
        )));
    };

    // f(t) = lower(t) - upper(t), lower(t) = Q(qt-1)^2 + L(qt-1) + c0min
    let qr = Rational::from(count.q);
    let a2 = &k2 - &l2;
    let a1 = QuadExt::from(&count.lin * &qr - &(&count.quad * &qr) * &Rational::from(2)) - l1.clone();
    let a0 = QuadExt::from(&count.quad - &count.lin + count.c0_min.clone()) - l0;
    let t_cross = crossing(&a2, &a1, &a0);
    let threshold = Rational::from_int(t_cross + 1);

    let mut n = CapacitySequence::ellipsoid(&Rational::one(), a)?;
    let mut m = CapacitySequence::polydisc(&Rational::one(), b)?;
    // any violation N_k > lam*M_k has lam*M_k < threshold
    let upto_m = m.count_scaled_at_most(lam, &QuadExt::from(threshold.clone()));
    let upto = upto_m.saturating_sub(1);
    let mut tight = Vec::new();
    for k in 0..=upto {
        let nk = n.term(k);
        let mk = m.term(k);
        match scaled_cmp(&nk, lam, &mk) {
            std::cmp::Ordering::Greater => return Ok(obstructed(a, lam, b, k, &mut n, &mut m)),
            std::cmp::Ordering::Equal if k > 0 => tight.push(k),
            _ => {}
        }
    }
    Ok(CertifyOutcome::Embeds(EmbedCertificate {
        a: a.clone(),
        lambda: lam.clone(),
        b: b.clone(),
        k_n2: count.k_t2(),
        l_m2: l2,
        k_n1: count.k_t(),
        l_m1: l1,
        threshold_t: threshold,
        checked_upto: upto,
        decided_by,
        tight_indices: tight,
        c0_min: count.c0_min.clone(),
    }))
}

fn obstructed(
    a: &Rational,
    lam: &QuadExt,
    b: &Rational,
    k: usize,
    n: &mut CapacitySequence,
    m: &mut CapacitySequence,
) -> CertifyOutcome {
    CertifyOutcome::Obstructed(ObstructionReport {
        a: a.clone(),
        lambda: lam.clone(),
        b: b.clone(),
        obstruction_index: k,
        n_value: n.term(k),
        m_value: m.term(k),
    })
}

/// Largest index l with M_l(c, d) <= t, by generation.
pub fn polydisc_index_at_most(c: &Rational, d: &Rational, t: &Rational) -> Option<usize> {
    let mut m = CapacitySequence::polydisc(c, d).ok()?;
    m.count_at_most(t).checked_sub(1)
}
