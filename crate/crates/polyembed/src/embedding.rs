//! The embedding function d(a, b) = inf{lam : E(1, a) embeds into P(lam, lam*b)}.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::capacities::{scaled_cmp, CapacitySequence};
use crate::error::{Error, Result};
use crate::numeric::{q, quad_compare, QuadExt, Rational};
use crate::reduction::{certify_embedding, CertifyOutcome};

/// sqrt(a / (2b)).
pub fn volume_bound(a: &Rational, b: &Rational) -> Result<QuadExt> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!("volume bound needs a, b > 0; got ({a}, {b})")));
    }
    QuadExt::sqrt_of(&(a / &(b * &Rational::from(2))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioBound {
    pub value: Rational,
    pub witness_index: usize,
}

/// max over 1 <= k <= upto of N_k(1, a) / M_k(1, b); ties keep the smallest index.
pub fn ratio_lower_bound(a: &Rational, b: &Rational, upto: usize) -> Result<RatioBound> {
    let mut n = CapacitySequence::ellipsoid(&Rational::one(), a)?;
    let mut m = CapacitySequence::polydisc(&Rational::one(), b)?;
    let mut best = RatioBound { value: Rational::zero(), witness_index: 0 };
    for k in 1..=upto.max(1) {
        let r = &n.term(k) / &m.term(k);
        if r > best.value {
            best = RatioBound { value: r, witness_index: k };
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityThreshold {
    /// Beyond this a only the volume constraint obstructs.
    pub threshold: Rational,
    pub d_cut: Rational,
    /// Largest capacity index that had to be checked directly.
    pub k_max: usize,
}

/// (b+1)^2 (2 + (b+1)/d_cut)^2 / (2b), with d_cut = b + 1 by default.
///
/// For d_cut above b + 1 the terms N_k(1, T) <= sqrt(T/(2b)) M_k(1, b) are checked
/// for every k up to d^2/(4b) + (1+b)d/(2b) + (b-1)^2/(4b) before the value is returned.
pub fn rigidity_threshold(b: &Rational, d_cut: Option<&Rational>) -> Result<RigidityThreshold> {
    if *b < Rational::one() {
        return Err(Error::Domain(format!("b must be >= 1, got {b}")));
    }
    let b1 = b + &Rational::one();
    let d = d_cut.cloned().unwrap_or_else(|| b1.clone());
    if d < b1 {
        return Err(Error::Domain(format!("d_cut must be >= b + 1 = {b1}, got {d}")));
    }
    let two_b = b * &Rational::from(2);
    let t = (&b1.square() * &(&Rational::from(2) + &(&b1 / &d)).square()) / two_b.clone();
    let four_b = b * &Rational::from(4);
    let k_bound = &d.square() / &four_b + &(&b1 * &d) / &two_b + (b - &Rational::one()).square() / four_b;
    let k_max = k_bound.floor().to_usize().ok_or_else(|| Error::Domain("index bound too large".into()))?;
    let lam = volume_bound(&t, b)?;
    let mut n = CapacitySequence::ellipsoid(&Rational::one(), &t)?;
    let mut m = CapacitySequence::polydisc(&Rational::one(), b)?;
    for k in 0..=k_max {
        if scaled_cmp(&n.term(k), &lam, &m.term(k)) == Ordering::Greater {
            return Err(Error::Hypotheses(format!("capacity check fails at k = {k} for threshold {t}")));
        }
    }
    Ok(RigidityThreshold { threshold: t, d_cut: d, k_max })
}

/// Closed form of one piece of d(., b).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Form {
    Constant { value: Rational },
    /// slope * a + intercept
    Linear { slope: Rational, intercept: Rational },
    Volume,
}

impl Form {
    pub fn name(&self) -> &'static str {
        match self {
            Form::Constant { .. } => "constant",
            Form::Linear { .. } => "linear",
            Form::Volume => "volume",
        }
    }

    fn params(&self) -> (Rational, Rational) {
        match self {
            Form::Constant { value } => (value.clone(), Rational::zero()),
            Form::Linear { slope, intercept } => (slope.clone(), intercept.clone()),
            Form::Volume => (Rational::zero(), Rational::zero()),
        }
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> QuadExt {
        match self {
            Form::Constant { value } => QuadExt::from(value),
            Form::Linear { slope, intercept } => QuadExt::from(&(slope * a) + intercept),
            Form::Volume => volume_bound(a, b).expect("positive a, b"),
        }
    }

    /// Square of the value at a possibly irrational point (all values are positive).
    fn value_sq(&self, x: &QuadExt, b: &Rational) -> QuadExt {
        match self {
            Form::Constant { value } => QuadExt::from(value.square()),
            Form::Linear { slope, intercept } => x.scale(slope).add_rational(intercept).square(),
            Form::Volume => x.scale(&(b * &Rational::from(2)).recip().expect("b > 0")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub lo: QuadExt,
    /// None for the unbounded last piece.
    pub hi: Option<QuadExt>,
    #[serde(flatten)]
    pub form: Form,
    pub witness: Option<usize>,
}

impl Segment {
    fn contains(&self, a: &Rational) -> bool {
        let x = QuadExt::from(a);
        self.lo <= x && self.hi.as_ref().map_or(true, |h| x < *h)
    }
}

/// A piecewise description of a -> d(a, b) on [1, oo), pieces closed on the left.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewiseCapacityFn {
    pub b: Rational,
    pub conjectural: bool,
    pub segments: Vec<Segment>,
}

impl PiecewiseCapacityFn {
    /// Sort the non-volume pieces and fill every gap with the volume curve.
    fn assemble(b: &Rational, conjectural: bool, mut pieces: Vec<Segment>) -> Result<Self> {
        pieces.retain(|s| s.hi.as_ref().map_or(true, |h| s.lo < *h));
        let mut err = None;
        pieces.sort_by(|x, y| {
            quad_compare(&x.lo, &y.lo).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut out = Vec::new();
        let mut at = QuadExt::one();
        for s in pieces {
            match quad_compare(&s.lo, &at)? {
                Ordering::Less => {
                    return Err(Error::Unsupported(format!("overlapping pieces near {}", s.lo)));
                }
                Ordering::Greater => out.push(Segment { lo: at.clone(), hi: Some(s.lo.clone()), form: Form::Volume, witness: None }),
                Ordering::Equal => {}
            }
            at = s.hi.clone().expect("bounded piece");
            out.push(s);
        }
        out.push(Segment { lo: at, hi: None, form: Form::Volume, witness: None });
        Ok(PiecewiseCapacityFn { b: b.clone(), conjectural, segments: out })
    }

    pub fn segment_at(&self, a: &Rational) -> Option<&Segment> {
        self.segments.iter().find(|s| s.contains(a))
    }

    pub fn eval(&self, a: &Rational) -> Result<QuadExt> {
        let s = self
            .segment_at(a)
            .ok_or_else(|| Error::Domain(format!("a = {a} is outside [1, oo)")))?;
        Ok(s.form.eval(a, &self.b))
    }

    /// Interior boundaries in increasing order.
    pub fn breakpoints(&self) -> Vec<QuadExt> {
        self.segments.iter().skip(1).map(|s| s.lo.clone()).collect()
    }

    /// Whether neighbouring pieces agree at each shared endpoint.
    pub fn is_continuous(&self) -> bool {
        self.segments.windows(2).all(|w| {
            let x = &w[1].lo;
            w[0].form.value_sq(x, &self.b) == w[1].form.value_sq(x, &self.b)
        })
    }

    /// CSV rows "a_lo,a_hi,form,param1,param2,witness_index".
    pub fn csv_rows(&self) -> Vec<[String; 6]> {
        self.segments
            .iter()
            .map(|s| {
                let (p1, p2) = s.form.params();
                [
                    s.lo.to_string(),
                    s.hi.as_ref().map_or_else(|| "inf".to_string(), |h| h.to_string()),
                    s.form.name().to_string(),
                    p1.to_string(),
                    p2.to_string(),
                    s.witness.map_or_else(String::new, |w| w.to_string()),
                ]
            })
            .collect()
    }
}

fn piece(lo: QuadExt, hi: QuadExt, form: Form, witness: usize) -> Segment {
    Segment { lo, hi: Some(hi), form, witness: Some(witness) }
}

pub const ALPHA_13_2: [(i64, i64); 5] = [(25, 2), (351, 25), (841, 52), (961, 52), (1089, 52)];
pub const BETA_13_2: [(i64, i64); 5] = [(351, 25), (1300, 81), (15028, 841), (18772, 961), (2548, 121)];

/// The graph of d(., 13/2) as a piecewise function.
pub fn theorem_13_2_graph() -> PiecewiseCapacityFn {
    let b = q(13, 2);
    let mut pieces = vec![piece(QuadExt::one(), QuadExt::from(q(25, 2)), Form::Constant { value: Rational::one() }, 1)];
    for k in 0..5i64 {
        let l = 13 + 2 * k;
        let alpha = QuadExt::from(q(ALPHA_13_2[k as usize].0, ALPHA_13_2[k as usize].1));
        let beta = QuadExt::from(q(BETA_13_2[k as usize].0, BETA_13_2[k as usize].1));
        let mid = QuadExt::from(Rational::from(l));
        let lin = Form::Linear { slope: q(2, 25 + 2 * k), intercept: Rational::zero() };
        let cst = Form::Constant { value: q(26 + 4 * k, 25 + 2 * k) };
        pieces.push(piece(alpha, mid.clone(), lin, l as usize));
        pieces.push(piece(mid, beta, cst, l as usize));
    }
    PiecewiseCapacityFn::assemble(&b, false, pieces).expect("pieces are disjoint")
}

/// d(a, 13/2) in closed form.
pub fn theorem_13_2(a: &Rational) -> Result<QuadExt> {
    if *a < Rational::one() {
        return Err(Error::Domain(format!("a must be >= 1, got {a}")));
    }
    theorem_13_2_graph().eval(a)
}

/// Which closed form to use for the left end of the (m+1)^3 window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaStarVariant {
    /// The displayed expression, with its b^2 eps^2 term.
    Printed,
    /// The displayed expression with m^2 eps^2 in place of b^2 eps^2.
    MSquared,
    /// The root of (m a + 1)^2 / D^2 = a / (2b) below 2m + 4.
    #[default]
    Exact,
}

impl FromStr for AlphaStarVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(AlphaStarVariant::Printed),
            "m-squared" => Ok(AlphaStarVariant::MSquared),
            "exact" => Ok(AlphaStarVariant::Exact),
            _ => Err(Error::Parse(format!("unknown variant {s:?} (printed | m-squared | exact)"))),
        }
    }
}

impl fmt::Display for AlphaStarVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphaStarVariant::Printed => "printed",
            AlphaStarVariant::MSquared => "m-squared",
            AlphaStarVariant::Exact => "exact",
        })
    }
}

/// The integer m with b in [m - m/(m+1)^2, m + 1/(m+2)], if any, and frac_b = b - m.
pub fn window_params(b: &Rational) -> Option<(i64, Rational)> {
    let m0 = b.floor().to_i64()?;
    (m0..=m0 + 1).find_map(|m| {
        let mr = Rational::from(m);
        let lo = &mr - &Rational::new(m, (m + 1) * (m + 1));
        let hi = &mr + &Rational::new(1, m + 2);
        (m >= 1 && *b >= lo && *b <= hi).then(|| (m, b - &mr))
    })
}

/// Left end of the window.
pub fn alpha_star(b: &Rational, m: i64, frac_b: &Rational, variant: AlphaStarVariant) -> Result<QuadExt> {
    let mr = Rational::from(m);
    let e = frac_b;
    let r = |n: i64| Rational::from(n);
    match variant {
        AlphaStarVariant::Exact => {
            let den = &(&mr + &r(1)) * &(&(&mr * &r(2)) + e);
            let n = &den.square() - &(&(b * &r(4)) * &mr);
            let disc = &n.square() - &(&(b.square() * &r(16)) * &mr.square());
            let root = QuadExt::sqrt_of(&disc)?;
            Ok(root.add_rational(&n).scale(&(&(b * &r(4)) * &mr.square()).recip()?))
        }
        AlphaStarVariant::Printed | AlphaStarVariant::MSquared => {
            let m2 = mr.square();
            let m3 = &m2 * &mr;
            let m4 = &m3 * &mr;
            let e2 = e.square();
            let extra = if variant == AlphaStarVariant::Printed { b.square() } else { m2.clone() };
            let poly = &r(8) * &m3 + &r(4) * &m2 + &r(8) * &(&m2 * e) + &r(4) * &(&m3 * e) + e2.clone()
                + &r(2) * &(&mr * &e2)
                + &extra * &e2;
            let rad = &r(-4) * &m2 + &r(8) * &m3 + &r(4) * &m4 - &r(4) * &(&mr * e) + &r(8) * &(&m2 * e)
                + &r(4) * &(&m3 * e)
                + e2.clone()
                + &r(2) * &(&mr * &e2)
                + &m2 * &e2;
            let factor = &(&mr + &r(1)) * &(&(&mr * &r(2)) + e);
            let den = &r(2) * &(&r(2) * &m3 + &r(2) * &(&m2 * e));
            let s = QuadExt::sqrt_of(&rad)?;
            Ok((-s.scale(&factor)).add_rational(&poly).scale(&den.recip()?))
        }
    }
}

/// Right end of the window.
pub fn beta_star(b: &Rational, m: i64, frac_b: &Rational, variant: AlphaStarVariant) -> Rational {
    let mr = Rational::from(m);
    let e = frac_b;
    let r = |n: i64| Rational::from(n);
    let den = &(&mr + &r(1)) * &(&(&mr * &r(2)) + e);
    match variant {
        AlphaStarVariant::Exact => {
            let top = &(&r(2) * &mr.square() + &r(4) * &mr) + &r(1);
            &(b * &r(2)) * &(&top / &den).square()
        }
        AlphaStarVariant::Printed | AlphaStarVariant::MSquared => {
            let m2 = mr.square();
            let m3 = &m2 * &mr;
            let m4 = &m3 * &mr;
            let m5 = &m4 * &mr;
            let num = e.clone() + mr.clone() + &r(8) * &(&mr * e) + &r(8) * &m2 + &r(20) * &(&m2 * e)
                + &r(16) * &(&m3 * e)
                + &r(16) * &m4
                + &r(4) * &(&m4 * e)
                + &r(4) * &m5;
            &(&r(2) * &num) / &den.square()
        }
    }
}

/// ceil(sqrt(2b) + frac(b)): the number of staircase steps k.
fn step_count(b: &Rational) -> Result<i64> {
    let s = QuadExt::sqrt_of(&(b * &Rational::from(2)))?.add_rational(&b.frac());
    s.ceil().to_i64().ok_or_else(|| Error::Domain("b too large".into()))
}

/// The conjectured graph of d(., b) for b >= 6.
pub fn conjecture_graph(b: &Rational, variant: AlphaStarVariant) -> Result<PiecewiseCapacityFn> {
    if *b < Rational::from(6) {
        return Err(Error::Unsupported(format!("conjectured graph needs b >= 6, got {b}")));
    }
    let fb = Rational::from_int(b.floor());
    let base = b + &fb;
    let mut pieces = vec![piece(QuadExt::one(), QuadExt::from(&base), Form::Constant { value: Rational::one() }, 1)];
    let two_b = b * &Rational::from(2);
    let steps = step_count(b)?;
    for k in 0..steps {
        let kr = Rational::from(k);
        let n = &fb + &kr;
        let l = &base + &kr;
        let top = &(&n * &Rational::from(2)) + &Rational::one();
        let alpha = match k {
            0 => base.clone(),
            1 => &(&(&base + &Rational::one()) * &(&(&fb * &Rational::from(2)) + &Rational::one())) / &base,
            _ => &l.square() / &two_b,
        };
        let beta = if k == 0 {
            &(&(&base + &Rational::one()) * &(&(&fb * &Rational::from(2)) + &Rational::one())) / &base
        } else {
            &two_b * &(&top / &l).square()
        };
        let idx = top.to_i64().expect("small index") as usize;
        let lin = Form::Linear { slope: l.recip()?, intercept: Rational::zero() };
        let cst = Form::Constant { value: &top / &l };
        pieces.push(piece(QuadExt::from(&alpha), QuadExt::from(&top), lin, idx));
        pieces.push(piece(QuadExt::from(&top), QuadExt::from(&beta), cst, idx));
    }
    if let Some((m, e)) = window_params(b) {
        let mr = Rational::from(m);
        let den = &(&mr + &Rational::one()) * &(&(&mr * &Rational::from(2)) + &e);
        let mid = Rational::from(2 * m + 4);
        let a_star = alpha_star(b, m, &e, variant)?;
        let b_star = beta_star(b, m, &e, variant);
        let idx = ((m + 1) * (m + 1) * (m + 1)) as usize;
        let lin = Form::Linear { slope: &mr / &den, intercept: den.recip()? };
        let cst = Form::Constant { value: &(&(&mr * &mid) + &Rational::one()) / &den };
        pieces.push(piece(a_star, QuadExt::from(&mid), lin, idx));
        pieces.push(piece(QuadExt::from(&mid), QuadExt::from(&b_star), cst, idx));
    }
    PiecewiseCapacityFn::assemble(b, true, pieces)
}

/// 2b ((2 floor(b) + 2K - 1) / (b + floor(b) + K - 1))^2 with K = ceil(sqrt(2b) + frac(b)).
pub fn prop_6_1_bound(b: &Rational) -> Result<Rational> {
    let fb = Rational::from_int(b.floor());
    let k = Rational::from(step_count(b)?);
    let top = &(&fb * &Rational::from(2)) + &(&k * &Rational::from(2)) - Rational::one();
    let bot = &(b + &fb) + &k - Rational::one();
    Ok(&(b * &Rational::from(2)) * &(&top / &bot).square())
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub index: usize,
    pub ratio: Rational,
    /// The conjectured value on the piece containing a.
    pub expected: Rational,
    pub matches: bool,
}

/// The capacity index whose ratio N_l(1, a) / M_l(1, b) certifies the lower bound at a.
pub fn conjecture_lower_bound_witness(a: &Rational, b: &Rational) -> Result<Witness> {
    let g = conjecture_graph(b, AlphaStarVariant::Exact)?;
    let s = g.segment_at(a).ok_or_else(|| Error::Domain(format!("a = {a} outside [1, oo)")))?;
    let index = match (&s.form, s.witness) {
        (Form::Volume, _) | (_, None) => {
            return Err(Error::Unsupported(format!("a = {a} lies on the volume curve; no witness needed")))
        }
        (_, Some(i)) => i,
    };
    let expected = s.form.eval(a, b).as_rational().cloned().expect("rational piece");
    let mut n = CapacitySequence::ellipsoid(&Rational::one(), a)?;
    let mut m = CapacitySequence::polydisc(&Rational::one(), b)?;
    let ratio = &n.term(index) / &m.term(index);
    Ok(Witness { index, matches: ratio == expected, ratio, expected })
}

#[derive(Clone, Debug, Serialize)]
pub struct DValue {
    pub a: Rational,
    pub b: Rational,
    pub lower: QuadExt,
    pub upper: Option<QuadExt>,
    pub matched: bool,
    /// Index of the capacity ratio giving the lower bound; None when the volume bound wins.
    pub witness_index: Option<usize>,
    pub certificate: Option<CertifyOutcome>,
}

/// Bracket d(a, b): the best capacity ratio (or volume) below, a certified embedding above.
pub fn compute_d(a: &Rational, b: &Rational, upto: usize) -> Result<DValue> {
    if *a < Rational::one() || *b < Rational::one() {
        return Err(Error::Domain(format!("need a, b >= 1; got ({a}, {b})")));
    }
    let vol = volume_bound(a, b)?;
    let rb = ratio_lower_bound(a, b, upto)?;
    let (mut lower, mut witness) = if QuadExt::from(&rb.value) >= vol {
        (QuadExt::from(&rb.value), Some(rb.witness_index))
    } else {
        (vol, None)
    };
    // a refuted candidate hands back a larger ratio; a few rounds always suffice in practice
    for _ in 0..8 {
        match certify_embedding(a, &lower, b) {
            Ok(out @ CertifyOutcome::Embeds(_)) => {
                return Ok(DValue {
                    a: a.clone(),
                    b: b.clone(),
                    upper: Some(lower.clone()),
                    lower,
                    matched: true,
                    witness_index: witness,
                    certificate: Some(out),
                });
            }
            Ok(CertifyOutcome::Obstructed(r)) => {
                lower = QuadExt::from(&r.n_value / &r.m_value);
                witness = Some(r.obstruction_index);
            }
            Err(Error::Undecidable(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(DValue { a: a.clone(), b: b.clone(), lower, upper: None, matched: false, witness_index: witness, certificate: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_examples() {
        assert_eq!(volume_bound(&q(13, 1), &q(13, 2)).unwrap(), QuadExt::one());
        assert_eq!(volume_bound(&q(2548, 121), &q(13, 2)).unwrap(), QuadExt::from(q(42, 33)));
        assert!(volume_bound(&q(25, 2), &q(13, 2)).unwrap() < QuadExt::one());
    }

    #[test]
    fn rigidity_defaults() {
        assert_eq!(rigidity_threshold(&q(13, 2), None).unwrap().threshold, q(2025, 52));
        assert_eq!(rigidity_threshold(&q(1, 1), None).unwrap().threshold, q(18, 1));
        assert!(rigidity_threshold(&q(13, 2), Some(&q(7, 1))).is_err());
        let r = rigidity_threshold(&q(13, 2), Some(&q(18, 1))).unwrap();
        assert_eq!(r.k_max, 24);
        assert!(r.threshold <= q(27, 1));
    }

    #[test]
    fn theorem_values() {
        assert_eq!(theorem_13_2(&q(25, 2)).unwrap(), QuadExt::one());
        assert_eq!(theorem_13_2(&q(14, 1)).unwrap(), QuadExt::from(q(26, 25)));
        assert_eq!(theorem_13_2(&q(2548, 121)).unwrap(), QuadExt::from(q(42, 33)));
        assert_eq!(theorem_13_2(&q(30, 1)).unwrap(), volume_bound(&q(30, 1), &q(13, 2)).unwrap());
        assert!(theorem_13_2_graph().is_continuous());
    }

    #[test]
    fn conjecture_matches_theorem() {
        let g = conjecture_graph(&q(13, 2), AlphaStarVariant::Exact).unwrap();
        let t = theorem_13_2_graph();
        assert_eq!(g.segments, t.segments);
        assert_eq!(prop_6_1_bound(&q(13, 2)).unwrap(), q(2548, 121));
    }

    #[test]
    fn window_at_seven() {
        let (m, e) = window_params(&q(7, 1)).unwrap();
        assert_eq!((m, e.clone()), (7, Rational::zero()));
        let a = alpha_star(&q(7, 1), m, &e, AlphaStarVariant::Exact).unwrap();
        assert!(a < QuadExt::from(q(18, 1)) && a > QuadExt::from(q(17998, 1000)));
        let g = conjecture_graph(&q(7, 1), AlphaStarVariant::Exact).unwrap();
        assert!(g.is_continuous());
        assert!(window_params(&q(13, 2)).is_none());
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_lower_bound(&q(13, 1), &q(13, 2), 40).unwrap();
        assert_eq!(r, RatioBound { value: q(26, 25), witness_index: 13 });
        let r = ratio_lower_bound(&q(1, 1), &q(13, 2), 40).unwrap();
        assert_eq!(r.value, Rational::one());
    }
}
