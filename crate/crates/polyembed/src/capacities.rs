//! ECH capacity sequences, weight expansions and the sharp operation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{QuadExt, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Ellipsoid,
    Polydisc,
    Combined,
}

/// How far to generate a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cutoff {
    /// All terms with index at most k.
    Index(usize),
    /// All terms with value at most v.
    Value(Rational),
}

#[derive(Clone, Debug)]
enum Generator {
    /// Grid {m*a + n*b} as integers over a common denominator, merged by rows n.
    Ellipsoid { a: i128, b: i128, heap: BinaryHeap<Reverse<(i128, u64)>> },
    /// min{c*m + d*n : (m+1)(n+1) >= k+1} over a common denominator.
    Polydisc { c: i128, d: i128 },
    /// Materialized terms only.
    Fixed,
}

/// Lazily generated nondecreasing sequence of exact values.
#[derive(Clone, Debug)]
pub struct CapacitySequence {
    kind: SequenceKind,
    params: (Rational, Rational),
    den: i128,
    raw: Vec<i128>,
    terms: Vec<Rational>,
    gen: Generator,
}

fn to_common(a: &Rational, b: &Rational) -> Result<(i128, i128, i128)> {
    let den = a.denom().lcm(b.denom());
    let an = (a * &Rational::from_int(den.clone())).numer().clone();
    let bn = (b * &Rational::from_int(den.clone())).numer().clone();
    let conv = |x: &BigInt| {
        x.to_i128()
            .filter(|v| v.abs() < (1i128 << 80))
            .ok_or_else(|| Error::Domain("capacity parameters too large".into()))
    };
    Ok((conv(&an)?, conv(&bn)?, conv(&den)?))
}

impl CapacitySequence {
    /// N(a, b): all m*a + n*b in nondecreasing order with repetitions.
    pub fn ellipsoid(a: &Rational, b: &Rational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::Domain(format!("ellipsoid parameters must be positive: ({a}, {b})")));
        }
        let (an, bn, den) = to_common(a, b)?;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0, 0)));
        Ok(CapacitySequence {
            kind: SequenceKind::Ellipsoid,
            params: (a.clone(), b.clone()),
            den,
            raw: Vec::new(),
            terms: Vec::new(),
            gen: Generator::Ellipsoid { a: an, b: bn, heap },
        })
    }

    /// M(c, d): M_k = min{c*m + d*n : (m+1)(n+1) >= k+1}.
    pub fn polydisc(c: &Rational, d: &Rational) -> Result<Self> {
        if !c.is_positive() || !d.is_positive() {
            return Err(Error::Domain(format!("polydisc parameters must be positive: ({c}, {d})")));
        }
        let (cn, dn, den) = to_common(c, d)?;
        Ok(CapacitySequence {
            kind: SequenceKind::Polydisc,
            params: (c.clone(), d.clone()),
            den,
            raw: Vec::new(),
            terms: Vec::new(),
            gen: Generator::Polydisc { c: cn, d: dn },
        })
    }

    /// A finite materialized sequence, e.g. the result of `sharp`.
    pub fn fixed(terms: Vec<Rational>) -> Self {
        CapacitySequence {
            kind: SequenceKind::Combined,
            params: (Rational::zero(), Rational::zero()),
            den: 1,
            raw: Vec::new(),
            terms,
            gen: Generator::Fixed,
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn params(&self) -> (&Rational, &Rational) {
        (&self.params.0, &self.params.1)
    }

    /// Number of terms generated so far.
    pub fn generated(&self) -> usize {
        self.terms.len()
    }

    fn next_raw(&mut self) -> Option<i128> {
        let k = self.raw.len();
        let v = match &mut self.gen {
            Generator::Ellipsoid { a, b, heap } => {
                let Reverse((v, n)) = heap.pop().expect("grid heap is never empty");
                // row n yields n*b, n*b + a, n*b + 2a, ...; start row n+1 lazily
                heap.push(Reverse((v + *a, n)));
                if v == n as i128 * *b {
                    heap.push(Reverse(((n as i128 + 1) * *b, n + 1)));
                }
                v
            }
            Generator::Polydisc { c, d } => polydisc_term(*c, *d, k as u64),
            Generator::Fixed => return None,
        };
        self.raw.push(v);
        Some(v)
    }

    fn push_next(&mut self) -> bool {
        match self.next_raw() {
            Some(v) => {
                self.terms.push(Rational::new(v, self.den));
                true
            }
            None => false,
        }
    }

    /// Term k; None only for an exhausted fixed sequence.
    pub fn get(&mut self, k: usize) -> Option<&Rational> {
        while self.terms.len() <= k {
            if !self.push_next() {
                return None;
            }
        }
        Some(&self.terms[k])
    }

    pub fn term(&mut self, k: usize) -> Rational {
        self.get(k).cloned().unwrap_or_else(|| panic!("sequence exhausted before index {k}"))
    }

    /// Generate through the cutoff and return the terms.
    pub fn take(&mut self, cutoff: &Cutoff) -> &[Rational] {
        match cutoff {
            Cutoff::Index(k) => {
                let _ = self.get(*k);
                let n = (*k + 1).min(self.terms.len());
                &self.terms[..n]
            }
            Cutoff::Value(v) => {
                let n = self.count_at_most(v);
                &self.terms[..n]
            }
        }
    }

    /// Number of terms with value at most v (the largest such index plus one).
    pub fn count_at_most(&mut self, v: &Rational) -> usize {
        loop {
            match self.terms.last() {
                Some(last) if last > v => break,
                _ => {
                    if !self.push_next() {
                        break;
                    }
                }
            }
        }
        self.terms.partition_point(|t| t <= v)
    }

    /// Number of terms whose value times `scale` is at most v.
    pub fn count_scaled_at_most(&mut self, scale: &QuadExt, v: &QuadExt) -> usize {
        let bound = v.checked_div(scale).expect("scale and bound share a field");
        if let Some(b) = bound.as_rational() {
            return self.count_at_most(b);
        }
        // terms <= floor(bound) count outright; those in (floor, floor+1) need an exact compare
        let fl = Rational::from_int(bound.floor());
        let hi = &fl + &Rational::one();
        let mut n = self.count_at_most(&fl);
        let _ = self.count_at_most(&hi);
        while n < self.terms.len() {
            let t = QuadExt::from_rational(self.terms[n].clone());
            if t.partial_cmp(&bound) != Some(std::cmp::Ordering::Greater) {
                n += 1;
            } else {
                break;
            }
        }
        n
    }

    /// Integer numerators over the common denominator (ellipsoid and polydisc only).
    pub fn raw_terms(&self) -> (&[i128], i128) {
        (&self.raw, self.den)
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }
}

/// Exact M_k for integer c, d: only m+1 <= ceil(sqrt(k+1)) or n+1 <= ceil(sqrt(k+1)) can be optimal.
fn polydisc_term(c: i128, d: i128, k: u64) -> i128 {
    let need = k + 1;
    let mut s = (need as f64).sqrt() as u64;
    while s * s < need {
        s += 1;
    }
    while s > 1 && (s - 1) * (s - 1) >= need {
        s -= 1;
    }
    let mut best = i128::MAX;
    for i in 1..=s.max(1) {
        let j = need.div_ceil(i);
        let (m, n) = ((i - 1) as i128, (j - 1) as i128);
        best = best.min(c * m + d * n).min(c * n + d * m);
    }
    best
}

/// N(a, b) through a cutoff.
pub fn ellipsoid_capacities(a: &Rational, b: &Rational, cutoff: &Cutoff) -> Result<Vec<Rational>> {
    let mut s = CapacitySequence::ellipsoid(a, b)?;
    Ok(s.take(cutoff).to_vec())
}

/// M(c, d) through a cutoff.
pub fn polydisc_capacities(c: &Rational, d: &Rational, cutoff: &Cutoff) -> Result<Vec<Rational>> {
    let mut s = CapacitySequence::polydisc(c, d)?;
    Ok(s.take(cutoff).to_vec())
}

/// Weight expansion of a rational a >= 1 from its continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightExpansion {
    pub a: Rational,
    /// (value, multiplicity), values strictly decreasing.
    pub entries: Vec<(Rational, usize)>,
    pub cf: Vec<BigInt>,
}

impl WeightExpansion {
    /// Entries expanded with multiplicity.
    pub fn flat(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(|(v, m)| std::iter::repeat(v.clone()).take(*m)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Continued fraction terms of a positive rational with last term >= 2 (unless the value is 1).
pub fn continued_fraction(a: &Rational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut num = a.numer().clone();
    let mut den = a.denom().clone();
    while !den.is_zero() {
        let (qt, r) = num.div_mod_floor(&den);
        out.push(qt);
        num = den;
        den = r;
    }
    // merge a trailing 1 into its predecessor
    if out.len() >= 2 && out.last().map(|x| x.is_one()).unwrap_or(false) {
        out.pop();
        *out.last_mut().unwrap() += 1;
    }
    out
}

/// The weight sequence W(a): X_{-1} = a, X_0 = 1, X_{i+1} = X_{i-1} - l_i X_i,
/// with X_i repeated l_i times.
pub fn weight_sequence(a: &Rational) -> Result<WeightExpansion> {
    if *a < Rational::one() {
        return Err(Error::Domain(format!("weight sequence needs a >= 1, got {a}")));
    }
    let cf = continued_fraction(a);
    let mut entries = Vec::with_capacity(cf.len());
    let mut prev = a.clone();
    let mut cur = Rational::one();
    for l in &cf {
        let mult = l.to_usize().ok_or_else(|| Error::Domain("continued fraction term too large".into()))?;
        entries.push((cur.clone(), mult));
        let next = &prev - &(&Rational::from_int(l.clone()) * &cur);
        prev = cur;
        cur = next;
    }
    let w = WeightExpansion { a: a.clone(), entries, cf };
    debug_assert!(weight_identities_hold(&w));
    Ok(w)
}

/// Sum of squares equals a and sum equals a + 1 - 1/q.
pub fn weight_identities_hold(w: &WeightExpansion) -> bool {
    let sq: Rational = w.entries.iter().map(|(v, m)| v.square() * Rational::from(*m)).sum();
    let s: Rational = w.entries.iter().map(|(v, m)| v * &Rational::from(*m)).sum();
    let expect = &w.a + &Rational::one() - Rational::new(BigInt::one(), w.a.denom().clone());
    sq == w.a && s == expect
}

/// (s1 # s2)_k = max over i + j = k of s1_i + s2_j, for k <= upto.
pub fn sharp(s1: &mut CapacitySequence, s2: &mut CapacitySequence, upto: usize) -> CapacitySequence {
    let a: Vec<Rational> = s1.take(&Cutoff::Index(upto)).to_vec();
    let b: Vec<Rational> = s2.take(&Cutoff::Index(upto)).to_vec();
    CapacitySequence::fixed(sharp_terms(&a, &b, upto))
}

/// Sup-convolution of two materialized prefixes.
pub fn sharp_terms(a: &[Rational], b: &[Rational], upto: usize) -> Vec<Rational> {
    let n = (upto + 1).min(a.len() + b.len() - 1);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let best = (lo..=hi).map(|i| &a[i] + &b[k - i]).max().expect("nonempty range");
        out.push(best);
    }
    out
}

/// Compare termwise through `upto`; report the smallest violating index.
pub fn sequence_leq(lhs: &mut CapacitySequence, rhs: &mut CapacitySequence, upto: usize) -> (bool, Option<usize>) {
    for k in 0..=upto {
        let l = lhs.term(k);
        let r = rhs.term(k);
        if l > r {
            return (false, Some(k));
        }
    }
    (true, None)
}

/// As `sequence_leq` with the right side scaled by a field element: N_k <= lam * M_k.
pub fn sequence_leq_scaled(
    lhs: &mut CapacitySequence,
    lam: &QuadExt,
    rhs: &mut CapacitySequence,
    upto: usize,
) -> (bool, Option<usize>) {
    for k in 0..=upto {
        let l = lhs.term(k);
        let r = rhs.term(k);
        if scaled_cmp(&l, lam, &r) == std::cmp::Ordering::Greater {
            return (false, Some(k));
        }
    }
    (true, None)
}

/// Ordering of n against lam * m.
pub fn scaled_cmp(n: &Rational, lam: &QuadExt, m: &Rational) -> std::cmp::Ordering {
    match lam.as_rational() {
        Some(l) => n.cmp(&(l * m)),
        None => {
            let diff = lam.scale(m).scale(&-Rational::one()).add_rational(n);
            diff.signum().cmp(&0)
        }
    }
}
