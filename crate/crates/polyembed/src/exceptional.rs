//! Class vectors (d; d1, ..., dn), the Cremona move and the reduction algorithm.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Class vector (d; d1, ..., dn). The tail is padded to at least three entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassVector {
    pub head: Rational,
    pub tail: Vec<Rational>,
}

impl ClassVector {
    pub fn new(head: Rational, mut tail: Vec<Rational>) -> Self {
        while tail.len() < 3 {
            tail.push(Rational::zero());
        }
        ClassVector { head, tail }
    }

    pub fn from_ints(head: i64, tail: &[i64]) -> Self {
        Self::new(Rational::from(head), tail.iter().map(|&x| Rational::from(x)).collect())
    }

    /// The anticanonical class -K = (3; 1, ..., 1) with n tail entries.
    pub fn anticanonical(n: usize) -> Self {
        Self::new(Rational::from(3), vec![Rational::one(); n])
    }

    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn padded(&self, n: usize) -> Self {
        let mut t = self.tail.clone();
        t.resize(n.max(t.len()), Rational::zero());
        ClassVector { head: self.head.clone(), tail: t }
    }

    pub fn is_integral(&self) -> bool {
        self.head.is_integer() && self.tail.iter().all(|x| x.is_integer())
    }

    /// Sort nonzero entries descending with zeros moved to the end.
    pub fn sorted(&self) -> Self {
        let mut nz: Vec<Rational> = self.tail.iter().filter(|x| !x.is_zero()).cloned().collect();
        nz.sort_by(|a, b| b.cmp(a));
        nz.resize(self.tail.len(), Rational::zero());
        ClassVector { head: self.head.clone(), tail: nz }
    }

    fn add(&self, other: &ClassVector) -> ClassVector {
        let n = self.len().max(other.len());
        let (x, y) = (self.padded(n), other.padded(n));
        ClassVector {
            head: &x.head + &y.head,
            tail: x.tail.iter().zip(&y.tail).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail: Vec<String> = self.tail.iter().map(|x| x.to_string()).collect();
        write!(f, "{}; {}", self.head, tail.join(","))
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for ClassVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (h, t) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("class vector needs 'd; d1,d2,...': {s:?}")))?;
        let head: Rational = h.trim().parse()?;
        let tail = t
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Rational>>>()?;
        Ok(ClassVector::new(head, tail))
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// d' = 2d - d1 - d2 - d3, d_i' = d - d_j - d_k on the first three slots.
pub fn cremona(v: &ClassVector) -> ClassVector {
    let v = v.padded(3);
    let d = &v.head;
    let (d1, d2, d3) = (&v.tail[0], &v.tail[1], &v.tail[2]);
    let head = d * &Rational::from(2) - d1 - d2 - d3;
    let mut tail = v.tail.clone();
    tail[0] = d - d2 - d3;
    tail[1] = d - d1 - d3;
    tail[2] = d - d1 - d2;
    ClassVector { head, tail }
}

/// xy - sum x_i y_i, padding the shorter tail with zeros.
pub fn product(x: &ClassVector, y: &ClassVector) -> Rational {
    let n = x.len().max(y.len());
    let (x, y) = (x.padded(n), y.padded(n));
    let dot: Rational = x.tail.iter().zip(&y.tail).map(|(a, b)| a * b).sum();
    &x.head * &y.head - dot
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub positive: bool,
    pub ordered: bool,
    pub reduced: bool,
    pub in_f: bool,
    pub in_fplus: bool,
    pub in_e: bool,
}

/// Membership flags computed from the definitions.
pub fn classify(v: &ClassVector) -> ClassFlags {
    let positive = !v.head.is_negative() && v.tail.iter().all(|x| !x.is_negative());
    let ordered = v.tail.iter().all(|x| !x.is_negative()) && *v == v.sorted();
    let p = v.padded(3);
    let reduced = positive && ordered && p.head >= &(&p.tail[0] + &p.tail[1]) + &p.tail[2];
    let k = ClassVector::anticanonical(v.len());
    let integral = v.is_integral();
    let self_prod = product(v, v);
    let k_prod = product(&k, v);
    let in_f = integral && !(&k_prod + &self_prod).is_negative();
    let in_fplus = in_f && positive;
    let in_e = integral && self_prod >= Rational::from(-1) && k_prod == Rational::one();
    ClassFlags { positive, ordered, reduced, in_f, in_fplus, in_e }
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub reduced: ClassVector,
    /// Vectors after each Cremona-then-sort step.
    pub steps: Vec<ClassVector>,
}

/// Repeated Cremona-then-sort until reduced.
pub fn reduce_class(v: &ClassVector, max_iter: usize) -> Result<Reduction> {
    let mut cur = v.sorted();
    let mut steps = Vec::new();
    if cur.head.is_negative() || cur.tail.iter().any(|x| x.is_negative()) {
        return Err(Error::NotReducible(format!("negative entries in {v}")));
    }
    for _ in 0..=max_iter {
        if classify(&cur).reduced {
            return Ok(Reduction { reduced: cur, steps });
        }
        if steps.len() == max_iter {
            break;
        }
        let next = cremona(&cur);
        if next.head.is_negative() {
            return Err(Error::NotReducible(format!("head went negative: {next}")));
        }
        if next.tail.iter().any(|x| x.is_negative()) {
            return Err(Error::NotReducible(format!("negative entry after Cremona move: {next}")));
        }
        cur = next.sorted();
        steps.push(cur.clone());
    }
    Err(Error::NotReducible(format!("no reduced form within {max_iter} steps from {v}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub product: Rational,
    /// False when the hypotheses under which the product must be nonnegative fail.
    pub constrained: bool,
}

/// Product of a reduced class with d. The product is constrained to be
/// nonnegative when x is reduced and either d is positive with -K.d >= 0 and
/// d >= max d_i, or x.x >= 0 and d is in F with d >= 0.
pub fn positivity_check(x: &ClassVector, d: &ClassVector) -> Positivity {
    let prod = product(x, d);
    let fx = classify(x);
    let fd = classify(d);
    let n = x.len().max(d.len());
    let k = ClassVector::anticanonical(n);
    let max_tail = d.tail.iter().max().cloned().unwrap_or_else(Rational::zero);
    let lemma_a = fd.positive && !product(&k, d).is_negative() && d.head >= max_tail;
    let lemma_f = fd.in_f && !d.head.is_negative() && !product(x, x).is_negative();
    Positivity { product: prod, constrained: fx.reduced && (lemma_f || lemma_a) }
}

/// Sum helper used by tests and search code.
pub fn class_sum(a: &ClassVector, b: &ClassVector) -> ClassVector {
    a.add(b)
}
