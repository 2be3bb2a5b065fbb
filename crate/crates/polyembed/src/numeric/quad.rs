use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 10_000;

/// Exact element `rat + coeff * sqrt(disc)` of a real quadratic field.
///
/// The discriminant is kept as a positive integer with small square factors
/// pulled out. A value with `coeff == 0` is a plain rational and carries
/// `disc == 1`; such values combine with any field.
#[derive(Clone, Eq, Hash)]
pub struct QuadExt {
    rat: Rational,
    coeff: Rational,
    disc: BigInt,
}

/// Split n > 0 as s^2 * r with small square factors moved into s.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        if p2 > rest {
            break;
        }
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            outside *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        outside *= &r;
        rest = BigInt::one();
    }
    (outside, rest)
}

impl QuadExt {
    pub fn from_rational(r: Rational) -> Self {
        QuadExt { rat: r, coeff: Rational::zero(), disc: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// Build `rat + coeff*sqrt(disc)` for a positive rational disc, normalizing.
    pub fn new(rat: Rational, coeff: Rational, disc: &Rational) -> Result<Self> {
        if !disc.is_positive() {
            return Err(Error::Domain(format!("discriminant must be positive, got {disc}")));
        }
        if coeff.is_zero() {
            return Ok(Self::from_rational(rat));
        }
        // sqrt(u/v) = sqrt(u*v)/v
        let uv = disc.numer() * disc.denom();
        let (s, r) = extract_square(&uv);
        let c = coeff * Rational::new(s, disc.denom().clone());
        if r.is_one() {
            Ok(Self::from_rational(rat + c))
        } else {
            Ok(QuadExt { rat, coeff: c, disc: r })
        }
    }

    /// Exact square root of a positive rational.
    pub fn sqrt_of(x: &Rational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::Domain(format!("square root of nonpositive value {x}")));
        }
        Self::new(Rational::zero(), Rational::one(), x)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.rat)
        } else {
            None
        }
    }

    fn with_disc(rat: Rational, coeff: Rational, disc: &BigInt) -> Self {
        if coeff.is_zero() {
            Self::from_rational(rat)
        } else {
            QuadExt { rat, coeff, disc: disc.clone() }
        }
    }

    /// Express both operands over a common discriminant.
    fn align(&self, other: &QuadExt) -> Result<(Rational, Rational, Rational, Rational, BigInt)> {
        if self.is_rational() || other.is_rational() || self.disc == other.disc {
            let d = if self.is_rational() { other.disc.clone() } else { self.disc.clone() };
            return Ok((self.rat.clone(), self.coeff.clone(), other.rat.clone(), other.coeff.clone(), d));
        }
        let prod = &self.disc * &other.disc;
        let k = prod.sqrt();
        if &k * &k != prod {
            return Err(Error::IncompatibleField(self.disc.to_string(), other.disc.to_string()));
        }
        // sqrt(D2) = k / D1 * sqrt(D1)
        if self.disc <= other.disc {
            let f = Rational::new(k, self.disc.clone());
            Ok((self.rat.clone(), self.coeff.clone(), other.rat.clone(), &other.coeff * &f, self.disc.clone()))
        } else {
            let f = Rational::new(k, other.disc.clone());
            Ok((self.rat.clone(), &self.coeff * &f, other.rat.clone(), other.coeff.clone(), other.disc.clone()))
        }
    }

    pub fn compatible(&self, other: &QuadExt) -> bool {
        self.align(other).is_ok()
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<Self> {
        let (a, b, c, d, disc) = self.align(other)?;
        Ok(Self::with_disc(a + c, b + d, &disc))
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<Self> {
        let (a, b, c, d, disc) = self.align(other)?;
        Ok(Self::with_disc(a - c, b - d, &disc))
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<Self> {
        let (a, b, c, d, disc) = self.align(other)?;
        let dr = Rational::from_int(disc.clone());
        let rat = &a * &c + &(&b * &d) * &dr;
        let coeff = &a * &d + &b * &c;
        Ok(Self::with_disc(rat, coeff, &disc))
    }

    pub fn checked_div(&self, other: &QuadExt) -> Result<Self> {
        let (a, b, c, d, disc) = self.align(other)?;
        let dr = Rational::from_int(disc.clone());
        let norm = &c * &c - &(&d * &d) * &dr;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (a + b r)(c - d r) / (c^2 - d^2 D)
        let rat = (&a * &c - &(&b * &d) * &dr) / &norm;
        let coeff = (&b * &c - &a * &d) / &norm;
        Ok(Self::with_disc(rat, coeff, &disc))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::with_disc(&self.rat * r, &self.coeff * r, &self.disc)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::with_disc(&self.rat + r, self.coeff.clone(), &self.disc)
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same field")
    }

    pub fn recip(&self) -> Result<Self> {
        QuadExt::one().checked_div(self)
    }

    /// Sign of the real value, decided exactly.
    pub fn signum(&self) -> i32 {
        let r = self.rat.signum();
        let s = self.coeff.signum();
        if s == 0 {
            return r;
        }
        if r == 0 || r == s {
            return s;
        }
        // opposite signs: compare r^2 with s^2 D
        let lhs = self.rat.square();
        let rhs = self.coeff.square() * Rational::from_int(self.disc.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => r,
            Ordering::Less => s,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coeff.is_zero()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rat.floor();
        }
        // |coeff| sqrt(D) = sqrt(y) lies in [h/2, h/2 + 1/2) with h = isqrt(floor(4y))
        let y = self.coeff.square() * Rational::from_int(self.disc.clone());
        let h = (y * Rational::from_int(4)).floor().sqrt();
        let half = Rational::new(h, 2);
        let approx = if self.coeff.is_positive() { &self.rat + &half } else { &self.rat - &half };
        // value lies within 1/2 of approx, so floor is one of three integers
        let base = approx.floor();
        for cand in [&base + 1, base.clone(), &base - 1] {
            let diff = self.add_rational(&-Rational::from_int(cand.clone()));
            if diff.signum() >= 0 {
                return cand;
            }
        }
        unreachable!("floor bracket")
    }

    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.disc.to_f64().unwrap_or(f64::NAN);
        self.rat.to_f64() + self.coeff.to_f64() * d.sqrt()
    }

    /// Compare with sqrt(x) for a nonnegative rational x.
    pub fn cmp_sqrt(&self, x: &Rational) -> Ordering {
        assert!(!x.is_negative(), "sqrt of negative value");
        if self.is_negative() {
            return Ordering::Less;
        }
        // both sides nonnegative: compare squares
        let sq = self.square();
        match sq.as_rational() {
            Some(r) => r.cmp(x),
            None => {
                let diff = sq.add_rational(&-x.clone());
                diff.signum().cmp(&0)
            }
        }
    }
}

/// Total order on a common field; errors when the fields differ.
pub fn quad_compare(u: &QuadExt, v: &QuadExt) -> Result<Ordering> {
    let d = u.checked_sub(v)?;
    Ok(d.signum().cmp(&0))
}

/// Square root of a positive rational as a field element.
pub fn quad_sqrt_of_rational(x: &Rational) -> Result<QuadExt> {
    QuadExt::sqrt_of(x)
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        matches!(quad_compare(self, other), Ok(Ordering::Equal))
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        quad_compare(self, other).ok()
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl From<&Rational> for QuadExt {
    fn from(r: &Rational) -> Self {
        QuadExt::from_rational(r.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.coeff, self.disc)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts "p/q" or "p/q + r/s*sqrt(u/v)" (also "sqrt(u/v)" alone).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(pos) = s.find("sqrt(") else {
            return Ok(QuadExt::from_rational(s.parse()?));
        };
        let bad = || Error::Parse(format!("not a quadratic value: {s:?}"));
        let inner_end = s[pos..].find(')').ok_or_else(bad)? + pos;
        if inner_end + 1 != s.len() {
            return Err(bad());
        }
        let disc: Rational = s[pos + 5..inner_end].parse()?;
        let head = s[..pos].trim_end();
        let head = head.strip_suffix('*').unwrap_or(head).trim_end();
        // split head into "rat + coeff" or just "coeff"
        let (rat, coeff) = match head.rfind(" + ").or_else(|| head.rfind(" - ")) {
            Some(i) => {
                let neg = &head[i..i + 3] == " - ";
                let rat: Rational = head[..i].parse()?;
                let c: Rational = head[i + 3..].parse()?;
                (rat, if neg { -c } else { c })
            }
            None if head.is_empty() => (Rational::zero(), Rational::one()),
            None if head == "-" => (Rational::zero(), -Rational::one()),
            None => (Rational::zero(), head.parse()?),
        };
        QuadExt::new(rat, coeff, &disc)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::with_disc(-self.rat, -self.coeff, &self.disc)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

// Operator forms panic on mismatched fields; use the checked_* methods
// when operands may come from different fields.
macro_rules! qop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
    };
}
qop!(Add, add, checked_add);
qop!(Sub, sub, checked_sub);
qop!(Mul, mul, checked_mul);
qop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn qe(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        let r2 = QuadExt::sqrt_of(&q(2, 1)).unwrap();
        assert_eq!(quad_compare(&r2, &QuadExt::one()).unwrap(), Ordering::Greater);
        let three = QuadExt::from_rational(q(3, 1));
        let two_r2 = r2.scale(&q(2, 1));
        assert_eq!(quad_compare(&three, &two_r2).unwrap(), Ordering::Greater);
    }

    #[test]
    fn square_disc_collapses() {
        let v = QuadExt::new(q(5, 2), q(1, 1), &q(25, 16)).unwrap();
        assert!(v.is_rational());
        assert_eq!(v.as_rational().unwrap(), &q(15, 4));
        assert_eq!(QuadExt::sqrt_of(&q(1, 1)).unwrap(), QuadExt::one());
    }

    #[test]
    fn sqrt_of_25_26() {
        let v = QuadExt::sqrt_of(&q(25, 26)).unwrap();
        assert_eq!(v.square().as_rational().unwrap(), &q(25, 26));
        assert_eq!(v.disc(), &BigInt::from(26));
        assert_eq!(v.coeff(), &q(5, 26));
    }

    #[test]
    fn incompatible_fields() {
        let a = QuadExt::sqrt_of(&q(2, 1)).unwrap();
        let b = QuadExt::sqrt_of(&q(3, 1)).unwrap();
        assert!(matches!(quad_compare(&a, &b), Err(Error::IncompatibleField(_, _))));
        assert_eq!(a.partial_cmp(&b), None);
        // sqrt(8) = 2 sqrt(2) is in the same field
        let c = QuadExt::sqrt_of(&q(8, 1)).unwrap();
        assert_eq!(quad_compare(&c, &a.scale(&q(2, 1))).unwrap(), Ordering::Equal);
    }

    #[test]
    fn division_and_floor() {
        let r2 = QuadExt::sqrt_of(&q(2, 1)).unwrap();
        let x = QuadExt::one() + r2.clone();
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, QuadExt::one());
        assert_eq!(x.floor(), BigInt::from(2));
        assert_eq!((-x.clone()).floor(), BigInt::from(-3));
        assert_eq!(x.ceil(), BigInt::from(3));
        // exact integer value
        let t = QuadExt::sqrt_of(&q(9, 4)).unwrap();
        assert_eq!(t.floor(), BigInt::from(1));
    }

    #[test]
    fn text_roundtrip() {
        for s in ["3/2", "1/2 + 3/4*sqrt(26)", "0 + 1*sqrt(2)", "-1 + -2/3*sqrt(13)"] {
            let v = qe(s);
            assert_eq!(qe(&v.to_string()), v);
        }
        assert_eq!(qe("sqrt(25/26)"), QuadExt::sqrt_of(&q(25, 26)).unwrap());
        assert_eq!(qe("2 - 1*sqrt(2)"), QuadExt::from_rational(q(2, 1)) - QuadExt::sqrt_of(&q(2, 1)).unwrap());
    }

    #[test]
    fn cmp_sqrt_helper() {
        let v = QuadExt::from_rational(q(26, 25));
        assert_eq!(v.cmp_sqrt(&q(676, 625)), Ordering::Equal);
        assert_eq!(v.cmp_sqrt(&q(27, 25)), Ordering::Greater);
        let w = QuadExt::sqrt_of(&q(2, 1)).unwrap();
        assert_eq!(w.cmp_sqrt(&q(2, 1)), Ordering::Equal);
        assert_eq!(w.cmp_sqrt(&q(3, 1)), Ordering::Less);
    }
}
