//! Exact scalars in `Q` or a quadratic extension `Q(√d)`.
//!
//! A [`Scalar`] stores `a + b√d` with `a, b` reduced fractions and `d` a
//! square-free integer. Purely rational values keep `b = 0` and `d = 0`, so
//! they mix freely with elements of any extension. Mixing two different
//! extensions is a programming error and panics.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rationals.
pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    d: i64,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Square-free and not a perfect square (so `√d` is irrational).
pub fn valid_extension(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: Rational::zero(), b: Rational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { a: rat(n), b: Rational::zero(), d: 0 }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar { a: Rational::new(BigInt::from(p), BigInt::from(q)), b: Rational::zero(), d: 0 }
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero(), d: 0 }
    }

    /// `a + b√d`. Panics when `d` is not a valid extension parameter and `b ≠ 0`.
    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() {
            return Scalar::from_rational(a);
        }
        assert!(valid_extension(d), "√{d} does not define a quadratic extension");
        Scalar { a, b, d }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: i64) -> Self {
        Scalar::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The extension this element lives in, `None` for rationals.
    pub fn extension(&self) -> Option<i64> {
        if self.d == 0 {
            None
        } else {
            Some(self.d)
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_rational() && self.a.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d b²` (equals `x·conj(x)`).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(self.d) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Scalar::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Some(Scalar::quadratic(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn join(&self, other: &Scalar) -> i64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("cannot combine elements of Q(√{x}) and Q(√{y})"),
        }
    }

    fn canon(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: 0 }
        } else {
            Scalar { a, b, d }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(a: Rational) -> Self {
        Scalar::from_rational(a)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            return Scalar::from_rational(&self.a + &rhs.a);
        }
        let d = self.join(rhs);
        Scalar::canon(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            return Scalar::from_rational(&self.a - &rhs.a);
        }
        let d = self.join(rhs);
        Scalar::canon(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = self.join(rhs);
        let a = &self.a * &rhs.a + rat(d) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::canon(a, b, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            assert!(!rhs.a.is_zero(), "division by zero");
            return Scalar::from_rational(&self.a / &rhs.a);
        }
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.d == 0 && rhs.d == 0 {
            self.a += &rhs.a;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.d == 0 && rhs.d == 0 {
            self.a -= &rhs.a;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return fmt_rational(&self.a, f);
        }
        if !self.a.is_zero() {
            fmt_rational(&self.a, f)?;
            f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.b.abs(), f)?;
        } else {
            fmt_rational(&self.b, f)?;
        }
        write!(f, "*sqrt({})", self.d)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `r/s*sqrt(d)` and `p/q±r/s*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(star) = s.find("*sqrt(") else {
            return parse_rational(&s).map(Scalar::from_rational);
        };
        let tail = &s[star + "*sqrt(".len()..];
        let d: i64 =
            tail.strip_suffix(')').and_then(|x| x.parse().ok()).ok_or_else(|| Error::Parse(format!("invalid radical in `{s}`")))?;
        if !valid_extension(d) {
            return Err(Error::Parse(format!("sqrt({d}) is not a quadratic extension")));
        }
        let head = &s[..star];
        // split at the last sign that is not leading and not inside an exponent
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, parse_rational(head[i..].trim_start_matches('+'))?),
            None => (Rational::zero(), parse_rational(head)?),
        };
        Ok(Scalar::quadratic(a, b, d))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, r: i64) -> Scalar {
        Scalar::from_frac(p, r)
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(1, 2) / q(1, 4), Scalar::from_int(2));
        assert!((q(1, 2) - q(2, 4)).is_zero());
    }

    #[test]
    fn sqrt_squares_to_d() {
        let r = Scalar::sqrt_of(2);
        assert_eq!(&r * &r, Scalar::from_int(2));
        assert!((&r * &r).is_rational());
    }

    #[test]
    fn parse_and_print() {
        for s in ["3", "-3/4", "1/2+3/5*sqrt(2)", "1/2-3/5*sqrt(-3)", "7*sqrt(5)"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1+2*sqrt(4)".parse::<Scalar>().is_err());
    }

    #[test]
    #[should_panic]
    fn different_extensions_do_not_mix() {
        let _ = Scalar::sqrt_of(2) + Scalar::sqrt_of(3);
    }

    proptest! {
        #[test]
        fn norm_identity(a in -50i64..50, b in 1i64..20, c in -50i64..50, e in 1i64..20, dd in prop::sample::select(vec![2i64, 3, 5, -1, -7])) {
            let x = Scalar::quadratic(Rational::new(a.into(), b.into()), Rational::new(c.into(), e.into()), dd);
            let prod = &x * &x.conjugate();
            prop_assert!(prod.is_rational());
            prop_assert_eq!(prod.rational_part().clone(), x.norm());
            let a2 = Rational::new(a.into(), b.into());
            let b2 = Rational::new(c.into(), e.into());
            prop_assert_eq!(x.norm(), &a2 * &a2 - rat(dd) * &b2 * &b2);
        }

        #[test]
        fn inverse_roundtrip(a in -30i64..30, c in -30i64..30) {
            let x = Scalar::quadratic(rat(a), rat(c), 2);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
