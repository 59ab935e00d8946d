//! Exact rational scalars.
//!
//! [`Rational`] wraps [`num_rational::BigRational`], which keeps every value
//! in lowest terms with a positive denominator after each operation, so
//! `==` is structural equality of canonical forms.
//!
//! Text format: `p/q` with an optional leading `-`, and `/q` omitted when
//! the denominator is one (`15/8`, `-3`, `0`).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom` in canonical form.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: usize) -> Self {
        let exp = i32::try_from(exp).expect("exponent fits in i32");
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest binary64 value; saturates to ±∞ outside the finite range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Returns `m` when the value is the non-positive integer `-m`.
    pub fn as_nonpositive_integer(&self) -> Option<usize> {
        if !self.is_integer() || self.numer().sign() == Sign::Plus {
            return None;
        }
        (-self.numer()).to_usize()
    }

    /// Exact conversion from a finite binary64 value.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigUint> for Rational {
    fn from(value: BigUint) -> Self {
        Rational::from_integer(BigInt::from(value))
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(value: $t) -> Self {
                Rational::from_integer(BigInt::from(value))
            }
        }
    )*};
}

from_primitive!(i32, i64, u32, u64, usize);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(text: &str, whole: &str) -> Result<BigUint, Error> {
    if text.is_empty() {
        return Err(Error::ParseRational {
            text: whole.to_owned(),
            reason: "missing digits",
        });
    }
    if !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::ParseRational {
            text: whole.to_owned(),
            reason: "expected decimal digits",
        });
    }
    Ok(text.parse().expect("validated digits"))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (numer, denom) = match body.split_once('/') {
            Some((p, q)) => (parse_digits(p, s)?, parse_digits(q, s)?),
            None => (parse_digits(body, s)?, BigUint::one()),
        };
        if denom.is_zero() {
            return Err(Error::ParseRational {
                text: s.to_owned(),
                reason: "zero denominator",
            });
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Ok(Rational::new(
            BigInt::from_biguint(sign, numer),
            BigInt::from(denom),
        ))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident) => {
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($Trait::$method(self.0, rhs.0))
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($Trait::$method(self.0, &rhs.0))
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($Trait::$method(&self.0, rhs.0))
            }
        }
        impl $Trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($Trait::$method(&self.0, &rhs.0))
            }
        }
        impl $AssignTrait<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                $AssignTrait::$assign(&mut self.0, rhs.0);
            }
        }
        impl $AssignTrait<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                $AssignTrait::$assign(&mut self.0, &rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Parses a comma-separated list of rationals (`1/2,3,-4/5`).
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',').map(|item| item.trim().parse()).collect()
}

/// Formats rationals as a comma-separated list.
pub fn format_vector(values: &[Rational]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(Rational::new(15, 8).to_string(), "15/8");
        assert_eq!(Rational::from(-3).to_string(), "-3");
        assert_eq!(Rational::zero().to_string(), "0");
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(q("2/4"), Rational::new(1, 2));
        assert_eq!(q("-0"), Rational::zero());
        assert_eq!(q("-6/3"), Rational::from(-2));
        assert_eq!(q("0/7").denom(), &BigInt::one());
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in [
            "", "-", "1/", "/2", "1/0", "1/-2", "1.5", "a", "+1", "1/2/3", " 1",
        ] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn nonpositive_integer_detection() {
        assert_eq!(q("0").as_nonpositive_integer(), Some(0));
        assert_eq!(q("-4").as_nonpositive_integer(), Some(4));
        assert_eq!(q("3").as_nonpositive_integer(), None);
        assert_eq!(q("-1/2").as_nonpositive_integer(), None);
    }

    #[test]
    fn float_conversion() {
        assert_eq!(q("15/8").to_f64(), 1.875);
        assert_eq!(q("-1/3").to_f64(), -1.0 / 3.0);
        assert_eq!(Rational::from_f64(0.375), Some(q("3/8")));
    }

    #[test]
    fn serde_uses_text_form() {
        let json = serde_json::to_string(&q("-7/9")).unwrap();
        assert_eq!(json, "\"-7/9\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q("-7/9"));
    }

    #[test]
    fn vectors() {
        let v = parse_vector("1/2, -3,0").unwrap();
        assert_eq!(v, vec![q("1/2"), q("-3"), q("0")]);
        assert_eq!(format_vector(&v), "1/2,-3,0");
        assert!(parse_vector("1,,2").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (any::<i64>(), 1..i64::MAX).prop_map(|(p, q)| Rational::new(p, q))
        }

        proptest! {
            #[test]
            fn text_round_trip(x in rational()) {
                let back: Rational = x.to_string().parse().unwrap();
                prop_assert_eq!(back, x);
            }

            #[test]
            fn canonical_after_arithmetic(x in rational(), y in rational()) {
                use num_integer::Integer;
                for v in [&x + &y, &x - &y, &x * &y] {
                    prop_assert!(v.denom().is_positive());
                    prop_assert!(v.numer().gcd(v.denom()).is_one());
                }
            }
        }
    }
}
