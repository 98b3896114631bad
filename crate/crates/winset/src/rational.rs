//! Exact rational scalars.
//!
//! Every quantity the engine manipulates — shrink factors, interval
//! endpoints, digit shifts — is a [`Rational`] in canonical form, so every
//! comparison in the crate is an exact integer comparison.  There is no
//! floating-point mode; `to_f64` exists only so reports can print labelled
//! approximations next to the exact values.
//!
//! The wire encoding used by transcripts, configs and reports is always
//! `num/den` in canonical form (`0/1`, `-3/4`, `5/1`), which is what
//! [`std::fmt::Display`] produces and [`std::str::FromStr`] accepts (a bare
//! integer is also accepted on input).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
}

/// Arbitrary-precision rational, always reduced: the denominator is positive
/// and coprime to the numerator, with the sign carried by the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `num/den`, rejecting a zero denominator and normalizing
    /// everything else to canonical form.
    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        Self::from_big(BigInt::from(num), BigInt::from(den))
    }

    /// Same as [`Rational::new`] but over big integers.
    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    /// Panicking constructor for literals; use [`Rational::new`] for
    /// untrusted input.
    pub fn of(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer not below the value.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Fractional part in `[0, 1)`; `x - frac_part(x)` is an integer even for
    /// negative `x`, so `-1/4` maps to `3/4`.
    pub fn frac_part(&self) -> Rational {
        let fl = Rational(self.0.floor());
        self - &fl
    }

    /// Exact nonnegative integer power.
    pub fn pow(&self, exp: u32) -> Rational {
        let n = num_traits::pow(self.numer().clone(), exp as usize);
        let d = num_traits::pow(self.denom().clone(), exp as usize);
        // denominators stay positive and the operands are already coprime
        Rational(BigRational::new(n, d))
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Lossy conversion for report columns; always labelled as approximate.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

// Debug prints the same num/den form as Display so test failures read like
// transcript lines.
impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Malformed(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Self::from_big(n, d)
            }
            None => {
                let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
                Ok(Rational::from_bigint(n))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

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

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::of(n, d)
    }

    #[test]
    fn canonical_construction() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(-3, -6), r(1, 2));
        assert_eq!(r(0, 7), r(0, 1));
        assert_eq!(r(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(r(10, 4).frac_part(), r(1, 2));
        assert_eq!(r(-1, 4).frac_part(), r(3, 4));
        assert_eq!(Rational::from_int(25).frac_part(), Rational::zero());
    }

    #[test]
    fn wire_round_trip() {
        for s in ["0/1", "-3/4", "5/1", "17/24"] {
            let v: Rational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_int(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_pow() {
        assert_eq!(r(1, 4).pow(2), r(1, 16));
        assert_eq!(r(81, 100).pow(0), Rational::one());
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in -200i64..200, b in 1i64..200,
                                      c in -200i64..200, d in 1i64..200) {
            let x = r(a, b);
            let y = r(c, d);
            for v in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(v.denom().is_positive());
                prop_assert!(v.numer().gcd(v.denom()).is_one());
            }
            if !y.is_zero() {
                let q = &x / &y;
                prop_assert!(q.denom().is_positive());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }
        }

        #[test]
        fn frac_part_is_shift_invariant(a in -500i64..500, b in 1i64..100, n in -20i64..20) {
            let x = r(a, b);
            let shifted = &x + &Rational::from_int(n);
            prop_assert_eq!(x.frac_part(), shifted.frac_part());
            let f = x.frac_part();
            prop_assert!(!f.is_negative() && f < Rational::one());
            prop_assert!((&x - &f).is_integer());
        }
    }
}
