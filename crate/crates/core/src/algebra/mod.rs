//! Exact scalars, dense polynomials in `x`, and the factorial-type products
//! the rest of the crate is built from.

mod factorial;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use factorial::{
    binom, binom_poly, binomial, dfact, factorial, ffact_int, gfact_falling, gfact_rising,
};
pub use poly::Poly;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Coefficient ring for series and the generic factorial products.
///
/// Implemented for [`Rational`] and [`Poly`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(c: Rational) -> Self;

    fn scale(&self, c: &Rational) -> Self;

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn from_rational(c: Rational) -> Self {
        c
    }

    fn scale(&self, c: &Rational) -> Self {
        self * c
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `"p/q"` or `"p"` with an optional leading `-`. Decimal notation is
/// rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(err());
    }
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Reduced `"p/q"` form, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}
