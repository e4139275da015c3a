//! Exact scalar fields used by the linear algebra and series code.
//!
//! Everything downstream of parsing is written against [`Scalar`], so the
//! same elimination and truncated-series code runs over arbitrary-precision
//! rationals (the default, see [`crate::Q`]) or over `Ratio<i64>` when the
//! inputs are known to stay small. Floating point types are intentionally
//! not implemented: rank decisions need exact zero tests.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num + Signed + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// Embeds an integer exponent into the field.
    ///
    /// Fixed-width implementations panic if `n` does not fit.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    /// Numerator and denominator in lowest terms, denominator positive.
    fn to_fraction(&self) -> (BigInt, BigInt);
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

impl Scalar for Ratio<i64> {
    fn from_bigint(n: &BigInt) -> Self {
        let n = n
            .to_i64()
            .unwrap_or_else(|| panic!("integer {n} does not fit in Ratio<i64>"));
        Ratio::from_integer(n)
    }

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn to_fraction(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Formats a scalar as `p/q` in lowest terms, always with an explicit
/// denominator.
pub fn format_fraction<S: Scalar>(x: &S) -> String {
    let (p, q) = x.to_fraction();
    format!("{p}/{q}")
}

pub(crate) fn is_zero<S: Scalar>(x: &S) -> bool {
    Zero::is_zero(x)
}
