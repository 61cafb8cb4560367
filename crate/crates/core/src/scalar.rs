//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Polygon geometry (shoelace area, centroids, half-plane vertex enumeration)
//! is written once against [`Scalar`] and instantiated with [`Rational`] for
//! exact invariants and with `f64`/`f32` for the numeric lab.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

/// Arbitrary precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Ordered field used by the generic geometry routines.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {
    fn from_bigint(value: &BigInt) -> Self;

    fn from_rational(value: &Rational) -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Absolute slack used when testing a value against zero.
    /// Exact types return zero.
    fn slack() -> Self;

    fn is_exact() -> bool;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::slack()
    }

    fn of(value: i64) -> Self {
        <Self as FromPrimitive>::from_i64(value).expect("i64 fits every scalar")
    }
}

impl Scalar for Rational {
    fn from_bigint(value: &BigInt) -> Self {
        Rational::from_integer(value.clone())
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }

    fn slack() -> Self {
        Rational::from_integer(BigInt::from(0))
    }

    fn is_exact() -> bool {
        true
    }
}

macro_rules! float_scalar {
    ($t:ty, $slack:expr) => {
        impl Scalar for $t {
            fn from_bigint(value: &BigInt) -> Self {
                value.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn from_rational(value: &Rational) -> Self {
                rational_to_f64(value) as $t
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            fn slack() -> Self {
                $slack
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Floating-point scalar used by the metric lab.
pub trait RealScalar: Scalar + Float + FloatConst + Copy {}

impl<T> RealScalar for T where T: Scalar + Float + FloatConst + Copy {}

pub(crate) fn rational_to_f64(value: &Rational) -> f64 {
    // numer/denom may individually overflow f64 while the quotient does not
    match (value.numer().to_f64(), value.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = value.denom().bits().max(value.numer().bits()) as i64 - 60;
            let scale = BigInt::from(1) << shift.max(0) as usize;
            let n = (value.numer() / &scale).to_f64().unwrap_or(0.0);
            let d = (value.denom() / &scale).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
