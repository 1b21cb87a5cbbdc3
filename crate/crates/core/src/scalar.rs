//! Scalar abstraction shared by every algorithm in the crate.
//!
//! All decisions only need field operations and comparisons, so the same code
//! runs over exact rationals (the default, see [`crate::Rational`]) and over
//! `f32`/`f64` for quick approximate exploration.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field used by functionals, CDFs and the deciders.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Magnitude at or below which a value is treated as zero.
    ///
    /// Exact types return zero, which makes every comparison exact.
    fn tolerance() -> Self {
        Self::zero()
    }

    /// `true` when the type performs no rounding.
    const EXACT: bool;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).expect("integer conversion") / Self::from_i64(denom).expect("integer conversion")
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    /// Three-way sign respecting [`Scalar::tolerance`].
    fn sign(&self) -> Ordering {
        let tol = Self::tolerance();
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn is_negligible(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }
}
