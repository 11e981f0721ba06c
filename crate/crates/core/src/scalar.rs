//! Scalars for the two computation modes.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. [`Rational`]
//! gives exact arithmetic, where "zero" means exactly zero and every
//! certificate is a literal identity. `f64` is the fast mode, where zero
//! tests are made against a [`Tolerance`].

use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Absolute threshold used by float mode when deciding that a quantity
/// vanishes. Exact mode ignores it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Field operations plus the zero test that depends on the mode.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + crate::linalg::KernelMethod
{
    /// True for the exact rational mode.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// Whether the value counts as zero under `tol`.
    fn is_negligible(&self, tol: Tolerance) -> bool;

    /// Absolute value as an `f64`, used for residual reporting.
    fn magnitude(&self) -> f64;

    /// Sign after the zero test: -1, 0 or 1.
    fn signum_tol(&self, tol: Tolerance) -> i32;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_negligible(&self, _tol: Tolerance) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn signum_tol(&self, _tol: Tolerance) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, tol: Tolerance) -> bool {
        libm::fabs(*self) <= tol.0
    }

    fn magnitude(&self) -> f64 {
        libm::fabs(*self)
    }

    fn signum_tol(&self, tol: Tolerance) -> i32 {
        if self.is_negligible(tol) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
}

/// `p/q` as a rational; panics if `q == 0`.
pub fn q(p: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(den))
}

/// Largest magnitude in a slice, `0.0` when empty.
pub fn max_magnitude<'a, S: Scalar + 'a>(values: impl IntoIterator<Item = &'a S>) -> f64 {
    values
        .into_iter()
        .map(Scalar::magnitude)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_canonical() {
        let a = q(6, -4);
        assert_eq!(a, q(-3, 2));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn zero_tests_follow_mode() {
        let tol = Tolerance(1e-6);
        assert!(1e-7f64.is_negligible(tol));
        assert!(!1e-5f64.is_negligible(tol));
        assert!(!q(1, 1_000_000_000).is_negligible(tol));
        assert!(Rational::zero().is_negligible(tol));
    }

    #[test]
    fn signum_respects_tolerance() {
        let tol = Tolerance::DEFAULT;
        assert_eq!(q(-1, 3).signum_tol(tol), -1);
        assert_eq!((1e-12f64).signum_tol(tol), 0);
        assert_eq!(2.0f64.signum_tol(tol), 1);
    }
}
