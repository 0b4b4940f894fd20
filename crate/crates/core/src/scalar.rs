//! Floating-point scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// A real floating-point type usable by the numeric kernels (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal, saturating to infinity when out of range.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| {
            if x.is_sign_negative() {
                Self::neg_infinity()
            } else {
                Self::infinity()
            }
        })
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Absolute-plus-relative comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            abs: T::lit(1e-9),
            rel: T::lit(1e-6),
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Self {
        Self { abs, rel }
    }

    /// Allowed slack when comparing against a reference of magnitude `scale`.
    #[inline]
    pub fn slack(&self, scale: T) -> T {
        self.abs + self.rel * scale.abs()
    }

    /// `a <= b` up to the tolerance.
    #[inline]
    pub fn le(&self, a: T, b: T) -> bool {
        a <= b + self.slack(a.abs().max(b.abs()))
    }

    #[inline]
    pub fn close(&self, a: T, b: T) -> bool {
        (a - b).abs() <= self.slack(a.abs().max(b.abs()))
    }
}

/// Relative error of `value` against `reference`, falling back to absolute
/// error when the reference is zero.
pub fn relative_error<T: Scalar>(value: T, reference: T) -> T {
    let diff = (value - reference).abs();
    if reference == T::zero() {
        diff
    } else {
        diff / reference.abs()
    }
}
