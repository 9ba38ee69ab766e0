//! The scalar abstraction every numerical routine in the crate is written against.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Signed};

/// Real scalar type usable by the library.
///
/// Blanket-implemented for any IEEE-like float that also knows its constants,
/// so `f32`, `f64` and extended-precision float types all qualify. Tables
/// stored as `f64` literals (zeta values, Bernoulli numbers) cap the accuracy
/// of the routines that read them at `f64` precision regardless of `T`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Signed + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts an integer count into `Self`.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    /// Lossy conversion back to `f64`, used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Signed + Debug + Display + Default + Send + Sync + 'static
{
}
