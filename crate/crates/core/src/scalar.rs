//! Scalar abstraction for all geometry and cost arithmetic.
//!
//! Every solver in this crate is generic over the coordinate type. `f64` is
//! the type the CLI and the experiment harness use (see the aliases at the
//! crate root); `f32` works wherever memory or bandwidth matters more than
//! the last few digits.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar usable as a coordinate / distance type.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, for constants and sampled values.
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 convertible to scalar")
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + std::iter::Sum
        + std::fmt::Debug
        + std::fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}
