//! Floating-point scalar abstraction: the whole library is generic over `f32`/`f64`.

use std::fmt;

use num_traits::{Float, FloatConst};

/// Floating-point scalar for all simulation math: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + fmt::Debug + fmt::Display + 'static {}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts a literal or integer count into the scalar type.
#[inline]
pub(crate) fn cast<T: Scalar>(x: impl num_traits::ToPrimitive) -> T {
    <T as num_traits::NumCast>::from(x).expect("value must be representable in the scalar type")
}

/// An absolute tolerance that never drops below a few machine epsilons.
///
/// Guards specified for f64 (e.g. the 1e-9 Bloch-ball slack) would be tighter
/// than rounding noise in f32; the epsilon floor keeps them meaningful there
/// while leaving the f64 values exactly as specified.
#[inline]
pub(crate) fn guarded_tol<T: Scalar>(base: f64) -> T {
    cast::<T>(base).max(T::epsilon() * cast::<T>(32.0))
}
