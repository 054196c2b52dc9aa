//! Floating-point abstraction shared by every numeric routine in the crate.
//!
//! All model code is written against [`Scalar`], which is implemented for
//! `f32` and `f64`. Estimation, reporting and file I/O are exercised with
//! `f64`; the crate root exposes `f64` aliases for the common types.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real number type used by the choice models.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Sum
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, panicking only for values the type cannot represent.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).expect("count representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Above this argument `ln(1 + e^z)` is evaluated as `z + ln(1 + e^-z)`.
pub const SOFTPLUS_SWITCH: f64 = 30.0;

/// `ln(1 + exp(z))` without overflow.
#[inline]
pub fn softplus<T: Scalar>(z: T) -> T {
    if z > T::lit(SOFTPLUS_SWITCH) {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Logistic function `1 / (1 + exp(-z))`, the derivative of [`softplus`].
#[inline]
pub fn logistic<T: Scalar>(z: T) -> T {
    if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (T::one() + e)
    }
}

/// In-place softmax with max subtraction. Returns `false` when any input is
/// not finite, leaving `values` unspecified.
pub fn softmax_in_place<T: Scalar>(values: &mut [T]) -> bool {
    let mut max = T::neg_infinity();
    for &v in values.iter() {
        if !v.is_finite() {
            return false;
        }
        if v > max {
            max = v;
        }
    }
    let mut total = T::zero();
    for v in values.iter_mut() {
        *v = (*v - max).exp();
        total = total + *v;
    }
    for v in values.iter_mut() {
        *v = *v / total;
    }
    true
}
