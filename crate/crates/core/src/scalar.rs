//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the library is generic over.
///
/// Implemented for `f32` and `f64`. The accuracy targets quoted throughout the
/// crate (1e-12 and friends) assume `f64`; `f32` works but only to its own
/// precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    /// Euler–Mascheroni constant.
    fn euler_gamma() -> Self {
        lit(0.577_215_664_901_532_9)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline(always)]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a count into the working scalar.
#[inline(always)]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// Lossy conversion used at serialization boundaries.
#[inline(always)]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
