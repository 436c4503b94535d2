//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the solvers are generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in target float")
    }

    /// Converts an integer count into `Self`.
    fn count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in target float")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest `x` for which `exp(-x)` is still a normal number.
    fn underflow_exponent() -> Self {
        -Self::min_positive_value().ln()
    }
}

impl Real for f32 {}
impl Real for f64 {}
