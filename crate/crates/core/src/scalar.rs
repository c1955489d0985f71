use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` constant.
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("f64 constant representable")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
