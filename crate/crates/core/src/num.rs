//! Scalar abstraction for the numeric kernels.
//!
//! The pure-math pieces (schedules, clamping, update equations) are generic
//! over any IEEE float; `f64` is the concrete type used everywhere else.

use rand::distributions::uniform::SampleUniform;
use std::fmt::{Debug, Display};

/// Floating-point scalar usable in the search kernels.
pub trait Scalar:
    num_traits::Float + num_traits::FromPrimitive + SampleUniform + Debug + Display + Send + Sync
{
    fn half() -> Self {
        Self::from_f64(0.5).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
