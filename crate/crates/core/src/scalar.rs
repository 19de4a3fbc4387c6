//! Scalar abstractions.
//!
//! Floating-point code is written against [`Real`] so it runs in `f32` or
//! `f64`. Weight orderings only need comparison and multiplication, so they
//! are written against [`Weight`], which exact rationals also satisfy.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Mul;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, One, ToPrimitive, Zero};

/// Floating point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from f64 (panics only if the target cannot hold a finite f64 at all).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable in every Real")
    }

    /// `tol`, raised to a few hundred ulps when the type is too coarse to meet it.
    fn tol(tol: f64) -> Self {
        Self::of(tol).max(Self::epsilon() * Self::of(256.0))
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Anything that can serve as a product weight: totally ordered enough to sort,
/// closed under multiplication, with 0 and 1.
pub trait Weight: Clone + PartialOrd + Zero + One + Mul<Output = Self> + Debug {}

impl<T> Weight for T where T: Clone + PartialOrd + Zero + One + Mul<Output = T> + Debug {}
