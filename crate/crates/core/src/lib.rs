//! Integration in Korobov spaces of functions that are invariant under
//! permutations of some of their coordinates.
//!
//! The crate covers both directions of the complexity question for this
//! class: the folded rectangle rule that reaches the initial error with
//! `N* = (#I+1)·2^{d-#I}` nodes, and, for any rule with fewer nodes, an
//! explicit invariant fooling polynomial in the unit ball that the rule
//! cannot see but whose integral is 1.
//!
//! Numerics are generic over [`Real`] (`f32`, `f64`); combinatorial
//! weights are exact (`BigRational`) and rounded once. Aliases for the
//! common `f64` instantiation sit at the crate root.

pub mod bench;
pub mod cubature;
pub mod error;
pub mod fooling;
pub mod korobov;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod symmetry;
pub mod tractability;
pub mod weighted;
mod wire;

pub use cubature::{folded_rectangle_rule, rectangle_rule, wce_rectangle, CubatureRule, ErrorReport};
pub use error::{Error, Result};
pub use fooling::{construct, crosscheck_coefficients, FoolingCertificate};
pub use korobov::{zeta, FourierPolynomial, MultiIndex, Smoothness};
pub use scalar::{Real, Weight};
pub use symmetry::{enumerate_nabla, is_invariant, symmetrize, InvariancePattern};
pub use tractability::{evaluate, info_complexity_lower, InvarianceProfile, TractabilityReport};
pub use weighted::{weighted_construct, WeightSchedule};

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Smoothness64 = Smoothness<f64>;
pub type Polynomial64 = FourierPolynomial<f64>;
pub type Rule64 = CubatureRule<f64>;
pub type Certificate64 = FoolingCertificate<f64>;
pub type Schedule64 = WeightSchedule<f64>;
/// Exact gammas, for checks of the weight identities in rational arithmetic.
pub type ExactSchedule = WeightSchedule<num_rational::BigRational>;
