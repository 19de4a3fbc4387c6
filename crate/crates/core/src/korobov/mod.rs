//! Trigonometric polynomials on the torus, Korobov norms and the zeta
//! constants that appear in the error formulas.

mod index;
mod poly;
mod zeta;

pub use index::{MultiIndex, DEFAULT_MAGNITUDE_CAP};
pub use poly::{korobov_weight, FourierPolynomial, PolynomialWire, Smoothness};
pub use zeta::{truncated_bracket, truncation_index, zeta};
