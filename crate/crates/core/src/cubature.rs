//! Cubature rules `A(f) = Σ_n w_n f(t_n)`, the `2^d`-point product
//! rectangle rule, its folded `N*`-point form on invariant functions, and
//! the rectangle rule's worst-case error.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::korobov::{truncated_bracket, zeta, FourierPolynomial, Smoothness};
use crate::scalar::Real;
use crate::symmetry::InvariancePattern;

/// Default bound on node counts.
pub const DEFAULT_NODE_CAP: u64 = 1 << 26;

/// Nodes per reduction chunk in [`CubatureRule::apply`].
const APPLY_CHUNK: usize = 256;

/// A linear cubature rule on `[0,1)^d`. `N = 0` is the zero algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RuleWire<T>",
    into = "RuleWire<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct CubatureRule<T> {
    dim: usize,
    nodes: Vec<Vec<T>>,
    weights: Vec<Complex<T>>,
}

impl<T: Real> CubatureRule<T> {
    pub fn new(dim: usize, nodes: Vec<Vec<T>>, weights: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("rule dimension must be at least 1".into()));
        }
        if nodes.len() != weights.len() {
            return Err(Error::Invalid(format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        for (n, t) in nodes.iter().enumerate() {
            if t.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.len(),
                });
            }
            if let Some(x) = t.iter().find(|&&x| !(x >= T::zero() && x < T::one())) {
                return Err(Error::Invalid(format!("node {n} has coordinate {x} outside [0,1)")));
            }
        }
        Ok(Self { dim, nodes, weights })
    }

    /// `A_{0,d} ≡ 0`.
    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, vec![], vec![])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Complex<T>] {
        &self.weights
    }

    /// `Σ_n |w_n|`.
    pub fn weight_abs_sum(&self) -> T {
        self.weights.iter().map(|w| w.norm()).fold(T::zero(), |a, b| a + b)
    }

    /// `Σ_n w_n f(t_n)`.
    ///
    /// Nodes are reduced in fixed chunks whose partial sums are then added in
    /// order, so the result does not depend on how many threads run.
    pub fn apply(&self, f: &FourierPolynomial<T>) -> Result<Complex<T>> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        let partials: Vec<Complex<T>> = self
            .nodes
            .par_chunks(APPLY_CHUNK)
            .zip(self.weights.par_chunks(APPLY_CHUNK))
            .map(|(nodes, weights)| {
                nodes.iter().zip(weights).fold(Complex::default(), |acc, (t, w)| {
                    acc + *w * f.eval(t).expect("dimension checked")
                })
            })
            .collect();
        Ok(partials.into_iter().fold(Complex::default(), |a, b| a + b))
    }
}

/// `R_{2^d}`: nodes `j/2` for `j ∈ {0,1}^d` in lexicographic order, weights `2^{-d}`.
pub fn rectangle_rule<T: Real>(dim: usize, cap: u64) -> Result<CubatureRule<T>> {
    if dim == 0 {
        return Err(Error::Invalid("rule dimension must be at least 1".into()));
    }
    if dim >= 64 || (1u64 << dim) > cap {
        return Err(Error::CapExceeded {
            what: "rectangle rule",
            requested: (BigUint::from(1u32) << dim).to_string(),
            cap,
        });
    }
    let count = 1usize << dim;
    let half = T::of(0.5);
    let nodes = (0..count)
        .map(|j| {
            (0..dim)
                .map(|m| if (j >> (dim - 1 - m)) & 1 == 1 { half } else { T::zero() })
                .collect()
        })
        .collect();
    let w = Complex::new(T::one() / T::of_usize(count), T::zero());
    CubatureRule::new(dim, nodes, vec![w; count])
}

/// Exact folded weights `orbit_size(k) / 2^d` for `k ∈ ∇`, in `∇` order.
pub fn folded_weights_exact(p: &InvariancePattern, cap: u64) -> Result<Vec<BigRational>> {
    check_folded_cap(p, cap)?;
    let denom = BigInt::from(1u32) << p.dim();
    p.nabla()
        .map(|k| {
            let size = p.orbit_stats(&k)?.orbit_size;
            Ok(BigRational::new(BigInt::from(size), denom.clone()))
        })
        .collect()
}

fn check_folded_cap(p: &InvariancePattern, cap: u64) -> Result<()> {
    let n = p.n_star();
    if n > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "folded rectangle rule",
            requested: n.to_string(),
            cap,
        });
    }
    Ok(())
}

/// The `N*`-point rule: one node `k/2` per `k ∈ ∇`, weighted by the orbit
/// share `#S / (2^d M(k)!)`. On invariant functions it reproduces
/// [`rectangle_rule`] exactly.
pub fn folded_rectangle_rule<T: Real>(p: &InvariancePattern, cap: u64) -> Result<CubatureRule<T>> {
    let weights = folded_weights_exact(p, cap)?;
    let half = T::of(0.5);
    let nodes = p
        .nabla()
        .map(|k| {
            k.as_slice()
                .iter()
                .map(|&e| if e == 1 { half } else { T::zero() })
                .collect()
        })
        .collect();
    let weights = weights
        .iter()
        .map(|w| Complex::new(T::of(w.to_f64().expect("weight in [0,1]")), T::zero()))
        .collect();
    CubatureRule::new(p.dim(), nodes, weights)
}

/// Worst-case error of the rectangle rule, evaluated two ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// `(1 + ζ(α)/2^{α-1})^d - 1`.
    pub closed_form: f64,
    /// Truncated sum over the nonzero even sublattice `(2Z)^d \ {0}`.
    pub oracle_value: f64,
    /// Half-width of the interval the truncation leaves the oracle in.
    pub tail_bound: f64,
    /// Terms kept per dimension by the oracle.
    pub oracle_terms: u64,
}

impl ErrorReport {
    pub fn agrees(&self) -> bool {
        (self.closed_form - self.oracle_value).abs() <= self.tail_bound
    }
}

const MAX_ORACLE_TERMS: u64 = 10_000_000;

/// `Δ^wor(R_{2^d})` on the Korobov unit ball.
///
/// The oracle sums `Π_m max(1,|k_m|)^{-α}` over nonzero `k ∈ (2Z)^d`
/// dimension by dimension: each factor is `1 + 2·Σ_{j≥1} (2j)^{-α}`, and
/// the inner series is truncated with an integral-test bracket.
pub fn wce_rectangle<T: Real>(dim: usize, alpha: Smoothness<T>, tol: f64) -> Result<ErrorReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let a = alpha.get().as_f64();
    let d = dim as f64;
    let z: f64 = zeta(a, tol / (4.0 * d))?;
    let scale = 2f64.powf(1.0 - a);
    let closed_form = (d * (scale * z).ln_1p()).exp_m1();

    let terms = (tol.powf(-1.0 / a).ceil() as u64).clamp(16, MAX_ORACLE_TERMS);
    let (lo, hi) = truncated_bracket(a, terms);
    let lift = |zeta_value: f64| (d * (scale * zeta_value).ln_1p()).exp_m1();
    let mid = 0.5 * (lo + hi);
    let oracle_value = lift(mid);
    let rounding = 8.0 * f64::EPSILON * d * (1.0 + oracle_value);
    let tail_bound = (lift(hi) - oracle_value).max(oracle_value - lift(lo)) + rounding;
    Ok(ErrorReport {
        closed_form,
        oracle_value,
        tail_bound,
        oracle_terms: terms,
    })
}

/// Worst-case error of the zero algorithm, `sup_{‖f‖≤1} |f̂(0)| = 1`.
pub fn initial_error<T: Real>(_alpha: Smoothness<T>) -> T {
    T::one()
}

#[derive(Serialize, Deserialize)]
struct WeightWire<T> {
    re: T,
    im: T,
}

#[derive(Serialize, Deserialize)]
#[doc(hidden)]
pub struct RuleWire<T> {
    dim: usize,
    nodes: Vec<Vec<T>>,
    weights: Vec<WeightWire<T>>,
}

impl<T: Real> TryFrom<RuleWire<T>> for CubatureRule<T> {
    type Error = Error;

    fn try_from(w: RuleWire<T>) -> Result<Self> {
        let weights = w.weights.into_iter().map(|c| Complex::new(c.re, c.im)).collect();
        Self::new(w.dim, w.nodes, weights)
    }
}

impl<T: Real> From<CubatureRule<T>> for RuleWire<T> {
    fn from(r: CubatureRule<T>) -> Self {
        RuleWire {
            dim: r.dim,
            nodes: r.nodes,
            weights: r.weights.into_iter().map(|c| WeightWire { re: c.re, im: c.im }).collect(),
        }
    }
}
