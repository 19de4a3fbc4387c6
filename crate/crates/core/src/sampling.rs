//! Seeded random inputs: invariant polynomials, arbitrary rules, admissible
//! weight schedules. Used by the benchmark, the CLI and the test suites.

use num_complex::Complex;
use rand::seq::index::sample;
use rand::Rng;

use crate::cubature::CubatureRule;
use crate::error::{Error, Result};
use crate::korobov::{FourierPolynomial, MultiIndex};
use crate::scalar::Real;
use crate::symmetry::{symmetrize, InvariancePattern};
use crate::weighted::WeightSchedule;

/// Shape of a random polynomial before symmetrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolySpec {
    /// Terms drawn before orbit averaging.
    pub terms: usize,
    /// Non-zero entries per drawn multi-index, at most.
    pub max_support: usize,
    /// `|k_m|` bound.
    pub max_freq: i64,
}

impl Default for PolySpec {
    fn default() -> Self {
        Self {
            terms: 4,
            max_support: 2,
            max_freq: 3,
        }
    }
}

fn complex_unit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(T::of(rng.gen_range(-1.0..1.0)), T::of(rng.gen_range(-1.0..1.0)))
}

/// A random polynomial with small support per term, before averaging.
pub fn random_polynomial<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize, spec: PolySpec) -> Result<FourierPolynomial<T>> {
    if spec.max_freq < 1 {
        return Err(Error::Invalid("max_freq must be at least 1".into()));
    }
    let mut f = FourierPolynomial::zero(dim)?;
    for _ in 0..spec.terms {
        let s = rng.gen_range(0..=spec.max_support.min(dim));
        let mut k = vec![0i64; dim];
        for m in sample(rng, dim, s) {
            let v = rng.gen_range(1..=spec.max_freq);
            k[m] = if rng.gen_bool(0.5) { v } else { -v };
        }
        f.add_term(MultiIndex::new(k)?, complex_unit(rng))?;
    }
    Ok(f)
}

/// A random polynomial averaged over the group of `p`.
pub fn random_invariant_polynomial<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    p: &InvariancePattern,
    spec: PolySpec,
) -> Result<FourierPolynomial<T>> {
    symmetrize(&random_polynomial(rng, p.dim(), spec)?, p)
}

/// `n` uniform nodes in `[0,1)^d` with weights uniform in the square `[-1,1]²`.
pub fn random_rule<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize, n: usize) -> Result<CubatureRule<T>> {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        nodes.push(
            (0..dim)
                .map(|_| T::of(rng.gen_range(0.0..1.0)).min(T::one() - T::epsilon()))
                .collect(),
        );
        weights.push(complex_unit(rng));
    }
    CubatureRule::new(dim, nodes, weights)
}

/// Random non-increasing gammas in `(0,1]`. With `unit_in_group` the group
/// coordinates get `γ = 1`, which needs the group to be a prefix `{1..#I}`.
pub fn random_schedule<R: Rng + ?Sized>(
    rng: &mut R,
    p: &InvariancePattern,
    unit_in_group: bool,
) -> Result<WeightSchedule<f64>> {
    let d = p.dim();
    let mut gammas: Vec<f64> = (0..d).map(|_| 1.0 - rng.gen_range(0.0..1.0)).collect();
    gammas.sort_by(|a, b| b.total_cmp(a));
    if unit_in_group {
        let group = p.single_group()?;
        if group.iter().enumerate().any(|(i, &m)| i != m) {
            return Err(Error::InvalidWeights(
                "unit in-group gammas need the group to be the leading coordinates".into(),
            ));
        }
        for g in gammas.iter_mut().take(group.len()) {
            *g = 1.0;
        }
    }
    WeightSchedule::new(gammas)
}
