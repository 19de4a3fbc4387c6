//! Lower-bound certificates.
//!
//! For a rule with fewer than `N*` nodes we build an invariant trigonometric
//! polynomial `f_N` in the Korobov unit ball that vanishes at every node
//! and has integral 1. The construction solves a homogeneous system for the
//! coefficients `a_0..a_N` of symmetrized modes `ψ(0)..ψ(N)`, multiplies by
//! the symmetrized conjugate mode of the dominant coefficient `ψ(n*)`, and
//! reads the Fourier coefficients off in closed form.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cubature::CubatureRule;
use crate::error::{Error, Result};
use crate::korobov::{FourierPolynomial, MultiIndex, Smoothness};
use crate::linalg::{nullspace, ComplexMatrix, NullspaceSolution, DEFAULT_NULLSPACE_TOL};
use crate::scalar::Real;
use crate::symmetry::{is_invariant, permute, InvariancePattern};

/// Tolerance for the vanishing, integral and norm checks (in `f32`, 256 ulps).
pub const DEFAULT_CHECK_TOL: f64 = 1e-9;

/// Tolerance for the invariance check on the emitted polynomial.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Which checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub rule_vanishes: bool,
    pub integral: bool,
    pub unit_ball: bool,
    pub ternary_support: bool,
    pub invariant: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.rule_vanishes && self.integral && self.unit_ball && self.ternary_support && self.invariant
    }
}

/// Raw quantities behind [`Checks`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals<T> {
    /// `‖M a‖_∞` of the homogeneous system.
    pub nullspace: T,
    /// `|A(f)|`.
    pub rule: T,
    /// Bound `|A(f)|` was checked against: `tol · (1 + Σ|w_n|)`.
    pub rule_bound: T,
    /// `|Int(f) - target|`; target is 1, or `ν_N` as a floor in the weighted case.
    pub integral: T,
    /// `max(0, ‖f‖ - 1)`, measured in the norm of the target space.
    pub norm_excess: T,
}

/// A fooling function together with everything needed to re-verify it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct FoolingCertificate<T> {
    pub pattern: InvariancePattern,
    pub nodes: usize,
    pub n_star: String,
    pub function: FourierPolynomial<T>,
    /// `ψ(0..=N)`.
    pub psi: Vec<MultiIndex>,
    pub solution: NullspaceSolution<T>,
    /// Factor applied to `f_N` (1 unless weighted).
    pub scale: T,
    #[serde(with = "crate::wire::complex")]
    pub rule_value: Complex<T>,
    #[serde(with = "crate::wire::complex")]
    pub integral_value: Complex<T>,
    pub norm_value: T,
    /// `|Int(f) - A(f)|`, the error the rule makes on this function.
    pub witnessed_error: T,
    pub residuals: Residuals<T>,
    pub checks: Checks,
}

impl<T: Real> FoolingCertificate<T> {
    pub fn is_valid(&self) -> bool {
        self.checks.all()
    }
}

fn group_order_real<T: Real>(p: &InvariancePattern) -> T {
    T::of(p.group_order().to_f64().unwrap_or(f64::INFINITY))
}

/// Refuses rules at or above `N*`; the lower bound does not hold there.
pub(crate) fn check_below_critical(nodes: usize, p: &InvariancePattern) -> Result<()> {
    let n_star = p.n_star();
    if BigUint::from(nodes) >= n_star {
        return Err(Error::NotBelowCritical {
            nodes,
            n_star: n_star.to_string(),
        });
    }
    Ok(())
}

fn validate_psi(p: &InvariancePattern, psi: &[MultiIndex]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for k in psi {
        if k.dim() != p.dim() || !k.is_binary() || p.canonicalize(k)? != *k {
            return Err(Error::Invalid(format!("{k} is not a canonical binary multi-index")));
        }
        if !seen.insert(k) {
            return Err(Error::Invalid(format!("{k} repeated in psi")));
        }
    }
    Ok(())
}

/// Entry `(i, n) = (SI e_{ψ(n)})(t_i) / M(ψ(n))!`, i.e. the orbit sum of
/// `e_h(t_i)` over `h ∈ orbit(ψ(n))` divided by `#S`.
pub fn constraint_matrix<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    psi: &[MultiIndex],
) -> Result<ComplexMatrix<T>> {
    if rule.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: rule.dim(),
        });
    }
    check_below_critical(rule.len(), p)?;
    if psi.len() != rule.len() + 1 {
        return Err(Error::Invalid(format!(
            "psi prefix has length {}, need {}",
            psi.len(),
            rule.len() + 1
        )));
    }
    validate_psi(p, psi)?;
    let order: T = group_order_real(p);
    let orbits: Vec<FourierPolynomial<T>> = psi
        .iter()
        .map(|k| {
            let terms = p.orbit(k)?.map(|h| (h, Complex::new(T::one(), T::zero())));
            FourierPolynomial::from_terms(p.dim(), terms)
        })
        .collect::<Result<_>>()?;
    let mut m = ComplexMatrix::zeros(rule.len(), psi.len());
    for (i, t) in rule.nodes().iter().enumerate() {
        for (n, orbit) in orbits.iter().enumerate() {
            m.set(i, n, orbit.eval(t)? / order);
        }
    }
    Ok(m)
}

/// Coefficients of `f_N` from the closed formula
/// `f̂(k) = (1/|O*|) Σ_{g ∈ O*} [k+g ∈ {0,1}^d] [n(k+g) ≤ N] a_{n(k+g)}`,
/// where `O*` is the orbit of `ψ(n*)` and `n(h)` is the position of the
/// canonical form of `h` in `ψ`.
///
/// Evaluated by scattering: every binary `h` whose canonical form sits at
/// position `n ≤ N` contributes `a_n` to `k = h - g` for each `g ∈ O*`.
pub fn fooling_polynomial<T: Real>(
    p: &InvariancePattern,
    psi: &[MultiIndex],
    solution: &NullspaceSolution<T>,
) -> Result<FourierPolynomial<T>> {
    let star = &psi[solution.pivot_index];
    let star_orbit: Vec<MultiIndex> = p.orbit(star)?.collect();
    let mut sums: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
    for (k, a) in psi.iter().zip(&solution.coefficients) {
        for h in p.orbit(k)? {
            for g in &star_orbit {
                *sums.entry(h.sub(g)).or_default() += *a;
            }
        }
    }
    // dividing once at the end keeps f̂(0) = |O*| a_{n*} / |O*| = 1 exact
    let size = T::of_usize(star_orbit.len());
    FourierPolynomial::from_terms(p.dim(), sums.into_iter().map(|(k, s)| (k, s / size)))
}

/// Builds `f_N` for `rule` using the lexicographic prefix of `∇` as `ψ`.
pub fn construct<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    alpha: Smoothness<T>,
) -> Result<FoolingCertificate<T>> {
    check_below_critical(rule.len(), p)?;
    p.single_group()?;
    let psi: Vec<MultiIndex> = p.nabla().take(rule.len() + 1).collect();
    construct_with_psi(rule, p, alpha, psi)
}

/// Same as [`construct`] with a caller-chosen `ψ` prefix of length `N + 1`.
pub fn construct_with_psi<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    alpha: Smoothness<T>,
    psi: Vec<MultiIndex>,
) -> Result<FoolingCertificate<T>> {
    let (solution, f) = solve_and_build(rule, p, &psi)?;
    Ok(certify(rule, p, alpha, psi, solution, f, T::one(), T::one()))
}

pub(crate) fn solve_and_build<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    psi: &[MultiIndex],
) -> Result<(NullspaceSolution<T>, FourierPolynomial<T>)> {
    p.single_group()?;
    let m = constraint_matrix(rule, p, psi)?;
    let solution = nullspace(&m, T::tol(DEFAULT_NULLSPACE_TOL))?;
    let f = fooling_polynomial(p, psi, &solution)?;
    Ok((solution, f))
}

/// Runs the unweighted checks on `scale · f`. `integral_floor` is the value
/// the integral must reach (1 unweighted).
pub(crate) fn certify<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    alpha: Smoothness<T>,
    psi: Vec<MultiIndex>,
    solution: NullspaceSolution<T>,
    f: FourierPolynomial<T>,
    scale: T,
    integral_floor: T,
) -> FoolingCertificate<T> {
    let tol = T::tol(DEFAULT_CHECK_TOL);
    let function = if scale == T::one() {
        f
    } else {
        f.scale(Complex::new(scale, T::zero()))
    };
    let rule_value = rule.apply(&function).expect("dimensions checked");
    let integral_value = function.integral();
    let norm_value = function.korobov_norm(alpha);
    let rule_bound = tol * (T::one() + rule.weight_abs_sum());
    let integral_residual = if scale == T::one() {
        (integral_value - Complex::new(T::one(), T::zero())).norm()
    } else {
        (integral_floor - integral_value.re).max(T::zero())
    };
    let residuals = Residuals {
        nullspace: solution.residual,
        rule: rule_value.norm(),
        rule_bound,
        integral: integral_residual,
        norm_excess: (norm_value - T::one()).max(T::zero()),
    };
    let checks = Checks {
        rule_vanishes: residuals.rule <= rule_bound,
        integral: integral_residual <= tol,
        unit_ball: residuals.norm_excess <= tol,
        ternary_support: function.support_is_ternary(),
        invariant: is_invariant(&function, p, T::tol(INVARIANCE_TOL)),
    };
    FoolingCertificate {
        pattern: p.clone(),
        nodes: rule.len(),
        n_star: p.n_star().to_string(),
        witnessed_error: (integral_value - rule_value).norm(),
        function,
        psi,
        solution,
        scale,
        rule_value,
        integral_value,
        norm_value,
        residuals,
        checks,
    }
}

/// Outcome of recomputing `f_N` as an explicit product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub max_deviation: f64,
    pub terms_compared: usize,
}

/// Largest group the brute-force cross-check enumerates (`10!`).
pub const CROSSCHECK_GROUP_CAP: u64 = 3_628_800;

/// Largest dimension the brute-force cross-check accepts.
pub const CROSSCHECK_MAX_DIM: usize = 8;

/// Recomputes the certificate's coefficients from the product definition
/// `#S · SI(e_{-ψ(n*)}) · Σ_n a_n SI(e_{ψ(n)}) / M(ψ(n))!`, enumerating the
/// group element by element and counting stabilizers directly, then
/// convolving the two factors.
pub fn crosscheck_coefficients<T: Real>(cert: &FoolingCertificate<T>, p: &InvariancePattern) -> Result<CrosscheckReport> {
    if p.dim() > CROSSCHECK_MAX_DIM {
        return Err(Error::CapExceeded {
            what: "brute-force cross-check dimension",
            requested: p.dim().to_string(),
            cap: CROSSCHECK_MAX_DIM as u64,
        });
    }
    let perms: Vec<Vec<usize>> = p.permutations(CROSSCHECK_GROUP_CAP)?.collect();
    let order = T::of_usize(perms.len());
    let one = Complex::new(T::one(), T::zero());
    let dim = p.dim();

    let star = cert.psi[cert.solution.pivot_index].neg();
    let mut left = FourierPolynomial::zero(dim)?;
    for s in &perms {
        left.add_term(permute(s, &star), one)?;
    }

    let mut right = FourierPolynomial::zero(dim)?;
    for (k, a) in cert.psi.iter().zip(&cert.solution.coefficients) {
        let stabilizer = perms.iter().filter(|s| permute(s, k) == *k).count();
        let c = *a / (T::of_usize(stabilizer) * order);
        for s in &perms {
            right.add_term(permute(s, k), c)?;
        }
    }

    let product = left.mul(&right)?.scale(Complex::new(cert.scale, T::zero()));
    Ok(CrosscheckReport {
        max_deviation: product.max_abs_diff(&cert.function).as_f64(),
        terms_compared: product.len().max(cert.function.len()),
    })
}
