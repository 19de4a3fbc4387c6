//! Product-weighted Korobov spaces restricted to invariant functions.
//!
//! Restricting a product-weighted space to functions invariant under a
//! group `S_I` is the same as weighting with `μ(k)`, the smallest product
//! weight over the orbit of `k`. Since the gammas are non-increasing in the
//! coordinate index, that minimum puts the in-group support on the group's
//! highest coordinates.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cubature::CubatureRule;
use crate::error::{Error, Result};
use crate::fooling::{self, check_below_critical, FoolingCertificate, DEFAULT_CHECK_TOL};
use crate::korobov::{korobov_weight, MultiIndex, Smoothness};
use crate::scalar::{Real, Weight};
use crate::symmetry::{enumerate_nabla, permute, InvariancePattern, DEFAULT_ENUMERATION_CAP};

/// A coefficient must vanish to this level where its bound `sqrt(μ)` is 0.
pub const VANISHING_TOL: f64 = 1e-12;

/// Product weights `1 ≥ γ_1 ≥ … ≥ γ_d ≥ 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleWire<T>", into = "ScheduleWire<T>")]
pub struct WeightSchedule<T: Weight> {
    gammas: Vec<T>,
}

impl<T: Weight> WeightSchedule<T> {
    pub fn new(gammas: Vec<T>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::InvalidWeights("need at least one gamma".into()));
        }
        if !(gammas[0] <= T::one()) {
            return Err(Error::InvalidWeights(format!("gamma_1 = {:?} exceeds 1", gammas[0])));
        }
        if let Some(m) = (1..gammas.len()).find(|&m| !(gammas[m] <= gammas[m - 1])) {
            return Err(Error::InvalidWeights(format!(
                "gammas must be non-increasing, but gamma_{} = {:?} > gamma_{} = {:?}",
                m + 1,
                gammas[m],
                m,
                gammas[m - 1]
            )));
        }
        if !(gammas[gammas.len() - 1] >= T::zero()) {
            return Err(Error::InvalidWeights("gammas must be non-negative".into()));
        }
        Ok(Self { gammas })
    }

    /// All gammas equal to 1: the unweighted space.
    pub fn unweighted(dim: usize) -> Self {
        Self {
            gammas: vec![T::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }
}

fn check_dims<T: Weight>(p: &InvariancePattern, w: &WeightSchedule<T>) -> Result<()> {
    if p.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: w.dim(),
        });
    }
    Ok(())
}

/// `μ(k)`: the `#u_I(k)` smallest in-group gammas times the out-of-group
/// gammas on the support of `k`.
pub fn mu<T: Weight>(k: &MultiIndex, p: &InvariancePattern, w: &WeightSchedule<T>) -> Result<T> {
    check_dims(p, w)?;
    if k.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: k.dim(),
        });
    }
    let group = p.single_group()?;
    Ok(mu_unchecked(k, p, group, w))
}

fn mu_unchecked<T: Weight>(k: &MultiIndex, p: &InvariancePattern, group: &[usize], w: &WeightSchedule<T>) -> T {
    let in_group = group.iter().filter(|&&m| k[m] != 0).count();
    let mut out = T::one();
    for &m in &group[group.len() - in_group..] {
        out = out * w.gammas[m].clone();
    }
    for m in k.support().filter(|&m| p.group_of(m).is_none()) {
        out = out * w.gammas[m].clone();
    }
    out
}

/// `∇` rearranged so the weights `ν_n = μ(ψ(n))` are non-increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderedWeights<T> {
    pub psi: Vec<MultiIndex>,
    pub nu: Vec<T>,
}

/// Sorts `∇` by `μ` descending, ties in lexicographic order.
pub fn order_weights<T: Weight>(p: &InvariancePattern, w: &WeightSchedule<T>) -> Result<OrderedWeights<T>> {
    check_dims(p, w)?;
    let group = p.single_group()?;
    let mut entries: Vec<(MultiIndex, T)> = enumerate_nabla(p, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .map(|k| {
            let m = mu_unchecked(&k, p, group, w);
            (k, m)
        })
        .collect();
    // stable: ∇ arrives in lexicographic order
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
    let (psi, nu) = entries.into_iter().unzip();
    Ok(OrderedWeights { psi, nu })
}

/// `ν_N`, the lower bound on the `N`-th minimal error; requires `N < N*`.
pub fn lower_bound<T: Weight>(n: usize, p: &InvariancePattern, w: &WeightSchedule<T>) -> Result<T> {
    check_below_critical(n, p)?;
    Ok(order_weights(p, w)?.nu[n].clone())
}

/// Fooling function for the weighted unit ball: `f_N` built on the
/// weight-ordered `ψ`, scaled by `sqrt(ν_N · μ(ψ(n*)))`.
pub fn weighted_construct<T: Real>(
    rule: &CubatureRule<T>,
    p: &InvariancePattern,
    alpha: Smoothness<T>,
    w: &WeightSchedule<T>,
) -> Result<FoolingCertificate<T>> {
    check_dims(p, w)?;
    check_below_critical(rule.len(), p)?;
    let group = p.single_group()?;
    let n = rule.len();
    let ordered = order_weights(p, w)?;
    let psi: Vec<MultiIndex> = ordered.psi[..=n].to_vec();
    let (solution, f) = fooling::solve_and_build(rule, p, &psi)?;

    let nu_n = ordered.nu[n];
    let mu_star = ordered.nu[solution.pivot_index];
    let product = nu_n * mu_star;
    for k in f.terms().map(|(k, _)| k) {
        let mk = mu_unchecked(k, p, group, w);
        if !(product <= mk + T::tol(VANISHING_TOL)) {
            return Err(Error::WeightEstimate(format!(
                "nu_N * mu(psi(n*)) = {product} exceeds mu({k}) = {mk}"
            )));
        }
    }
    let scale = product.sqrt();
    let mut cert = fooling::certify(rule, p, alpha, psi, solution, f, scale, nu_n);

    // replace the unweighted ball check with |ĝ(k)| k̄^α ≤ sqrt(μ(k))
    let tol = T::tol(DEFAULT_CHECK_TOL);
    let vanish = T::tol(VANISHING_TOL);
    let mut norm = T::zero();
    let mut excess = T::zero();
    let mut inside = true;
    for (k, c) in cert.function.terms() {
        let kw = korobov_weight(k, alpha).unwrap_or_else(|_| T::infinity());
        let size = c.norm() * kw;
        let bound = mu_unchecked(k, p, group, w).sqrt();
        if bound == T::zero() {
            inside &= c.norm() <= vanish;
            if c.norm() > T::zero() {
                norm = T::infinity();
            }
        } else {
            inside &= size <= bound + tol;
            norm = norm.max(size / bound);
        }
        excess = excess.max(size - bound);
    }
    cert.norm_value = norm;
    cert.residuals.norm_excess = excess.max(T::zero());
    cert.checks.unit_ball = inside;
    cert.checks.integral = cert.integral_value.re >= nu_n - tol && cert.integral_value.im.abs() <= tol;
    Ok(cert)
}

/// Outcome of the exhaustive `μ(ψ(n)) μ(ψ(n*)) ≤ μ(k)` check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupermultiplicativityReport {
    pub pairs_checked: u64,
    pub max_violation: f64,
    pub counterexample: Option<Counterexample>,
}

impl SupermultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub n_star: usize,
    pub k: MultiIndex,
    pub lhs: f64,
    pub rhs: f64,
}

/// Largest dimension the exhaustive check accepts.
pub const SUPERMULTIPLICATIVITY_MAX_DIM: usize = 6;

/// For every pair `n, n*` of positions in the weight-ordered `ψ` and every
/// `σ, λ` in the group, forms `k = λ(ψ(n)) - σ(ψ(n*))` and checks
/// `μ(ψ(n)) · μ(ψ(n*)) ≤ μ(k) + 1e-12`. Group elements are enumerated one
/// by one; `μ(k)` is the closed form under test.
pub fn supermultiplicativity_check<T: Real>(
    p: &InvariancePattern,
    w: &WeightSchedule<T>,
    max_d: usize,
) -> Result<SupermultiplicativityReport> {
    if max_d > SUPERMULTIPLICATIVITY_MAX_DIM || p.dim() > max_d {
        return Err(Error::CapExceeded {
            what: "exhaustive weight check dimension",
            requested: p.dim().to_string(),
            cap: max_d.min(SUPERMULTIPLICATIVITY_MAX_DIM) as u64,
        });
    }
    check_dims(p, w)?;
    let group = p.single_group()?;
    let ordered = order_weights(p, w)?;
    let perms: Vec<Vec<usize>> = p.permutations(720)?.collect();
    // images of each ψ(n) under the group, deduplicated
    let images: Vec<Vec<MultiIndex>> = ordered
        .psi
        .iter()
        .map(|k| {
            let mut v: Vec<MultiIndex> = perms.iter().map(|s| permute(s, k)).collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let slack = T::of(1e-12);
    let mut report = SupermultiplicativityReport {
        pairs_checked: 0,
        max_violation: 0.0,
        counterexample: None,
    };
    for (n, left) in images.iter().enumerate() {
        for (n_star, right) in images.iter().enumerate() {
            let lhs = ordered.nu[n] * ordered.nu[n_star];
            for a in left {
                for b in right {
                    let k = a.sub(b);
                    let rhs = mu_unchecked(&k, p, group, w);
                    report.pairs_checked += 1;
                    let violation = (lhs - rhs).as_f64();
                    report.max_violation = report.max_violation.max(violation);
                    if !(lhs <= rhs + slack) && report.counterexample.is_none() {
                        report.counterexample = Some(Counterexample {
                            n,
                            n_star,
                            k,
                            lhs: lhs.as_f64(),
                            rhs: rhs.as_f64(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `Σ_{k∈∇} μ(k)^κ` by enumeration, next to `(#I+1) Π_{m∉I} (1 + γ_m^κ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaSum {
    pub brute: f64,
    pub closed: f64,
    /// In-group gammas are all 1, the setting in which `closed` equals `brute`.
    pub closed_applies: bool,
}

impl KappaSum {
    pub fn relative_gap(&self) -> f64 {
        (self.brute - self.closed).abs() / self.brute.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn kappa_sum<T: Real>(p: &InvariancePattern, w: &WeightSchedule<T>, kappa: T) -> Result<KappaSum> {
    if !(kappa > T::zero()) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    check_dims(p, w)?;
    let group = p.single_group()?;
    let mut terms: Vec<T> = p.nabla().map(|k| mu_unchecked(&k, p, group, w).powf(kappa)).collect();
    // smallest first
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let brute = terms.into_iter().fold(T::zero(), |a, b| a + b);
    let closed = (0..p.dim())
        .filter(|&m| p.group_of(m).is_none())
        .map(|m| T::one() + w.gammas[m].powf(kappa))
        .fold(T::of_usize(group.len() + 1), |a, b| a * b);
    let closed_applies = group.iter().all(|&m| w.gammas[m] == T::one());
    Ok(KappaSum {
        brute: brute.to_f64().unwrap_or(f64::NAN),
        closed: closed.to_f64().unwrap_or(f64::NAN),
        closed_applies,
    })
}

#[derive(Serialize, Deserialize)]
#[doc(hidden)]
pub struct ScheduleWire<T> {
    dim: usize,
    gammas: Vec<T>,
}

impl<T: Weight> TryFrom<ScheduleWire<T>> for WeightSchedule<T> {
    type Error = Error;

    fn try_from(w: ScheduleWire<T>) -> Result<Self> {
        if w.gammas.len() != w.dim {
            return Err(Error::DimensionMismatch {
                expected: w.dim,
                found: w.gammas.len(),
            });
        }
        Self::new(w.gammas)
    }
}

impl<T: Weight> From<WeightSchedule<T>> for ScheduleWire<T> {
    fn from(w: WeightSchedule<T>) -> Self {
        ScheduleWire {
            dim: w.gammas.len(),
            gammas: w.gammas,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use num_complex::Complex;
    use rand_chacha::ChaCha8Rng;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn harmonic(d: usize) -> WeightSchedule<f64> {
        WeightSchedule::new((1..=d).map(|m| 1.0 / m as f64).collect()).unwrap()
    }

    fn random_schedule(rng: &mut ChaCha8Rng, d: usize) -> WeightSchedule<f64> {
        let mut g: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        g.sort_by(|a, b| b.partial_cmp(a).unwrap());
        WeightSchedule::new(g).unwrap()
    }

    fn random_rule(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> CubatureRule<f64> {
        let nodes = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect()).collect();
        let weights = (0..n)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        CubatureRule::new(dim, nodes, weights).unwrap()
    }

    /// `min_σ Π_{m ∈ u(σ(k))} γ_m` over every group element.
    fn mu_brute(k: &MultiIndex, p: &InvariancePattern, w: &WeightSchedule<f64>) -> f64 {
        p.permutations(1 << 20)
            .unwrap()
            .map(|s| permute(&s, k).support().map(|m| w.gammas()[m]).product::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn schedule_validation() {
        assert!(WeightSchedule::new(vec![1.2, 0.5]).is_err());
        assert!(WeightSchedule::new(vec![0.5, 0.6]).is_err());
        assert!(WeightSchedule::new(vec![0.5, -0.1]).is_err());
        assert!(WeightSchedule::<f64>::new(vec![]).is_err());
        assert!(WeightSchedule::new(vec![1.0, 1.0, 0.0]).is_ok());
        let w: WeightSchedule<f64> = serde_json::from_str(r#"{"dim":2,"gammas":[1.0,0.5]}"#).unwrap();
        assert_eq!(w.gammas(), &[1.0, 0.5]);
        assert!(serde_json::from_str::<WeightSchedule<f64>>(r#"{"dim":3,"gammas":[1.0,0.5]}"#).is_err());
    }

    #[test]
    fn mu_examples() {
        let p = InvariancePattern::full(5).unwrap();
        let w = harmonic(5);
        assert_eq!(mu(&MultiIndex::zeros(5), &p, &w).unwrap(), 1.0);
        let two = mu(&mi(&[1, 0, 0, 1, 0]), &p, &w).unwrap();
        assert!((two - 1.0 / 20.0).abs() < 1e-15);

        let p = InvariancePattern::single(4, vec![1, 2]).unwrap();
        let w = WeightSchedule::new(vec![1.0, 0.8, 0.5, 0.4]).unwrap();
        let k = mi(&[1, 0, 1, 0]);
        let v: f64 = mu(&k, &p, &w).unwrap();
        assert!((v - 0.4).abs() < 1e-15);
        assert!((v - mu_brute(&k, &p, &w)).abs() < 1e-15);

        let multi = InvariancePattern::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert!(matches!(mu(&k, &multi, &w), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mu_matches_minimizing_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=6 {
            for _ in 0..4 {
                let size = rng.gen_range(0..=d);
                let mut coords: Vec<usize> = (1..=d).collect();
                for i in (1..coords.len()).rev() {
                    coords.swap(i, rng.gen_range(0..=i));
                }
                coords.truncate(size);
                let p = InvariancePattern::single(d, coords).unwrap();
                let w = random_schedule(&mut rng, d);
                for code in 0..3usize.pow(d as u32) {
                    let k = mi(&(0..d).map(|m| (code / 3usize.pow(m as u32) % 3) as i64 - 1).collect::<Vec<_>>());
                    let fast = mu(&k, &p, &w).unwrap();
                    assert!((fast - mu_brute(&k, &p, &w)).abs() <= 1e-15);
                    assert_eq!(fast, mu(&p.canonicalize(&k).unwrap(), &p, &w).unwrap());
                    assert!((0.0..=1.0).contains(&fast));
                }
            }
        }
    }

    #[test]
    fn example_one_ordering_exact() {
        for d in 1..=8usize {
            let p = InvariancePattern::full(d).unwrap();
            let gammas = (1..=d).map(|m| BigRational::new(BigInt::from(1), BigInt::from(m))).collect();
            let w = WeightSchedule::new(gammas).unwrap();
            let ordered = order_weights(&p, &w).unwrap();
            let mut expect = BigRational::from_integer(BigInt::from(1));
            for n in 0..=d {
                if n > 0 {
                    expect = expect / BigRational::from_integer(BigInt::from(d - n + 1));
                }
                assert_eq!(ordered.nu[n], expect);
            }
        }
    }

    #[test]
    fn unweighted_ordering_is_lexicographic() {
        let p = InvariancePattern::single(5, vec![2, 3, 4]).unwrap();
        let ordered = order_weights(&p, &WeightSchedule::<f64>::unweighted(5)).unwrap();
        assert!(ordered.nu.iter().all(|&v| v == 1.0));
        assert_eq!(ordered.psi, p.nabla().collect::<Vec<_>>());
    }

    #[test]
    fn ordering_is_sorted_rearrangement() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = InvariancePattern::single(5, vec![1, 2, 3]).unwrap();
        for _ in 0..10 {
            let w = random_schedule(&mut rng, 5);
            let ordered = order_weights(&p, &w).unwrap();
            assert!(ordered.nu.windows(2).all(|x| x[0] >= x[1]));
            let mut a: Vec<f64> = p.nabla().map(|k| mu(&k, &p, &w).unwrap()).collect();
            let mut b = ordered.nu.clone();
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            b.sort_by(|x, y| x.partial_cmp(y).unwrap());
            assert_eq!(a, b);
            let mut psi = ordered.psi.clone();
            psi.sort();
            assert_eq!(psi, p.nabla().collect::<Vec<_>>());
        }
    }

    #[test]
    fn lower_bound_examples() {
        let d = 6;
        let p = InvariancePattern::full(d).unwrap();
        let w = harmonic(d);
        assert_eq!(lower_bound(0, &p, &w).unwrap(), 1.0);
        assert!((lower_bound(1, &p, &w).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((lower_bound(d, &p, &w).unwrap() - 1.0 / 720.0).abs() < 1e-15);
        assert!(lower_bound(d + 1, &p, &w).is_err());
        let nus: Vec<f64> = (0..=d).map(|n| lower_bound(n, &p, &w).unwrap()).collect();
        assert!(nus.windows(2).all(|x| x[0] >= x[1]));
    }

    #[test]
    fn weighted_with_unit_gammas_matches_unweighted() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = InvariancePattern::single(4, vec![1, 3, 4]).unwrap();
        let rule = random_rule(&mut rng, 4, 5);
        let alpha = Smoothness::new(2.0).unwrap();
        let a = weighted_construct(&rule, &p, alpha, &WeightSchedule::unweighted(4)).unwrap();
        let b = fooling::construct(&rule, &p, alpha).unwrap();
        assert!(a.function.max_abs_diff(&b.function) <= 1e-12);
        assert_eq!(a.psi, b.psi);
        assert!(a.is_valid());
    }

    #[test]
    fn example_one_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = InvariancePattern::full(3).unwrap();
        let w = harmonic(3);
        let rule = random_rule(&mut rng, 3, 2);
        let cert = weighted_construct(&rule, &p, Smoothness::new(2.0).unwrap(), &w).unwrap();
        assert!(cert.is_valid(), "{:?} {:?}", cert.checks, cert.residuals);
        assert!(cert.integral_value.re >= 1.0 / 6.0 - 1e-9);
    }

    #[test]
    fn random_weights_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let p = InvariancePattern::single(4, vec![1, 2, 3]).unwrap();
        for _ in 0..5 {
            let w = random_schedule(&mut rng, 4);
            let rule = random_rule(&mut rng, 4, 5);
            let cert = weighted_construct(&rule, &p, Smoothness::new(3.0).unwrap(), &w).unwrap();
            assert!(cert.is_valid(), "{:?} {:?}", cert.checks, cert.residuals);
        }
    }

    #[test]
    fn zero_gamma_gives_vacuous_bound() {
        let p = InvariancePattern::trivial(2).unwrap();
        let w = WeightSchedule::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(lower_bound(3, &p, &w).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rule = random_rule(&mut rng, 2, 3);
        let cert = weighted_construct(&rule, &p, Smoothness::new(2.0).unwrap(), &w).unwrap();
        assert!(cert.is_valid());
    }

    #[test]
    fn supermultiplicativity_examples() {
        let p = InvariancePattern::full(2).unwrap();
        let r = supermultiplicativity_check(&p, &WeightSchedule::new(vec![1.0, 0.5]).unwrap(), 6).unwrap();
        assert!(r.passed());
        let r = supermultiplicativity_check(&p, &WeightSchedule::<f64>::unweighted(2), 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.max_violation, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = InvariancePattern::single(4, vec![1, 2]).unwrap();
        let r = supermultiplicativity_check(&p, &random_schedule(&mut rng, 4), 6).unwrap();
        assert!(r.passed());
        assert!(supermultiplicativity_check(&InvariancePattern::full(7).unwrap(), &harmonic(7), 6).is_err());
    }

    #[test]
    fn kappa_sum_examples() {
        let p = InvariancePattern::single(3, vec![1]).unwrap();
        let w = WeightSchedule::new(vec![1.0, 0.5, 0.5]).unwrap();
        let s = kappa_sum(&p, &w, 2.0).unwrap();
        assert!((s.closed - 3.125).abs() < 1e-15);
        assert!(s.relative_gap() < 1e-12);
        assert!(s.closed_applies);

        let p = InvariancePattern::single(5, vec![1, 2, 3]).unwrap();
        let s = kappa_sum(&p, &WeightSchedule::unweighted(5), 1.7).unwrap();
        assert_eq!(s.brute, 16.0);

        let p = InvariancePattern::single(4, vec![1, 2]).unwrap();
        let s = kappa_sum(&p, &WeightSchedule::new(vec![1.0, 1.0, 0.9, 0.3]).unwrap(), 3.0).unwrap();
        assert!(s.relative_gap() < 1e-12);

        // weighted group coordinates: the product formula no longer applies
        let s = kappa_sum(&p, &WeightSchedule::new(vec![1.0, 0.5, 0.5, 0.3]).unwrap(), 2.0).unwrap();
        assert!(!s.closed_applies);
        assert!(s.relative_gap() > 1e-3);
    }
}
