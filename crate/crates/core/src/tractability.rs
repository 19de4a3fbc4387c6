//! Finite-sample checks of the necessary conditions for tractability.
//!
//! Every bound here comes from `n(ε, d) ≥ N*(d, I_d)` for `ε ∈ (0, 1)`.
//! Verdicts are statements about the sampled dimensions only: the
//! "tail" is the last ⌈n/2⌉ samples, and each notion is tested on it with a
//! fixed rule. Nothing here claims a limit.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::InvariancePattern;

/// The lower bound is the same for every `ε ∈ (0,1)`; ratios use this one.
pub const REFERENCE_EPSILON: f64 = 0.5;

/// Curse flagged when `ln(b_d/d)` falls slower than `d^{-1/4}` on the tail.
pub const CURSE_SLOPE_THRESHOLD: f64 = -0.25;

/// Minimal number of samples for any verdict.
pub const MIN_SAMPLES: usize = 3;

/// `n(ε, d) ≥ N*` on `(0,1)`; at `ε ≥ 1` the zero algorithm suffices.
pub fn info_complexity_lower(epsilon: f64, p: &InvariancePattern) -> Result<BigUint> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    if epsilon >= 1.0 {
        return Ok(BigUint::from(0u32));
    }
    Ok(p.n_star())
}

/// Sampled `(d, #I_d)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileWire", into = "ProfileWire")]
pub struct InvarianceProfile {
    samples: Vec<(usize, usize)>,
    tag: Option<String>,
}

impl InvarianceProfile {
    /// Samples in any order; stored sorted by `d`.
    pub fn new(mut samples: Vec<(usize, usize)>, tag: Option<String>) -> Result<Self> {
        samples.sort_unstable();
        for &(d, i) in &samples {
            if d == 0 || i > d {
                return Err(Error::Invalid(format!("sample (d={d}, #I={i}) needs 0 <= #I <= d, d >= 1")));
            }
        }
        if samples.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("dimensions in a profile must be distinct".into()));
        }
        Ok(Self { samples, tag })
    }

    /// Samples `(d, f(d))` for `d` in `dims`.
    pub fn from_fn(dims: impl IntoIterator<Item = usize>, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(dims.into_iter().map(|d| (d, f(d))).collect(), None)
    }

    pub fn samples(&self) -> &[(usize, usize)] {
        &self.samples
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }
}

#[derive(Serialize, Deserialize)]
#[doc(hidden)]
pub struct ProfileWire {
    samples: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tag: Option<String>,
}

impl TryFrom<ProfileWire> for InvarianceProfile {
    type Error = Error;

    fn try_from(w: ProfileWire) -> Result<Self> {
        Self::new(w.samples, w.tag)
    }
}

impl From<InvarianceProfile> for ProfileWire {
    fn from(p: InvarianceProfile) -> Self {
        ProfileWire {
            samples: p.samples,
            tag: p.tag,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExcludedAtScale,
    ConsistentAtScale,
    NotEvaluable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ExcludedAtScale => "excluded at sampled scale",
            Verdict::ConsistentAtScale => "consistent at sampled scale",
            Verdict::NotEvaluable => "not evaluable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub d: usize,
    pub invariant: usize,
    /// `b_d = d - #I_d`.
    pub b: usize,
    /// Exact decimal `N*`.
    pub n_star: String,
    pub ln_n_star: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NotionVerdict {
    pub verdict: Verdict,
    /// The number the verdict was decided on.
    pub statistic: Option<f64>,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakVerdict {
    pub s: f64,
    pub t: f64,
    /// `ln N* / (ε^{-s} + d^t)` per sample.
    pub log_ratios: Vec<f64>,
    pub verdict: NotionVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TractabilityReport {
    pub reference_epsilon: f64,
    pub tag: Option<String>,
    pub samples: Vec<SampleRow>,
    /// Index of the first tail sample.
    pub tail_start: usize,
    pub strong_polynomial: NotionVerdict,
    pub polynomial: NotionVerdict,
    /// Least-squares slope of `ln N*` against `ln d` on the tail: the
    /// smallest `d`-exponent a polynomial bound could have at this scale.
    pub degree_estimate: Option<f64>,
    pub weak: Vec<WeakVerdict>,
    pub uniform_weak: NotionVerdict,
    pub curse: NotionVerdict,
}

fn ln_n_star(d: usize, i: usize) -> f64 {
    ((i + 1) as f64).ln() + (d - i) as f64 * std::f64::consts::LN_2
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

fn not_evaluable(rule: &str) -> NotionVerdict {
    NotionVerdict {
        verdict: Verdict::NotEvaluable,
        statistic: None,
        rule: rule.into(),
    }
}

fn decide(ok: bool) -> Verdict {
    if ok {
        Verdict::ConsistentAtScale
    } else {
        Verdict::ExcludedAtScale
    }
}

const STRONG_RULE: &str = "N* must not grow across the samples";
const POLY_RULE: &str = "max of b_d/ln d on the tail must not exceed max(1, its max on the head)";
const WEAK_RULE: &str = "ln N*/(eps^-s + d^t) must be non-increasing on the tail and end below its tail start";
const UNIFORM_RULE: &str = "every requested (s,t) pair must be consistent";
const CURSE_RULE: &str = "b_d > 0 on the tail and slope of ln(b_d/d) against ln d above -0.25";

/// Runs every notion on the profile. `st_grid` holds `(s, t)` pairs in `(0,1]²`.
pub fn evaluate(profile: &InvarianceProfile, st_grid: &[(f64, f64)]) -> Result<TractabilityReport> {
    if let Some(&(s, t)) = st_grid.iter().find(|(s, t)| !(*s > 0.0 && *s <= 1.0 && *t > 0.0 && *t <= 1.0)) {
        return Err(Error::Domain(format!("(s,t) = ({s},{t}) outside (0,1]^2")));
    }
    let samples: Vec<SampleRow> = profile
        .samples
        .iter()
        .map(|&(d, i)| {
            let p = InvariancePattern::single(d, (1..=i).collect()).expect("validated sample");
            SampleRow {
                d,
                invariant: i,
                b: d - i,
                n_star: p.n_star().to_string(),
                ln_n_star: ln_n_star(d, i),
            }
        })
        .collect();
    let count = samples.len();
    let tail_start = count - count.div_ceil(2);

    let weak_rows = |eval: bool| -> Vec<WeakVerdict> {
        st_grid
            .iter()
            .map(|&(s, t)| {
                let log_ratios: Vec<f64> = samples
                    .iter()
                    .map(|r| r.ln_n_star / (REFERENCE_EPSILON.powf(-s) + (r.d as f64).powf(t)))
                    .collect();
                let verdict = if eval {
                    let tail = &log_ratios[tail_start..];
                    let non_increasing = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
                    let last = *tail.last().expect("tail non-empty");
                    NotionVerdict {
                        verdict: decide(non_increasing && last < tail[0]),
                        statistic: Some(last),
                        rule: WEAK_RULE.into(),
                    }
                } else {
                    not_evaluable(WEAK_RULE)
                };
                WeakVerdict {
                    s,
                    t,
                    log_ratios,
                    verdict,
                }
            })
            .collect()
    };

    let weak = weak_rows(count >= MIN_SAMPLES);
    if count < MIN_SAMPLES {
        return Ok(TractabilityReport {
            reference_epsilon: REFERENCE_EPSILON,
            tag: profile.tag.clone(),
            samples,
            tail_start,
            strong_polynomial: not_evaluable(STRONG_RULE),
            polynomial: not_evaluable(POLY_RULE),
            degree_estimate: None,
            weak,
            uniform_weak: not_evaluable(UNIFORM_RULE),
            curse: not_evaluable(CURSE_RULE),
        });
    }

    let tail = &samples[tail_start..];

    let first = &samples[0];
    let last = &samples[count - 1];
    let strong_polynomial = NotionVerdict {
        verdict: decide(last.ln_n_star <= first.ln_n_star),
        statistic: Some(last.ln_n_star - first.ln_n_star),
        rule: STRONG_RULE.into(),
    };

    // b_d / ln d, skipping d = 1
    let ratio = |r: &SampleRow| (r.d >= 2).then(|| r.b as f64 / (r.d as f64).ln());
    let head_max = samples[..tail_start].iter().filter_map(ratio).fold(1.0, f64::max);
    let tail_ratios: Vec<f64> = tail.iter().filter_map(ratio).collect();
    let polynomial = if tail_ratios.is_empty() {
        not_evaluable(POLY_RULE)
    } else {
        let tail_max = tail_ratios.iter().copied().fold(0.0, f64::max);
        NotionVerdict {
            verdict: decide(tail_max <= head_max * (1.0 + 1e-12)),
            statistic: Some(tail_max),
            rule: POLY_RULE.into(),
        }
    };

    let degree_estimate = slope(&tail.iter().map(|r| ((r.d as f64).ln(), r.ln_n_star)).collect::<Vec<_>>());

    let uniform_weak = if weak.is_empty() {
        not_evaluable(UNIFORM_RULE)
    } else {
        NotionVerdict {
            verdict: decide(weak.iter().all(|w| w.verdict.verdict == Verdict::ConsistentAtScale)),
            statistic: None,
            rule: UNIFORM_RULE.into(),
        }
    };

    let curse = if tail.iter().any(|r| r.b == 0) {
        NotionVerdict {
            verdict: Verdict::ExcludedAtScale,
            statistic: None,
            rule: CURSE_RULE.into(),
        }
    } else {
        let pts: Vec<(f64, f64)> = tail
            .iter()
            .map(|r| ((r.d as f64).ln(), (r.b as f64 / r.d as f64).ln()))
            .collect();
        match slope(&pts) {
            Some(s) => NotionVerdict {
                verdict: decide(s > CURSE_SLOPE_THRESHOLD),
                statistic: Some(s),
                rule: CURSE_RULE.into(),
            },
            None => not_evaluable(CURSE_RULE),
        }
    };

    Ok(TractabilityReport {
        reference_epsilon: REFERENCE_EPSILON,
        tag: profile.tag.clone(),
        samples,
        tail_start,
        strong_polynomial,
        polynomial,
        degree_estimate,
        weak,
        uniform_weak,
        curse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: [(f64, f64); 2] = [(1.0, 1.0), (0.5, 0.5)];

    #[test]
    fn info_complexity_examples() {
        let full = InvariancePattern::full(5).unwrap();
        for eps in [0.01, 0.5, 0.999] {
            assert_eq!(info_complexity_lower(eps, &full).unwrap(), BigUint::from(6u32));
        }
        assert_eq!(info_complexity_lower(1.0, &full).unwrap(), BigUint::from(0u32));
        assert_eq!(info_complexity_lower(2.0, &full).unwrap(), BigUint::from(0u32));
        let none = InvariancePattern::trivial(4).unwrap();
        assert_eq!(info_complexity_lower(0.5, &none).unwrap(), BigUint::from(16u32));
        assert!(info_complexity_lower(0.0, &none).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(InvarianceProfile::new(vec![(3, 4)], None).is_err());
        assert!(InvarianceProfile::new(vec![(3, 1), (3, 2)], None).is_err());
        assert!(InvarianceProfile::new(vec![(0, 0)], None).is_err());
        let p: InvarianceProfile = serde_json::from_str(r#"{"samples":[[5,2],[3,1]]}"#).unwrap();
        assert_eq!(p.samples(), &[(3, 1), (5, 2)]);
    }

    #[test]
    fn fully_invariant_profile() {
        let profile = InvarianceProfile::from_fn(1..=30, |d| d).unwrap();
        let r = evaluate(&profile, &GRID).unwrap();
        assert_eq!(r.curse.verdict, Verdict::ExcludedAtScale);
        assert_eq!(r.strong_polynomial.verdict, Verdict::ExcludedAtScale);
        assert_eq!(r.polynomial.verdict, Verdict::ConsistentAtScale);
        assert_eq!(r.uniform_weak.verdict, Verdict::ConsistentAtScale);
        assert_eq!(r.samples[29].n_star, "31");
        // N* = d + 1 forces degree at least 1
        let q = r.degree_estimate.unwrap();
        assert!(q > 0.9 && q <= 1.0, "{q}");
    }

    #[test]
    fn no_invariance_profile() {
        let profile = InvarianceProfile::from_fn(1..=30, |_| 0).unwrap();
        let r = evaluate(&profile, &GRID).unwrap();
        assert_eq!(r.curse.verdict, Verdict::ConsistentAtScale);
        assert_eq!(r.polynomial.verdict, Verdict::ExcludedAtScale);
        assert!(r.weak.iter().all(|w| w.verdict.verdict == Verdict::ExcludedAtScale));
        // ln N*/d approaches ln 2 rather than 0
        let last = r.weak[0].log_ratios.last().unwrap();
        assert!((last - 30.0 * std::f64::consts::LN_2 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn logarithmic_free_block() {
        let b = |d: usize| (d as f64).ln().floor() as usize;
        let profile = InvarianceProfile::from_fn(2..=64, |d| d - b(d)).unwrap();
        let r = evaluate(&profile, &GRID).unwrap();
        assert!(r.samples.iter().all(|s| s.b as f64 / (s.d as f64).ln() <= 1.0));
        assert_eq!(r.polynomial.verdict, Verdict::ConsistentAtScale);
        assert_eq!(r.curse.verdict, Verdict::ExcludedAtScale);
    }

    #[test]
    fn order_independent() {
        let a = InvarianceProfile::new(vec![(4, 2), (8, 4), (16, 8), (12, 6)], None).unwrap();
        let b = InvarianceProfile::new(vec![(16, 8), (4, 2), (12, 6), (8, 4)], None).unwrap();
        assert_eq!(evaluate(&a, &GRID).unwrap(), evaluate(&b, &GRID).unwrap());
    }

    #[test]
    fn too_few_samples() {
        let p = InvarianceProfile::new(vec![(4, 2), (8, 4)], None).unwrap();
        let r = evaluate(&p, &GRID).unwrap();
        assert_eq!(r.polynomial.verdict, Verdict::NotEvaluable);
        assert_eq!(r.curse.verdict, Verdict::NotEvaluable);
        assert!(r.weak.iter().all(|w| w.verdict.verdict == Verdict::NotEvaluable));
    }

    #[test]
    fn grid_domain() {
        let p = InvarianceProfile::from_fn(1..=5, |d| d).unwrap();
        assert!(evaluate(&p, &[(0.0, 1.0)]).is_err());
        assert!(evaluate(&p, &[(1.0, 1.5)]).is_err());
    }

    #[test]
    fn n_star_monotone_in_free_block() {
        for d in 1..=20usize {
            let values: Vec<BigUint> = (0..=d)
                .rev()
                .map(|i| InvariancePattern::single(d, (1..=i).collect()).unwrap().n_star())
                .collect();
            // b = d - i increasing along this sequence
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
