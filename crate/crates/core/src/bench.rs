//! Timing of the rectangle rule against its folded form on identical
//! invariant integrands.
//!
//! Both rules run on a one-thread pool so the times compare work done, not
//! how well 2^d nodes spread across cores.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cubature::{folded_rectangle_rule, rectangle_rule};
use crate::error::{Error, Result};
use crate::korobov::FourierPolynomial;
use crate::sampling::{random_invariant_polynomial, PolySpec};
use crate::symmetry::InvariancePattern;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub d: usize,
    pub invariant: usize,
    pub n_rect: usize,
    pub n_folded: usize,
    /// Seconds per application, best over the repetitions.
    pub t_rect: f64,
    pub t_folded: f64,
    pub speedup: f64,
    /// Largest `|A_rect(f) - A_folded(f)|` over the integrands.
    pub max_abs_diff: f64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    /// `#I = round(fraction · d)`, group `{1..#I}`.
    pub fractions: Vec<f64>,
    /// Integrands per configuration; each is timed once per rule.
    pub repetitions: usize,
    pub seed: u64,
    pub cap: u64,
    pub poly: PolySpec,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            dims: vec![8, 12, 16],
            fractions: vec![0.5, 1.0],
            repetitions: 3,
            seed: 0,
            cap: crate::cubature::DEFAULT_NODE_CAP,
            poly: PolySpec {
                terms: 3,
                max_support: 2,
                max_freq: 3,
            },
        }
    }
}

fn timed(rule: &crate::cubature::CubatureRule<f64>, f: &FourierPolynomial<f64>) -> Result<(f64, num_complex::Complex<f64>)> {
    let start = Instant::now();
    let v = rule.apply(f)?;
    Ok((start.elapsed().as_secs_f64(), v))
}

/// Runs one configuration.
pub fn bench_one(p: &InvariancePattern, cfg: &BenchConfig) -> Result<BenchRow> {
    if cfg.repetitions == 0 {
        return Err(Error::Invalid("bench needs at least one repetition".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    pool.install(|| {
        let rect = rectangle_rule::<f64>(p.dim(), cfg.cap)?;
        let folded = folded_rectangle_rule::<f64>(p, cfg.cap)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((p.dim() as u64) << 32) ^ p.invariant_count() as u64);
        let mut row = BenchRow {
            d: p.dim(),
            invariant: p.invariant_count(),
            n_rect: rect.len(),
            n_folded: folded.len(),
            t_rect: f64::INFINITY,
            t_folded: f64::INFINITY,
            speedup: 0.0,
            max_abs_diff: 0.0,
        };
        for _ in 0..cfg.repetitions {
            let f = random_invariant_polynomial(&mut rng, p, cfg.poly)?;
            let (tr, vr) = timed(&rect, &f)?;
            let (tf, vf) = timed(&folded, &f)?;
            row.t_rect = row.t_rect.min(tr);
            row.t_folded = row.t_folded.min(tf);
            row.max_abs_diff = row.max_abs_diff.max((vr - vf).norm());
        }
        row.speedup = row.t_rect / row.t_folded.max(1e-9);
        Ok(row)
    })
}

/// All `dims × fractions` configurations, in that order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        if d == 0 || d >= 64 || (1u64 << d) > cfg.cap {
            return Err(Error::CapExceeded {
                what: "bench rectangle nodes",
                requested: format!("2^{d}"),
                cap: cfg.cap,
            });
        }
        for &frac in &cfg.fractions {
            if !(0.0..=1.0).contains(&frac) {
                return Err(Error::Domain(format!("invariance fraction {frac} outside [0,1]")));
            }
            let i = (frac * d as f64).round() as usize;
            let p = InvariancePattern::single(d, (1..=i).collect())?;
            rows.push(bench_one(&p, cfg)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts() {
        let cfg = BenchConfig {
            dims: vec![12],
            fractions: vec![0.5],
            repetitions: 1,
            ..Default::default()
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows[0].n_rect, 4096);
        assert_eq!(rows[0].n_folded, 448);
        assert!(rows[0].max_abs_diff <= 1e-9);
    }

    #[test]
    fn cap_enforced() {
        let cfg = BenchConfig {
            dims: vec![20],
            cap: 1 << 10,
            ..Default::default()
        };
        assert!(matches!(run_bench(&cfg), Err(Error::CapExceeded { .. })));
    }
}
