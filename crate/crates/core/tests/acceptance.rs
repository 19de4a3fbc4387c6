//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Each criterion also has a wall-clock budget that counts toward its verdict.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symquad_core::bench::{bench_one, BenchConfig};
use symquad_core::cubature::DEFAULT_NODE_CAP;
use symquad_core::fooling::crosscheck_coefficients;
use symquad_core::sampling::{random_invariant_polynomial, random_rule, random_schedule, PolySpec};
use symquad_core::weighted::{kappa_sum, order_weights, supermultiplicativity_check};
use symquad_core::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn pattern(d: usize, i: usize) -> InvariancePattern {
    InvariancePattern::single(d, (1..=i).collect()).unwrap()
}

fn cardinality() -> Outcome {
    let mut configs = 0;
    for d in 1..=14 {
        for i in 0..=d {
            let p = pattern(d, i);
            let nabla = enumerate_nabla(&p, 1 << 20).unwrap();
            let expected = BigUint::from(i + 1) << (d - i);
            if BigUint::from(nabla.len()) != expected {
                return outcome(false, format!("d={d} #I={i}: |nabla| = {} != {expected}", nabla.len()));
            }
            let total: BigUint = nabla.iter().map(|k| p.orbit_stats(k).unwrap().orbit_size).sum();
            if total != BigUint::one() << d {
                return outcome(false, format!("d={d} #I={i}: orbit sizes sum to {total}"));
            }
            configs += 1;
        }
    }
    outcome(true, format!("{configs} (d, #I) pairs exact"))
}

fn folded_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for t in 0..200 {
        let d = 1 + t % 12;
        let p = pattern(d, rng.gen_range(0..=d));
        let f: Polynomial64 = random_invariant_polynomial(
            &mut rng,
            &p,
            PolySpec {
                terms: 4,
                max_support: 3,
                max_freq: 3,
            },
        )
        .unwrap();
        let rect = rectangle_rule::<f64>(d, DEFAULT_NODE_CAP).unwrap();
        let folded = folded_rectangle_rule::<f64>(&p, DEFAULT_NODE_CAP).unwrap();
        let diff = (rect.apply(&f).unwrap() - folded.apply(&f).unwrap()).norm();
        let rel = diff / (1.0 + f.abs_sum());
        worst = worst.max(rel);
        if rel > 1e-10 {
            return outcome(false, format!("trial {t} ({p}, d={d}): difference {diff:e}"));
        }
    }
    outcome(true, format!("200 integrands, max |diff|/(1+sum|c|) = {worst:.1e} <= 1e-10"))
}

fn wce_formula() -> Outcome {
    let mut worst_ratio: f64 = 0.0;
    for &alpha in &[1.5, 2.0, 3.0, 6.0] {
        for d in 1..=8 {
            let r = wce_rectangle(d, Smoothness64::new(alpha).unwrap(), 1e-10).unwrap();
            if !r.agrees() {
                return outcome(
                    false,
                    format!("d={d} alpha={alpha}: |{} - {}| > {}", r.closed_form, r.oracle_value, r.tail_bound),
                );
            }
            worst_ratio = worst_ratio.max((r.closed_form - r.oracle_value).abs() / r.tail_bound);
        }
    }
    let mut largest: f64 = 0.0;
    for d in 1..=5 {
        let v = wce_rectangle(d, Smoothness64::new(50.0).unwrap(), 1e-14).unwrap().closed_form;
        largest = largest.max(v);
        if !(v < 1e-12) {
            return outcome(false, format!("alpha=50 d={d}: {v:e} not below 1e-12"));
        }
    }
    outcome(
        true,
        format!("32 cases within tail bound (worst at {worst_ratio:.2} of it); alpha=50 max {largest:.1e}"),
    )
}

fn certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut min_witness = f64::INFINITY;
    for t in 0..100 {
        let d = rng.gen_range(1..=8);
        let i = rng.gen_range(0..=d);
        let p = pattern(d, i);
        let n_star = (i + 1) << (d - i);
        let n = rng.gen_range(0..n_star);
        let rule: Rule64 = random_rule(&mut rng, d, n).unwrap();
        let cert = match construct(&rule, &p, Smoothness64::new(2.0).unwrap()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {t} ({p}, d={d}, N={n}): {e}")),
        };
        let ok = cert.is_valid()
            && cert.rule_value.norm() <= 1e-9
            && cert.integral_value == Complex64::new(1.0, 0.0)
            && cert.norm_value <= 1.0 + 1e-9
            && cert.function.support_is_ternary()
            && is_invariant(&cert.function, &p, 1e-10)
            && cert.witnessed_error >= 1.0 - 1e-8;
        if !ok {
            return outcome(false, format!("trial {t} ({p}, d={d}, N={n}): {:?}", cert.residuals));
        }
        min_witness = min_witness.min(cert.witnessed_error);
    }
    outcome(true, format!("100 rules fooled, min witnessed error {min_witness:.12}"))
}

fn fourier_crosscheck() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut terms = 0;
    for t in 0..30 {
        let d = rng.gen_range(1..=6);
        let p = pattern(d, rng.gen_range(0..=d));
        let n_star = p.n_star().to_string().parse::<usize>().unwrap();
        let n = rng.gen_range(0..n_star);
        let rule: Rule64 = random_rule(&mut rng, d, n).unwrap();
        let cert = construct(&rule, &p, Smoothness64::new(3.0).unwrap()).unwrap();
        let r = crosscheck_coefficients(&cert, &p).unwrap();
        worst = worst.max(r.max_deviation);
        terms += r.terms_compared;
        if r.max_deviation > 1e-10 {
            return outcome(false, format!("instance {t}: deviation {:e}", r.max_deviation));
        }
    }
    outcome(true, format!("30 instances, {terms} coefficients, max deviation {worst:.1e}"))
}

fn weighted_example() -> Outcome {
    for d in 1..=10usize {
        let gammas: Vec<BigRational> = (1..=d).map(|m| BigRational::new(BigInt::one(), BigInt::from(m))).collect();
        let w = WeightSchedule::new(gammas).unwrap();
        let p = InvariancePattern::full(d).unwrap();
        let ordered = order_weights(&p, &w).unwrap();
        for n in 0..=d {
            let falling: BigInt = (0..n).map(|j| BigInt::from(d - j)).product();
            let expected = BigRational::new(BigInt::one(), falling);
            if ordered.nu[n] != expected {
                return outcome(false, format!("d={d} n={n}: nu = {} != {expected}", ordered.nu[n]));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_gap = f64::INFINITY;
    for t in 0..40 {
        let d = rng.gen_range(1..=8);
        let w = Schedule64::new((1..=d).map(|m| 1.0 / m as f64).collect()).unwrap();
        let p = InvariancePattern::full(d).unwrap();
        let n = rng.gen_range(0..=d);
        let rule: Rule64 = random_rule(&mut rng, d, n).unwrap();
        let cert = match weighted_construct(&rule, &p, Smoothness64::new(2.0).unwrap(), &w) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {t} (d={d}, N={n}): {e}")),
        };
        let nu: f64 = (0..n).map(|j| 1.0 / (d - j) as f64).product();
        let gap = cert.integral_value.re - nu;
        worst_gap = worst_gap.min(gap);
        if !(cert.is_valid() && gap >= -1e-9) {
            return outcome(false, format!("trial {t} (d={d}, N={n}): integral {} vs nu {nu}", cert.integral_value));
        }
    }
    outcome(
        true,
        format!("nu exact for d <= 10; 40 weighted certificates, min integral - nu = {worst_gap:.1e}"),
    )
}

fn kappa_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for t in 0..50 {
        let d = rng.gen_range(1..=12);
        let p = pattern(d, rng.gen_range(0..=d));
        let w = random_schedule(&mut rng, &p, true).unwrap();
        for &kappa in &[1.5, 2.0, 3.0] {
            let s = kappa_sum(&p, &w, kappa).unwrap();
            worst = worst.max(s.relative_gap());
            if !(s.closed_applies && s.relative_gap() <= 1e-12) {
                return outcome(false, format!("schedule {t} ({p}, kappa={kappa}): {} vs {}", s.brute, s.closed));
            }
        }
    }
    outcome(true, format!("150 sums, max relative gap {worst:.1e}"))
}

fn supermultiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0u64;
    for d in 1..=5 {
        for i in 0..=d {
            let p = pattern(d, i);
            for s in 0..20 {
                let w = random_schedule(&mut rng, &p, false).unwrap();
                let r = supermultiplicativity_check(&p, &w, 5).unwrap();
                pairs += r.pairs_checked;
                if let Some(c) = r.counterexample {
                    return outcome(false, format!("{p} d={d} schedule {s}: {c:?}"));
                }
            }
        }
    }
    outcome(true, format!("400 schedules, {pairs} products checked"))
}

fn bench_sanity() -> Outcome {
    let cfg = BenchConfig {
        repetitions: 3,
        seed: 9,
        ..Default::default()
    };
    let row = bench_one(&InvariancePattern::full(16).unwrap(), &cfg).unwrap();
    let pass = row.n_folded == 17 && row.n_rect == 65536 && row.max_abs_diff <= 1e-9 && row.speedup >= 100.0;
    outcome(
        pass,
        format!(
            "{} vs {} nodes, max |diff| {:.1e}, speedup {:.0}x",
            row.n_folded, row.n_rect, row.max_abs_diff, row.speedup
        ),
    )
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("cardinality of the folded index set", 10, cardinality),
        ("folded rule equals rectangle rule on invariant input", 30, folded_equivalence),
        ("worst-case error closed form", 5, wce_formula),
        ("lower-bound certificates", 120, certificates),
        ("Fourier coefficients against brute force", 60, fourier_crosscheck),
        ("harmonic weights", 60, weighted_example),
        ("weighted kappa sum identity", 30, kappa_identity),
        ("supermultiplicativity of mu", 120, supermultiplicativity),
        ("benchmark sanity at d = 16", 60, bench_sanity),
    ];
    let mut failed = 0;
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*budget);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {}; {:.2}s of {budget}s{}",
            n + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { " (over budget)" }
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
