//! Riemann zeta on the real half-line `s > 1`.
//!
//! The evaluation is a partial sum plus an Euler–Maclaurin tail. The
//! truncation index is grown until the bound on the first omitted
//! correction term drops below half the requested tolerance; the other half
//! is left for rounding in the partial sum.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `B_2, B_4, …, B_16`.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Correction terms kept in the tail; the next Bernoulli number bounds the remainder.
const CORRECTIONS: usize = 7;

const MAX_TRUNCATION: u64 = 1 << 40;

/// `Σ_{m≥1} m^{-alpha}` to absolute error `tol`.
pub fn zeta<T: Real>(alpha: T, tol: T) -> Result<T> {
    if !(alpha > T::one()) || !alpha.is_finite() {
        return Err(Error::Domain(format!("zeta needs alpha > 1, got {alpha}")));
    }
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("zeta needs tol > 0, got {tol}")));
    }
    let s = alpha.as_f64();
    let target = tol.as_f64() / 2.0;

    let mut m: u64 = 8;
    while remainder_bound(s, m as f64) > target && m < MAX_TRUNCATION {
        m *= 2;
    }
    Ok(T::of(euler_maclaurin(s, m)))
}

/// Truncation index `zeta` would use for `(alpha, tol)`.
pub fn truncation_index(alpha: f64, tol: f64) -> u64 {
    let mut m: u64 = 8;
    while remainder_bound(alpha, m as f64) > tol / 2.0 && m < MAX_TRUNCATION {
        m *= 2;
    }
    m
}

fn euler_maclaurin(s: f64, m: u64) -> f64 {
    let mf = m as f64;
    // Smallest terms first.
    let partial: f64 = (1..m).rev().map(|j| (j as f64).powf(-s)).sum();
    let mut tail = mf.powf(1.0 - s) / (s - 1.0) + 0.5 * mf.powf(-s);
    // rising = s (s+1) … (s+2j-2), fact = (2j)!
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_EVEN.iter().take(CORRECTIONS).enumerate() {
        let j = j + 1;
        tail += b / fact * rising * mf.powf(-s - 2.0 * j as f64 + 1.0);
        let next = 2.0 * j as f64;
        rising *= (s + next - 1.0) * (s + next);
        fact *= (next + 1.0) * (next + 2.0);
    }
    partial + tail
}

/// Magnitude of the first omitted Euler–Maclaurin term.
fn remainder_bound(s: f64, m: f64) -> f64 {
    let p = CORRECTIONS + 1;
    let mut rising = 1.0;
    for i in 0..(2 * p - 1) {
        rising *= s + i as f64;
    }
    let fact: f64 = (1..=2 * p).map(|i| i as f64).product();
    BERNOULLI_EVEN[p - 1].abs() / fact * rising * m.powf(-s - 2.0 * p as f64 + 1.0)
}

/// Partial sum `Σ_{m=1}^{terms} m^{-alpha}` bracketed by the integral test:
/// the true value lies in `[S + ∫_{terms+1}^∞, S + ∫_{terms}^∞]`.
///
/// This is the plain truncated series, kept independent of [`zeta`].
pub fn truncated_bracket(alpha: f64, terms: u64) -> (f64, f64) {
    assert!(alpha > 1.0 && terms >= 1);
    let partial: f64 = (1..=terms).rev().map(|j| (j as f64).powf(-alpha)).sum();
    let tail = |from: f64| from.powf(1.0 - alpha) / (alpha - 1.0);
    (partial + tail(terms as f64 + 1.0), partial + tail(terms as f64))
}
