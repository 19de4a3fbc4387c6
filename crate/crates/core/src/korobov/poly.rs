use std::collections::btree_map::{self, BTreeMap};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smoothness parameter `alpha > 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Smoothness<T>(T);

impl<T: Real> Smoothness<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::one() && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!("smoothness must satisfy alpha > 1, got {alpha}")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// `(Π_m max(1, |k_m|))^alpha`, with the integer product formed exactly first.
pub fn korobov_weight<T: Real>(k: &MultiIndex, alpha: Smoothness<T>) -> Result<T> {
    let mut prod: u128 = 1;
    for &e in k.as_slice() {
        prod = prod
            .checked_mul(e.unsigned_abs().max(1) as u128)
            .ok_or_else(|| Error::Overflow(format!("Korobov weight of {k} overflows 128 bits")))?;
    }
    let base = T::from_u128(prod).unwrap_or_else(T::infinity);
    Ok(base.powf(alpha.get()))
}

/// Same quantity as [`korobov_weight`], as a product of per-coordinate powers.
fn korobov_weight_float<T: Real>(k: &MultiIndex, alpha: Smoothness<T>) -> T {
    k.as_slice()
        .iter()
        .map(|&e| T::of(e.unsigned_abs().max(1) as f64).powf(alpha.get()))
        .fold(T::one(), |a, b| a * b)
}

/// Finitely supported Fourier series `Σ_k c_k e^{2πi k·x}` on `[0,1)^d`.
///
/// Zero coefficients are never stored, so two polynomials are equal iff
/// their term maps are equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "PolynomialWire<T>",
    into = "PolynomialWire<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct FourierPolynomial<T> {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex<T>>,
}

impl<T: Real> FourierPolynomial<T> {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("polynomial dimension must be at least 1".into()));
        }
        Ok(Self {
            dim,
            terms: BTreeMap::new(),
        })
    }

    /// The constant function `c`.
    pub fn constant(dim: usize, c: Complex<T>) -> Result<Self> {
        let mut f = Self::zero(dim)?;
        f.insert(MultiIndex::zeros(dim), c)?;
        Ok(f)
    }

    /// Single mode `c · e_k`.
    pub fn monomial(k: MultiIndex, c: Complex<T>) -> Self {
        let mut f = Self {
            dim: k.dim(),
            terms: BTreeMap::new(),
        };
        if c != Complex::new(T::zero(), T::zero()) {
            f.terms.insert(k, c);
        }
        f
    }

    /// Builds from `(k, c)` pairs, rejecting duplicate keys.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex<T>)>,
    {
        let mut f = Self::zero(dim)?;
        let mut seen = std::collections::BTreeSet::new();
        for (k, c) in terms {
            if !seen.insert(k.clone()) {
                return Err(Error::Invalid(format!("duplicate key {k}")));
            }
            f.insert(k, c)?;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic key order.
    pub fn terms(&self) -> btree_map::Iter<'_, MultiIndex, Complex<T>> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: &MultiIndex) -> Complex<T> {
        self.terms.get(k).copied().unwrap_or_else(Complex::default)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// Sets the coefficient at `k`; a zero coefficient removes the key.
    pub fn insert(&mut self, k: MultiIndex, c: Complex<T>) -> Result<()> {
        self.check_dim(k.dim())?;
        if c.norm_sqr() == T::zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
        Ok(())
    }

    /// Adds `c` to the coefficient at `k`.
    pub fn add_term(&mut self, k: MultiIndex, c: Complex<T>) -> Result<()> {
        let sum = self.coefficient(&k) + c;
        self.insert(k, sum)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut out = Self {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (k, v) in &self.terms {
            let w = *v * c;
            if w.norm_sqr() != T::zero() {
                out.terms.insert(k.clone(), w);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v)?;
        }
        Ok(out)
    }

    /// Pointwise product, i.e. convolution of coefficient sequences.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut acc: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        for (k, a) in &self.terms {
            for (h, b) in &other.terms {
                *acc.entry(k.add(h)).or_default() += *a * *b;
            }
        }
        Self::from_terms(self.dim, acc)
    }

    /// `Σ_k c_k exp(2πi k·x)`, summed in key order.
    pub fn eval(&self, x: &[T]) -> Result<Complex<T>> {
        self.check_dim(x.len())?;
        let two_pi = T::TAU();
        let mut sum = Complex::new(T::zero(), T::zero());
        for (k, c) in &self.terms {
            let phase = k.dot(x);
            // reduce to [-1/2, 1/2] before scaling by 2π
            let frac = phase - phase.round();
            let (s, co) = (two_pi * frac).sin_cos();
            sum += *c * Complex::new(co, s);
        }
        Ok(sum)
    }

    /// `max_k |c_k| · korobov_weight(k)`; zero for the zero polynomial.
    pub fn korobov_norm(&self, alpha: Smoothness<T>) -> T {
        self.terms
            .iter()
            .map(|(k, c)| {
                let w = korobov_weight(k, alpha).unwrap_or_else(|_| korobov_weight_float(k, alpha));
                c.norm() * w
            })
            .fold(T::zero(), T::max)
    }

    /// `∫_{[0,1]^d} f = c_0`.
    pub fn integral(&self) -> Complex<T> {
        self.coefficient(&MultiIndex::zeros(self.dim))
    }

    /// `Σ_k |c_k|`, the sup-norm bound used to scale tolerances.
    pub fn abs_sum(&self) -> T {
        self.terms.values().map(|c| c.norm()).fold(T::zero(), |a, b| a + b)
    }

    /// Every key lies in `{-1,0,1}^d`.
    pub fn support_is_ternary(&self) -> bool {
        self.terms.keys().all(MultiIndex::is_ternary)
    }

    /// `max_k |c_k - d_k|` over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for (k, c) in &self.terms {
            worst = worst.max((*c - other.coefficient(k)).norm());
        }
        for (k, c) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire<T> {
    k: Vec<i64>,
    re: T,
    im: T,
}

#[derive(Serialize, Deserialize)]
#[doc(hidden)]
pub struct PolynomialWire<T> {
    dim: usize,
    terms: Vec<TermWire<T>>,
}

impl<T: Real> TryFrom<PolynomialWire<T>> for FourierPolynomial<T> {
    type Error = Error;

    fn try_from(wire: PolynomialWire<T>) -> Result<Self> {
        let dim = wire.dim;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| {
                if t.k.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: t.k.len(),
                    });
                }
                Ok((MultiIndex::new(t.k)?, Complex::new(t.re, t.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(dim, terms)
    }
}

impl<T: Real> From<FourierPolynomial<T>> for PolynomialWire<T> {
    fn from(f: FourierPolynomial<T>) -> Self {
        PolynomialWire {
            dim: f.dim,
            terms: f
                .terms
                .into_iter()
                .map(|(k, c)| TermWire {
                    k: k.into_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}
