use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default bound on `|k_m|`.
pub const DEFAULT_MAGNITUDE_CAP: i64 = i32::MAX as i64;

/// A frequency vector `k ∈ Z^d`, `d ≥ 1`.
///
/// Ordering is lexicographic on the entries, which is the summation order
/// used everywhere a polynomial is reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        Self::with_cap(entries, DEFAULT_MAGNITUDE_CAP)
    }

    pub fn with_cap(entries: Vec<i64>, cap: i64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("multi-index must have dimension at least 1".into()));
        }
        if let Some(bad) = entries.iter().find(|e| e.unsigned_abs() > cap.unsigned_abs()) {
            return Err(Error::Domain(format!(
                "multi-index entry {bad} exceeds magnitude cap {cap}"
            )));
        }
        Ok(Self(entries))
    }

    /// Callers guarantee `d ≥ 1` and entries within the default cap.
    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(!entries.is_empty());
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self(vec![0; dim])
    }

    /// `m`-th unit vector (0-based coordinate).
    pub fn unit(dim: usize, m: usize) -> Self {
        let mut k = Self::zeros(dim);
        k.0[m] = 1;
        k
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All entries in `{0, 1}`.
    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&e| e == 0 || e == 1)
    }

    /// All entries in `{-1, 0, 1}`.
    pub fn is_ternary(&self) -> bool {
        self.0.iter().all(|&e| (-1..=1).contains(&e))
    }

    /// 0-based coordinates with a nonzero entry.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(m, _)| m)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }

    /// Entrywise sum; panics on dimension mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `k · x`.
    pub fn dot<T: Real>(&self, x: &[T]) -> T {
        self.0
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&k, &xm)| acc + T::of(k as f64) * xm)
    }
}

impl TryFrom<Vec<i64>> for MultiIndex {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<MultiIndex> for Vec<i64> {
    fn from(k: MultiIndex) -> Self {
        k.0
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = i64;

    fn index(&self, m: usize) -> &i64 {
        &self.0[m]
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(MultiIndex::new(vec![]).is_err());
        assert!(MultiIndex::new(vec![1 << 40]).is_err());
        assert!(MultiIndex::with_cap(vec![5, -5], 5).is_ok());
        assert!(MultiIndex::with_cap(vec![6], 5).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let a = MultiIndex::new(vec![0, 1]).unwrap();
        let b = MultiIndex::new(vec![1, 0]).unwrap();
        let c = MultiIndex::new(vec![-1, 5]).unwrap();
        assert!(c < a && a < b);
    }

    #[test]
    fn display_and_serde() {
        let k = MultiIndex::new(vec![3, -1, 0]).unwrap();
        assert_eq!(k.to_string(), "(3,-1,0)");
        let json = serde_json::to_string(&k).unwrap();
        assert_eq!(json, "[3,-1,0]");
        let back: MultiIndex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, k);
        assert!(serde_json::from_str::<MultiIndex>("[]").is_err());
    }
}
