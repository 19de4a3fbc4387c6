//! Dense complex elimination for the small homogeneous systems the
//! certifier solves.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::default(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `‖M x‖_∞`.
    pub fn residual(&self, x: &[Complex<T>]) -> T {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Complex::default(), |acc: Complex<T>, (m, v)| acc + *m * *v)
                    .norm()
            })
            .fold(T::zero(), T::max)
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|c| c.norm()).fold(T::zero(), |a, b| a + b))
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }
}

/// A null vector normalized so that `a[pivot] = 1 ≥ max |a_n|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct NullspaceSolution<T> {
    #[serde(with = "crate::wire::complex_vec")]
    pub coefficients: Vec<Complex<T>>,
    pub pivot_index: usize,
    /// `‖M a‖_∞` after normalization.
    pub residual: T,
}

/// Relative residual accepted by [`nullspace`].
pub const DEFAULT_NULLSPACE_TOL: f64 = 1e-10;

/// Nontrivial null vector of an `N × (N+1)` (or wider) system.
///
/// Row reduction with partial pivoting by modulus; the first non-pivot
/// column is set to 1 and the rest back-substituted. The vector is then
/// divided by its largest entry (lowest index on ties).
pub fn nullspace<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<NullspaceSolution<T>> {
    if m.cols <= m.rows {
        return Err(Error::Invalid(format!(
            "need more columns than rows for a guaranteed null vector, got {}x{}",
            m.rows, m.cols
        )));
    }
    let mut a = m.clone();
    let negligible = T::of(64.0) * T::epsilon() * m.max_abs();
    let mut pivots: Vec<usize> = Vec::with_capacity(m.rows);
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let (best, modulus) = (row..a.rows)
            .map(|i| (i, a.get(i, col).norm()))
            .fold((row, T::neg_infinity()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if modulus <= negligible {
            continue;
        }
        a.swap_rows(row, best);
        let p = a.get(row, col);
        for i in row + 1..a.rows {
            let factor = a.get(i, col) / p;
            if factor.norm_sqr() == T::zero() {
                continue;
            }
            a.set(i, col, Complex::default());
            for j in col + 1..a.cols {
                let v = a.get(i, j) - factor * a.get(row, j);
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }

    let free = (0..a.cols)
        .find(|c| !pivots.contains(c))
        .expect("more columns than pivots");
    let mut x = vec![Complex::default(); a.cols];
    x[free] = Complex::new(T::one(), T::zero());
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let s = (pc + 1..a.cols).fold(Complex::default(), |acc: Complex<T>, j| acc + a.get(r, j) * x[j]);
        x[pc] = -s / a.get(r, pc);
    }

    let (pivot_index, _) = x
        .iter()
        .enumerate()
        .map(|(n, v)| (n, v.norm()))
        .fold((0, T::neg_infinity()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let scale = x[pivot_index];
    for v in x.iter_mut() {
        *v /= scale;
    }
    x[pivot_index] = Complex::new(T::one(), T::zero());

    let residual = m.residual(&x);
    let bound = tol * m.norm_inf().max(T::min_positive_value());
    if !(residual <= bound) {
        return Err(Error::IllConditioned {
            residual: residual.as_f64(),
            tol: bound.as_f64(),
        });
    }
    Ok(NullspaceSolution {
        coefficients: x,
        pivot_index,
        residual,
    })
}
