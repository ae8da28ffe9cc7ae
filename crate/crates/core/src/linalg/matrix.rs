use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {r} has {} entries, expected {cols}",
                rows[r].len()
            )));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from nested rows of real entries.
    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let complex: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, T::zero())).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        assert!(rows > 0 && cols > 0, "empty shape");
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex::new(T::zero(), T::zero()))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// All entries real with non-negative real part.
    pub fn is_nonneg_real(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.im == T::zero() && z.re >= T::zero())
    }

    /// First entry that breaks non-negativity, as `(row, col)`.
    pub fn first_non_nonneg(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|z| !(z.im == T::zero() && z.re >= T::zero()))
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol)
            })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max(1, ||m||_F)`, the scale every relative tolerance is measured against.
    pub fn scale(&self) -> T {
        self.frobenius_norm().max(T::one())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: Complex<T>) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] -= lambda;
        }
        out
    }

    pub fn scaled(&self, t: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * t).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        }))
    }

    pub fn mul_vec(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(ComplexVector::from(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect::<Vec<_>>(),
        ))
    }

    /// Widens or narrows the entry type.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.to_f64_lossy()), U::lit(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
#[serde(transparent)]
pub struct ComplexVector<T> {
    #[serde(with = "crate::complex_serde::vec")]
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn sum(&self) -> Complex<T> {
        self.entries.iter().copied().sum()
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self::from(self.entries.iter().map(|z| z * s).collect::<Vec<_>>())
    }
}

impl<T> From<Vec<Complex<T>>> for ComplexVector<T> {
    fn from(entries: Vec<Complex<T>>) -> Self {
        Self { entries }
    }
}

impl<T> Index<usize> for ComplexVector<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}
