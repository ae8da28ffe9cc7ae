//! One-sided (Hestenes) Jacobi SVD, used for numerical rank and null spaces.

use num_complex::Complex;
use num_traits::Zero;

use super::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Singular values (non-increasing) with the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    pub right_vectors: Vec<ComplexVector<T>>,
}

/// Jacobi SVD of `m`. Wide inputs are padded with zero rows, which leaves the
/// singular values and the right null space unchanged.
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Svd<T> {
    let rows = m.n_rows().max(m.n_cols());
    let n = m.n_cols();
    let mut cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| {
            (0..rows)
                .map(|i| if i < m.n_rows() { m[(i, j)] } else { Complex::zero() })
                .collect()
        })
        .collect();
    let mut v: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::zero() })
                .collect()
        })
        .collect();

    let eps = T::epsilon();
    let two = T::one() + T::one();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let g: Complex<T> = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let gabs = g.norm();
                if gabs == T::zero() || gabs <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let unphase = (g / gabs).conj();
                let zeta = (beta - alpha) / (two * gabs);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, unphase, c, s);
                rotate(&mut v, p, q, unphase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    Svd {
        singular_values: order.iter().map(|&k| norms[k]).collect(),
        right_vectors: order.iter().map(|&k| ComplexVector::from(v[k].clone())).collect(),
    }
}

fn rotate<T: Real>(cols: &mut [Vec<Complex<T>>], p: usize, q: usize, unphase: Complex<T>, c: T, s: T) {
    let (left, right) = cols.split_at_mut(q);
    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
        let a = *x;
        let b = *y * unphase;
        *x = a * c - b * s;
        *y = a * s + b * c;
    }
}

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("rank tolerance must be positive, got {tol}")))
    }
}

/// Number of singular values exceeding `tol * sigma_max`.
pub fn numerical_rank<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<usize> {
    check_tol(tol)?;
    Ok(rank_from(&svd(m).singular_values, tol))
}

fn rank_from<T: Real>(sv: &[T], tol: T) -> usize {
    let top = sv.first().copied().unwrap_or_else(T::zero);
    if top == T::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Orthonormal basis of the numerical null space at relative threshold `tol`.
pub fn null_space<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<Vec<ComplexVector<T>>> {
    check_tol(tol)?;
    let Svd {
        singular_values,
        right_vectors,
    } = svd(m);
    let rank = rank_from(&singular_values, tol);
    Ok(right_vectors.into_iter().skip(rank).collect())
}
