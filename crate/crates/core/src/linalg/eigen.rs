//! Eigenvalues of small dense complex matrices: Householder reduction to
//! upper Hessenberg form followed by single-shift complex QR iteration with
//! Wilkinson shifts.

use num_complex::Complex;
use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// QR steps allowed per unit of matrix dimension.
pub const SWEEPS_PER_ROW: usize = 100;

/// Reduces `a` in place to upper Hessenberg form by unitary similarity.
pub fn hessenberg<T: Real>(a: &mut ComplexMatrix<T>) {
    let n = a.n_rows();
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;

        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let two = T::one() + T::one();

        // A <- (I - 2 v v^H) A
        for j in k..n {
            let dot: Complex<T> = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * a[(k + 1 + t, j)])
                .sum();
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= vt * dot * two;
            }
        }
        // A <- A (I - 2 v v^H)
        for i in 0..n {
            let dot: Complex<T> = v
                .iter()
                .enumerate()
                .map(|(t, vt)| a[(i, k + 1 + t)] * vt)
                .sum();
            for (t, vt) in v.iter().enumerate() {
                a[(i, k + 1 + t)] -= dot * vt.conj() * two;
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = Complex::zero();
        }
    }
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let two = T::one() + T::one();
    let half_diff = (a - d) / two;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mid = (a + d) / two;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens<T: Real>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == T::zero() {
        return (T::one(), Complex::zero());
    }
    if x.norm() == T::zero() {
        return (T::zero(), Complex::new(T::one(), T::zero()));
    }
    let c = x.norm() / r;
    let s = (y * c / x).conj();
    (c, s)
}

/// Eigenvalues of a square matrix, with repetition, in the order they deflate.
pub fn eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let n = m.n_rows();
    let mut h = m.clone();
    hessenberg(&mut h);

    let budget = SWEEPS_PER_ROW * n;
    let deflation = T::deflation_tol();
    let floor = T::epsilon() * h.frobenius_norm();
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // Locate the active window [lo, hi] by scanning for a negligible subdiagonal.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= deflation * local || sub <= floor {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= budget {
            return Err(Error::NoConvergence {
                iterations: total,
                partial: Box::new(h.cast()),
            });
        }
        total += 1;
        since_deflation += 1;

        let mu = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            let scale = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { T::zero() };
            h[(hi, hi)] + Complex::new(T::lit(0.75) * scale, T::lit(0.4) * scale)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, mu);
    }
    Ok(h.diagonal())
}

/// One explicit shifted QR step `H - mu I = QR`, `H <- RQ + mu I` on the window.
fn qr_step<T: Real>(h: &mut ComplexMatrix<T>, lo: usize, hi: usize, mu: Complex<T>) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = Complex::zero();
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}
