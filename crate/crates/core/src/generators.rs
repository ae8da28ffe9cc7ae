//! Named example matrices, closed-form circulant spectra, and seeded random
//! families with forced multiple eigenvalues.

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// First row of a circulant matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpec<T> {
    pub first_row: Vec<Complex<T>>,
}

impl<T: Real> CirculantSpec<T> {
    pub fn from_real(first_row: &[T]) -> Self {
        Self {
            first_row: first_row.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        }
    }
}

/// Entry `(i, j)` is `c[(j - i) mod n]`: each row is the previous one
/// shifted right by one place.
pub fn circulant<T: Real>(spec: &CirculantSpec<T>) -> ComplexMatrix<T> {
    let c = &spec.first_row;
    let n = c.len();
    ComplexMatrix::from_fn(n, n, |i, j| c[(j + n - i) % n])
}

/// `lambda_k = sum_j c_j w^(jk)` with `w = exp(2 pi i / n)`, in `k` order.
pub fn circulant_spectrum<T: Real>(spec: &CirculantSpec<T>) -> Vec<Complex<T>> {
    let c = &spec.first_row;
    let n = c.len();
    let tau = T::TAU();
    (0..n)
        .map(|k| {
            c.iter()
                .enumerate()
                .map(|(j, cj)| {
                    // Reduce the exponent mod n before scaling to keep the angle small.
                    let angle = tau * T::from_usize_lossy((j * k) % n) / T::from_usize_lossy(n);
                    cj * Complex::from_polar(T::one(), angle)
                })
                .sum()
        })
        .collect()
}

/// Primitive cube root of unity `(-1 + i sqrt 3) / 2`.
pub fn omega<T: Real>() -> Complex<T> {
    Complex::new(-T::lit(0.5), T::lit(3.0).sqrt() / T::lit(2.0))
}

/// Decodes the compact entry alphabet `{0, +-1, +-w, +-w^2}` used by the
/// Hesse tables: `1` is one, `2` is `w`, `3` is `w^2`, sign carried over.
fn unit<T: Real>(code: i8) -> Complex<T> {
    let base = match code.abs() {
        0 => return Complex::new(T::zero(), T::zero()),
        1 => Complex::new(T::one(), T::zero()),
        2 => omega(),
        3 => omega::<T>().conj(),
        _ => unreachable!("bad table code {code}"),
    };
    if code < 0 {
        -base
    } else {
        base
    }
}

/// The 3x3 matrix with zero diagonal and ones elsewhere.
pub fn matrix_a3<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(3, 3, |i, j| {
        Complex::new(if i == j { T::zero() } else { T::one() }, T::zero())
    })
}

pub fn b5_spec<T: Real>() -> CirculantSpec<T> {
    CirculantSpec::from_real(&[0.0, 1.0, -1.0, -1.0, 1.0].map(T::lit))
}

pub fn c7_spec<T: Real>() -> CirculantSpec<T> {
    CirculantSpec::from_real(&[0.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0].map(T::lit))
}

/// Symmetric 5x5 circulant with first row `(0, 1, -1, -1, 1)`.
pub fn matrix_b5<T: Real>() -> ComplexMatrix<T> {
    circulant(&b5_spec())
}

/// Symmetric 7x7 circulant with first row `(0, 1, -1, 1, 1, -1, 1)`.
pub fn matrix_c7<T: Real>() -> ComplexMatrix<T> {
    circulant(&c7_spec())
}

const HESSE_POINTS: [[i8; 3]; 9] = [
    [0, 1, -1],
    [0, 1, -2],
    [0, 1, -3],
    [1, 0, -1],
    [1, 0, -3],
    [1, 0, -2],
    [1, -1, 0],
    [1, -2, 0],
    [1, -3, 0],
];

const HESSE_DEPENDENCY: [[i8; 9]; 12] = [
    [1, 0, 0, -1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, -1, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, -1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, -3, -1, -2],
    [0, 0, 0, -3, -2, -1, 0, 0, 0],
    [-3, -1, -2, 0, 0, 0, 0, 0, 0],
    [0, 2, 0, 0, -1, 0, 0, 1, 0],
    [0, 0, -3, 0, 0, 1, 0, 0, -1],
    [-3, 0, 0, 0, 1, 0, 0, 0, -1],
    [2, 0, 0, 0, 0, -1, 0, 1, 0],
    [0, 1, 0, -2, 0, 0, 0, 0, 2],
    [0, 0, 2, -1, 0, 0, 0, 1, 0],
];

/// The nine Hesse points in the complex projective plane, one per row.
pub fn hesse_points<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(9, 3, |i, j| unit(HESSE_POINTS[i][j]))
}

/// 12x9 dependency matrix: one row per line, holding the coefficients of the
/// vanishing combination of its three collinear points.
pub fn hesse_dependency<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(12, 9, |i, j| unit(HESSE_DEPENDENCY[i][j]))
}

/// `A^H A` for the Hesse dependency matrix `A`.
pub fn hesse_gram<T: Real>() -> ComplexMatrix<T> {
    let a = hesse_dependency::<T>();
    &a.conj_transpose() * &a
}

/// Block-diagonal matrix of `blocks` random doubly stochastic `k x k`
/// blocks, each a convex combination of `k + 1` random permutation matrices.
pub fn block_doubly_stochastic<T: Real>(k: usize, blocks: usize, seed: u64) -> Result<ComplexMatrix<T>> {
    if k == 0 || blocks == 0 {
        return Err(Error::Parameter(format!("need k >= 1 and blocks >= 1, got k = {k}, blocks = {blocks}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = k * blocks;
    let mut m = ComplexMatrix::zeros(n, n);
    for b in 0..blocks {
        let offset = b * k;
        let weights: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in weights {
            let mut perm: Vec<usize> = (0..k).collect();
            perm.shuffle(&mut rng);
            for (i, &p) in perm.iter().enumerate() {
                m[(offset + i, offset + p)].re += T::lit(w / total);
            }
        }
    }
    Ok(m)
}

/// Direct sum of two copies of one random non-negative `k x k` block, so
/// every eigenvalue of the block has geometric multiplicity at least two.
/// With `scramble` the result is conjugated by a random permutation.
pub fn random_multiple_eigenvalue_matrix<T: Real>(k: usize, seed: u64, scramble: bool) -> Result<ComplexMatrix<T>> {
    if k == 0 {
        return Err(Error::Parameter("block size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block: Vec<f64> = (0..k * k).map(|_| rng.gen_range(0.0..1.0)).collect();
    let n = 2 * k;
    let mut perm: Vec<usize> = (0..n).collect();
    if scramble {
        perm.shuffle(&mut rng);
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for copy in 0..2 {
        for i in 0..k {
            for j in 0..k {
                let (r, c) = (perm[copy * k + i], perm[copy * k + j]);
                m[(r, c)] = Complex::new(T::lit(block[i * k + j]), T::zero());
            }
        }
    }
    Ok(m)
}

/// Random non-negative `n x n` matrix with entries in `[0, 1)`; roughly a
/// quarter of the entries are exactly zero.
pub fn random_nonneg_matrix<T: Real>(n: usize, seed: u64) -> Result<ComplexMatrix<T>> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ComplexMatrix::from_fn(n, n, |_, _| {
        let x = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..1.0) };
        Complex::new(T::lit(x), T::zero())
    }))
}

/// Ids accepted by [`named`]; upper-case letters are integer placeholders.
pub const EXAMPLE_IDS: &[&str] = &[
    "a3",
    "b5",
    "c7",
    "hesse-a",
    "hesse-h",
    "blocks:k=K,b=B,seed=S",
    "random:k=K,seed=S",
];

/// A generated matrix plus whatever part of its spectrum is known exactly.
#[derive(Debug, Clone)]
pub struct NamedMatrix<T> {
    pub id: String,
    pub matrix: ComplexMatrix<T>,
    pub exact_values: Vec<Complex<T>>,
}

/// Resolves one of the [`EXAMPLE_IDS`].
pub fn named<T: Real>(id: &str) -> Result<NamedMatrix<T>> {
    let real = |x: f64| Complex::new(T::lit(x), T::zero());
    let (matrix, exact_values) = match id {
        "a3" => (matrix_a3(), vec![real(2.0), real(-1.0)]),
        "b5" => (matrix_b5(), real_parts(circulant_spectrum(&b5_spec()))),
        "c7" => (matrix_c7(), real_parts(circulant_spectrum(&c7_spec()))),
        "hesse-a" => (hesse_dependency(), Vec::new()),
        "hesse-h" => (hesse_gram(), vec![real(0.0), real(6.0)]),
        other => {
            let (family, params) = other
                .split_once(':')
                .ok_or_else(|| Error::Parameter(format!("unknown example id `{other}`")))?;
            let params = parse_params(params)?;
            let get = |key: &str| -> Result<u64> {
                params
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::Parameter(format!("`{other}` is missing `{key}=`")))
            };
            match family {
                "blocks" => {
                    let m = block_doubly_stochastic(get("k")? as usize, get("b")? as usize, get("seed")?)?;
                    (m, vec![real(1.0)])
                }
                "random" => {
                    let scramble = params.iter().any(|(k, v)| k == "scramble" && *v != 0);
                    (random_multiple_eigenvalue_matrix(get("k")? as usize, get("seed")?, scramble)?, Vec::new())
                }
                _ => return Err(Error::Parameter(format!("unknown example family `{family}`"))),
            }
        }
    };
    Ok(NamedMatrix {
        id: id.to_string(),
        matrix,
        exact_values,
    })
}

/// Symmetric real circulants have real spectra; drops the DFT's rounding residue.
fn real_parts<T: Real>(values: Vec<Complex<T>>) -> Vec<Complex<T>> {
    values.into_iter().map(|z| Complex::new(z.re, T::zero())).collect()
}

fn parse_params(s: &str) -> Result<Vec<(String, u64)>> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value, got `{kv}`")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("`{k}` needs a non-negative integer, got `{v}`")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}
