//! Norm bounds on `sum_i alpha_i v_sigma(i)` that hold uniformly over every
//! permutation `sigma`, for zero-sum families of real vectors and
//! non-increasing non-negative coefficients. Alongside the closed-form
//! bounds sit exhaustive oracles (all permutations, all subset sums) that
//! verify them on small instances.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `n` for which all `n!` permutations are enumerated.
pub const MAX_PERMUTATION_N: usize = 9;
/// Largest `n` for which all `2^n` subset sums are enumerated.
pub const MAX_SUBSET_N: usize = 20;

/// `n` real vectors in `R^d` summing to zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct VectorConfig<T> {
    d: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Real> VectorConfig<T> {
    /// Validates dimensions and the zero-sum condition
    /// `||sum v_i|| <= zero_sum_tol * max(1, max ||v_i||)`.
    pub fn new(d: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Parameter("ambient dimension must be positive".into()));
        }
        if let Some(k) = vectors.iter().position(|v| v.len() != d) {
            return Err(Error::Dimension(format!(
                "vector {k} has dimension {}, expected {d}",
                vectors[k].len()
            )));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Parameter("vector components must be finite".into()));
        }
        let config = Self { d, vectors };
        let residual = config.sum_norm();
        let scale = config.max_norm().max(T::one());
        if residual > T::zero_sum_tol() * scale {
            return Err(Error::NotZeroSum {
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(config)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn norms(&self) -> Vec<T> {
        self.vectors.iter().map(|v| euclid(v)).collect()
    }

    pub fn max_norm(&self) -> T {
        self.norms().into_iter().fold(T::zero(), T::max)
    }

    pub fn total_norm(&self) -> T {
        self.norms().into_iter().sum()
    }

    fn sum_norm(&self) -> T {
        let mut acc = vec![T::zero(); self.d];
        for v in &self.vectors {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += *x;
            }
        }
        euclid(&acc)
    }

    pub fn is_sorted_by_norm(&self) -> bool {
        self.first_unsorted().is_none()
    }

    /// Lengths equal up to a few ulps count as ordered.
    fn first_unsorted(&self) -> Option<usize> {
        let norms = self.norms();
        let slack = T::lit(8.0) * T::epsilon();
        norms
            .windows(2)
            .position(|w| w[1] > w[0] * (T::one() + slack))
            .map(|k| k + 1)
    }

    /// Reorders the vectors by non-increasing length (ties keep their
    /// original order) and returns the sorted config with the order used.
    pub fn sorted_by_norm(&self) -> (Self, Vec<usize>) {
        let norms = self.norms();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));
        let sorted = Self {
            d: self.d,
            vectors: order.iter().map(|&k| self.vectors[k].clone()).collect(),
        };
        (sorted, order)
    }
}

fn euclid<T: Real>(v: &[T]) -> T {
    v.iter().map(|x| *x * *x).sum::<T>().sqrt()
}

/// Non-negative coefficients, held in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct CoeffSeq<T> {
    alphas: Vec<T>,
    /// `sort_order[i]` is the input position of `alphas[i]`.
    sort_order: Vec<usize>,
}

impl<T: Real> CoeffSeq<T> {
    /// Accepts coefficients in any order and sorts them non-increasingly,
    /// recording where each one came from. Ties keep input order.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(k) = values.iter().position(|x| !x.is_finite() || *x < T::zero()) {
            return Err(Error::Parameter(format!(
                "coefficient {k} must be finite and non-negative, got {}",
                values[k]
            )));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
        Ok(Self {
            alphas: order.iter().map(|&k| values[k]).collect(),
            sort_order: order,
        })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Coefficients in non-increasing order.
    pub fn alphas(&self) -> &[T] {
        &self.alphas
    }

    pub fn sort_order(&self) -> &[usize] {
        &self.sort_order
    }

    /// `alpha_{floor(n/2)+1}` in 1-indexed terms: the lower median.
    pub fn median(&self) -> T {
        self.alphas[self.len() / 2]
    }
}

/// A bijection on `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::Parameter(format!("{mapping:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(rng);
        Self { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(mapping: Vec<usize>) -> Result<Self> {
        Self::new(mapping)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.mapping
    }
}

fn check_lengths<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<()> {
    if v.len() != a.len() {
        return Err(Error::Dimension(format!(
            "{} vectors but {} coefficients",
            v.len(),
            a.len()
        )));
    }
    Ok(())
}

/// `|| sum_i alpha_i v_sigma(i) ||` with the coefficients in non-increasing order.
pub fn rearranged_sum_norm<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>, sigma: &Permutation) -> Result<T> {
    check_lengths(v, a)?;
    if sigma.len() != v.len() {
        return Err(Error::Dimension(format!(
            "permutation of length {} for {} vectors",
            sigma.len(),
            v.len()
        )));
    }
    Ok(weighted_sum_norm(v, a.alphas(), sigma.as_slice()))
}

fn weighted_sum_norm<T: Real>(v: &VectorConfig<T>, alphas: &[T], sigma: &[usize]) -> T {
    let mut acc = vec![T::zero(); v.dim()];
    for (alpha, &s) in alphas.iter().zip(sigma) {
        for (x, y) in acc.iter_mut().zip(&v.vectors[s]) {
            *x += *alpha * *y;
        }
    }
    euclid(&acc)
}

/// `sum_i |alpha_i - gamma|`.
pub fn weighted_abs_deviation<T: Real>(a: &CoeffSeq<T>, gamma: T) -> T {
    a.alphas().iter().map(|&x| (x - gamma).abs()).sum()
}

/// Median-shift bound: `max_i ||v_i|| * sum_i |alpha_i - beta|` with
/// `beta` the lower median of the coefficients.
pub fn bound_theorem_first<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<T> {
    check_lengths(v, a)?;
    if a.is_empty() {
        return Ok(T::zero());
    }
    Ok(v.max_norm() * weighted_abs_deviation(a, a.median()))
}

/// `max_i ||v_i||` times the sum of the `floor(n/2)` largest coefficients.
pub fn bound_corollary_first<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<T> {
    check_lengths(v, a)?;
    let head: T = a.alphas()[..a.len() / 2].iter().copied().sum();
    Ok(v.max_norm() * head)
}

fn require_sorted<T: Real>(v: &VectorConfig<T>) -> Result<()> {
    match v.first_unsorted() {
        Some(index) => Err(Error::Ordering { index }),
        None => Ok(()),
    }
}

/// Zonotope-based bound for a config sorted by non-increasing length:
/// `sum_{i<=j} alpha_i ||v_i|| - gamma/2 * (sum_{i<=j} ||v_i|| - sum_{i>j} ||v_i||)`.
///
/// `j` counts the leading terms (`1 <= j <= n-1`) and `gamma` must lie in
/// `[alpha_{j+1}, alpha_j]` (1-indexed).
pub fn bound_theorem_second<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>, j: usize, gamma: T) -> Result<T> {
    check_lengths(v, a)?;
    require_sorted(v)?;
    let n = v.len();
    if j < 1 || j + 1 > n {
        return Err(Error::Parameter(format!("j = {j} outside 1..={}", n.saturating_sub(1))));
    }
    let (hi, lo) = (a.alphas()[j - 1], a.alphas()[j]);
    if !(gamma >= lo && gamma <= hi) {
        return Err(Error::Parameter(format!("gamma = {gamma} outside [{lo}, {hi}]")));
    }
    Ok(second_bound_unchecked(&v.norms(), a.alphas(), j, gamma))
}

fn second_bound_unchecked<T: Real>(norms: &[T], alphas: &[T], j: usize, gamma: T) -> T {
    let lead: T = alphas[..j].iter().zip(&norms[..j]).map(|(a, r)| *a * *r).sum();
    let head: T = norms[..j].iter().copied().sum();
    let tail: T = norms[j..].iter().copied().sum();
    lead - gamma / (T::one() + T::one()) * (head - tail)
}

/// Minimizer of [`bound_theorem_second`] over all admissible `(j, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct SecondBound<T> {
    pub bound: T,
    pub j: usize,
    pub gamma: T,
}

/// Smallest zonotope bound over `j in 1..n` and `gamma` at either end of
/// `[alpha_{j+1}, alpha_j]`; the bound is affine in `gamma`, so an endpoint
/// attains the minimum over the interval.
pub fn bound_theorem_second_best<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<SecondBound<T>> {
    check_lengths(v, a)?;
    require_sorted(v)?;
    let n = v.len();
    if n < 2 {
        return Err(Error::Parameter("need at least two vectors".into()));
    }
    let norms = v.norms();
    let alphas = a.alphas();
    let mut best: Option<SecondBound<T>> = None;
    for j in 1..n {
        for gamma in [alphas[j], alphas[j - 1]] {
            let bound = second_bound_unchecked(&norms, alphas, j, gamma);
            if best.is_none_or(|b| bound < b.bound) {
                best = Some(SecondBound { bound, j, gamma });
            }
        }
    }
    Ok(best.expect("n >= 2 gives at least one candidate"))
}

/// `sum_{i <= ceil(n/2)} alpha_i ||v_i||` for a config sorted by length.
pub fn bound_corollary_second<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<T> {
    check_lengths(v, a)?;
    require_sorted(v)?;
    let k = v.len().div_ceil(2);
    Ok(a.alphas()[..k]
        .iter()
        .zip(v.norms())
        .map(|(a, r)| *a * r)
        .sum())
}

/// Exact maximum of [`rearranged_sum_norm`] over all `n!` permutations.
pub fn max_norm_over_permutations<T: Real>(v: &VectorConfig<T>, a: &CoeffSeq<T>) -> Result<(T, Permutation)> {
    check_lengths(v, a)?;
    let n = v.len();
    if n > MAX_PERMUTATION_N {
        return Err(Error::Budget {
            n,
            limit: MAX_PERMUTATION_N,
        });
    }
    let mut best = (T::zero(), (0..n).collect::<Vec<_>>());
    for sigma in (0..n).permutations(n) {
        let value = weighted_sum_norm(v, a.alphas(), &sigma);
        if value > best.0 {
            best = (value, sigma);
        }
    }
    Ok((best.0, Permutation { mapping: best.1 }))
}

/// Lower estimate of the maximum from `samples` random permutations (plus the
/// identity), for sizes beyond the exhaustive budget.
pub fn sampled_max_norm<T: Real, R: Rng + ?Sized>(
    v: &VectorConfig<T>,
    a: &CoeffSeq<T>,
    samples: usize,
    rng: &mut R,
) -> Result<(T, Permutation)> {
    check_lengths(v, a)?;
    let n = v.len();
    let mut best = Permutation::identity(n);
    let mut best_value = weighted_sum_norm(v, a.alphas(), best.as_slice());
    for _ in 0..samples {
        let sigma = Permutation::random(n, rng);
        let value = weighted_sum_norm(v, a.alphas(), sigma.as_slice());
        if value > best_value {
            best_value = value;
            best = sigma;
        }
    }
    Ok((best_value, best))
}

/// Largest `|| sum_{v in W} v ||` over all subsets `W`: the radius of the
/// smallest origin-centred ball containing the zonotope spanned by `v`.
pub fn zonotope_max_norm<T: Real>(v: &VectorConfig<T>) -> Result<T> {
    let n = v.len();
    if n > MAX_SUBSET_N {
        return Err(Error::Budget { n, limit: MAX_SUBSET_N });
    }
    // Gray-code walk: each step toggles one vector in or out of the running sum.
    let mut acc = vec![T::zero(); v.dim()];
    let mut best = T::zero();
    let mut inside = vec![false; n];
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let sign = if inside[bit] { -T::one() } else { T::one() };
        inside[bit] = !inside[bit];
        for (x, y) in acc.iter_mut().zip(&v.vectors[bit]) {
            *x += sign * *y;
        }
        best = best.max(euclid(&acc));
    }
    Ok(best)
}

/// Seeded zero-sum config: i.i.d. uniform components in `[-1, 1)`, recentred
/// by subtracting the mean.
pub fn random_zero_sum_config<T: Real>(n: usize, d: usize, seed: u64) -> Result<VectorConfig<T>> {
    if n < 2 || d < 1 {
        return Err(Error::Parameter(format!("need n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(n);
    for k in 0..d {
        let mean = raw.iter().map(|v| v[k]).sum::<f64>() / n as f64;
        for (i, v) in raw.iter().enumerate() {
            if k == 0 {
                vectors.push(Vec::with_capacity(d));
            }
            vectors[i].push(T::lit(v[k] - mean));
        }
    }
    // Put the rounding residue of the recentring into the last vector.
    for k in 0..d {
        let head: T = vectors[..n - 1].iter().map(|v| v[k]).sum();
        vectors[n - 1][k] = -head;
    }
    VectorConfig::new(d, vectors)
}

/// Seeded coefficient sequence in `[0, 1)`; roughly a third of draws
/// repeat an earlier value so that ties get exercised.
pub fn random_coeff_seq<T: Real>(n: usize, seed: u64) -> CoeffSeq<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.gen_bool(1.0 / 3.0) {
            let k = rng.gen_range(0..i);
            values.push(values[k]);
        } else {
            values.push(rng.gen_range(0.0..1.0));
        }
    }
    CoeffSeq::new(values.into_iter().map(T::lit).collect()).expect("draws are finite and non-negative")
}
