//! Row disks `D(a_ii, r)` for the radius variants: full Gershgorin, the
//! `m` largest off-diagonal magnitudes (half, third, `ceil(n/2)`), and the
//! median-shifted radius for non-negative rows.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// How a disk's radius is computed from its row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RadiusKind {
    /// All off-diagonal magnitudes.
    Full,
    /// The `floor(n/2)` largest off-diagonal magnitudes.
    Half,
    /// The `m` largest off-diagonal magnitudes.
    Fraction(usize),
    /// Sum of `|b_ij - b*|` over the row with zeroed diagonal, `b*` its lower median.
    Median,
    /// The `ceil(n/2)` largest off-diagonal magnitudes.
    Corollary2,
    /// The `ceil(n/3)` largest off-diagonal magnitudes.
    Third,
}

impl fmt::Display for RadiusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadiusKind::Full => f.write_str("full"),
            RadiusKind::Half => f.write_str("half"),
            RadiusKind::Fraction(m) => write!(f, "fraction:{m}"),
            RadiusKind::Median => f.write_str("median"),
            RadiusKind::Corollary2 => f.write_str("corollary2"),
            RadiusKind::Third => f.write_str("third"),
        }
    }
}

impl FromStr for RadiusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full" => RadiusKind::Full,
            "half" => RadiusKind::Half,
            "median" => RadiusKind::Median,
            "corollary2" => RadiusKind::Corollary2,
            "third" => RadiusKind::Third,
            other => match other.strip_prefix("fraction:").map(str::parse) {
                Some(Ok(m)) => RadiusKind::Fraction(m),
                _ => return Err(Error::Parameter(format!("unknown radius kind `{other}`"))),
            },
        })
    }
}

impl TryFrom<String> for RadiusKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RadiusKind> for String {
    fn from(k: RadiusKind) -> Self {
        k.to_string()
    }
}

/// Closed disk `{ z : |z - center| <= radius }` attached to a matrix row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Disk<T> {
    #[serde(with = "crate::complex_serde")]
    pub center: Complex<T>,
    pub radius: T,
    pub kind: RadiusKind,
    pub row: usize,
}

impl<T: Real> Disk<T> {
    /// Default boundary tolerance `1e-8 * max(1, |c| + r)` (at `f64`).
    pub fn default_boundary_tol(&self) -> T {
        T::default_boundary_factor() * (self.center.norm() + self.radius).max(T::one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

impl Containment {
    /// Inside or on the boundary.
    pub fn is_covered(self) -> bool {
        !matches!(self, Containment::Outside)
    }
}

/// Median-shifted radius of one row, with the sum that skips the diagonal
/// slot kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct MedianRadius<T> {
    /// `sum_j |b_ij - b*|` over every column, including `|b_ii - b*| = b*`.
    pub radius: T,
    /// Lower median of the row with its diagonal replaced by zero.
    pub b_star: T,
    /// `sum_{j != i} |b_ij - b*|`. Too small to be a valid radius whenever `b* > 0`.
    pub literal_radius: T,
}

fn check_row<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "row disks need a square matrix, got {}x{}",
            m.n_rows(),
            m.n_cols()
        )));
    }
    if i >= m.n_rows() {
        return Err(Error::Parameter(format!("row {i} out of range for n = {}", m.n_rows())));
    }
    Ok(())
}

/// Off-diagonal magnitudes of row `i`, largest first.
fn off_diagonal_desc<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Vec<T> {
    let mut mags: Vec<T> = m
        .row(i)
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, z)| z.norm())
        .collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    mags
}

pub fn full_radius<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<T> {
    check_row(m, i)?;
    Ok(off_diagonal_desc(m, i).into_iter().sum())
}

/// Sum of the `count` largest off-diagonal magnitudes of row `i`.
pub fn fraction_radius<T: Real>(m: &ComplexMatrix<T>, i: usize, count: usize) -> Result<T> {
    check_row(m, i)?;
    let n = m.n_rows();
    if count > n - 1 {
        return Err(Error::Parameter(format!("count {count} exceeds n - 1 = {}", n - 1)));
    }
    Ok(off_diagonal_desc(m, i).into_iter().take(count).sum())
}

pub fn half_radius<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<T> {
    check_row(m, i)?;
    fraction_radius(m, i, m.n_rows() / 2)
}

/// `ceil(n/3)` terms, capped at the `n - 1` available.
pub fn third_radius<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<T> {
    check_row(m, i)?;
    let n = m.n_rows();
    fraction_radius(m, i, n.div_ceil(3).min(n - 1))
}

/// `ceil(n/2)` terms, capped at the `n - 1` available.
pub fn corollary2_radius<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<T> {
    check_row(m, i)?;
    let n = m.n_rows();
    fraction_radius(m, i, n.div_ceil(2).min(n - 1))
}

/// Median-shifted radius of row `i` of a non-negative real matrix.
///
/// With `b` the row and `b_ii` set to zero, `b*` is the element at sorted
/// (non-increasing) position `floor(n/2)` (0-indexed) and the radius is
/// `sum_j |b_ij - b*|` over all `n` columns.
pub fn median_radius<T: Real>(m: &ComplexMatrix<T>, i: usize) -> Result<MedianRadius<T>> {
    check_row(m, i)?;
    let n = m.n_rows();
    let mut b = Vec::with_capacity(n);
    for (j, z) in m.row(i).iter().enumerate() {
        if z.im != T::zero() || z.re < T::zero() {
            return Err(Error::Domain(format!(
                "median radius needs a non-negative real matrix; entry ({i}, {j}) is {z}"
            )));
        }
        b.push(if j == i { T::zero() } else { z.re });
    }
    let mut sorted = b.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let b_star = sorted[n / 2];
    let radius = b.iter().map(|&x| (x - b_star).abs()).sum();
    let literal_radius = b
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &x)| (x - b_star).abs())
        .sum();
    Ok(MedianRadius {
        radius,
        b_star,
        literal_radius,
    })
}

/// Radius of row `i` for the given kind.
pub fn radius<T: Real>(m: &ComplexMatrix<T>, i: usize, kind: RadiusKind) -> Result<T> {
    match kind {
        RadiusKind::Full => full_radius(m, i),
        RadiusKind::Half => half_radius(m, i),
        RadiusKind::Fraction(count) => fraction_radius(m, i, count),
        RadiusKind::Median => median_radius(m, i).map(|r| r.radius),
        RadiusKind::Corollary2 => corollary2_radius(m, i),
        RadiusKind::Third => third_radius(m, i),
    }
}

/// One disk per row.
pub fn disk_set<T: Real>(m: &ComplexMatrix<T>, kind: RadiusKind) -> Result<Vec<Disk<T>>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "row disks need a square matrix, got {}x{}",
            m.n_rows(),
            m.n_cols()
        )));
    }
    (0..m.n_rows())
        .map(|i| {
            Ok(Disk {
                center: m[(i, i)],
                radius: radius(m, i, kind)?,
                kind,
                row: i,
            })
        })
        .collect()
}

/// Classifies `lambda` against one disk with an absolute boundary band.
pub fn classify<T: Real>(lambda: Complex<T>, disk: &Disk<T>, boundary_tol: T) -> Containment {
    let dist = (lambda - disk.center).norm();
    if (dist - disk.radius).abs() <= boundary_tol {
        Containment::OnBoundary
    } else if dist < disk.radius - boundary_tol {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Status of `lambda` against every disk, as `(row, status)` pairs.
pub fn containment<T: Real>(lambda: Complex<T>, disks: &[Disk<T>], boundary_tol: T) -> Vec<(usize, Containment)> {
    disks
        .iter()
        .map(|d| (d.row, classify(lambda, d, boundary_tol)))
        .collect()
}

/// [`containment`] with each disk's default boundary tolerance.
pub fn containment_default<T: Real>(lambda: Complex<T>, disks: &[Disk<T>]) -> Vec<(usize, Containment)> {
    disks
        .iter()
        .map(|d| (d.row, classify(lambda, d, d.default_boundary_tol())))
        .collect()
}
