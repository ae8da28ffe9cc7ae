//! Localization of eigenvalues with geometric multiplicity at least two.
//!
//! For such an eigenvalue the eigenspace holds a vector whose components sum
//! to zero. Scaling its largest component to `1` at row `i` turns
//! `(lambda - a_ii) v_i = sum_{j != i} a_ij v_j` into a rearranged sum over a
//! zero-sum family of planar vectors, so the rearrangement bounds confine
//! `lambda` to `D(a_ii, r)` for the half radius and for the median-shifted
//! radius. This module builds that witness and checks every radius kind.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::disks::{self, Containment, Disk, RadiusKind};
use crate::error::{Error, Result};
use crate::linalg::{default_cluster_tol, eigen_report, null_space, ComplexMatrix, ComplexVector, EigenReport};
use crate::scalar::Real;

/// Knobs for [`localize`]. Tolerances marked relative are multiplied by
/// `max(1, ||m||_F)` or, for containment, by `max(1, |c| + r)` per disk.
#[derive(Debug, Clone)]
pub struct LocalizeOptions<T> {
    pub matrix_id: String,
    /// Absolute cluster distance; `None` uses the default `1e-6 max(1, ||m||_F)`.
    pub cluster_tol: Option<T>,
    pub rank_tol: T,
    /// Relative boundary band for containment.
    pub boundary_tol: T,
    /// Relative bound on the witness residuals.
    pub residual_tol: T,
    /// Eigenvalues known in closed form; a cluster within `cluster_tol` of
    /// one of them is evaluated at the exact value.
    pub exact_values: Vec<Complex<T>>,
}

impl<T: Real> Default for LocalizeOptions<T> {
    fn default() -> Self {
        Self {
            matrix_id: "matrix".to_string(),
            cluster_tol: None,
            rank_tol: T::default_rank_tol(),
            boundary_tol: T::lit(1e-7),
            residual_tol: T::lit(1e-7),
            exact_values: Vec::new(),
        }
    }
}

impl<T: Real> LocalizeOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        Self {
            boundary_tol: tol,
            residual_tol: tol,
            ..Self::default()
        }
    }
}

/// Zero-sum eigenvector used to localize one eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Witness<T> {
    /// Components sum to zero; the largest one is exactly `1`.
    pub vector: ComplexVector<T>,
    /// Index of that largest component.
    pub row: usize,
    /// `|(lambda - a_ii) v_i - sum_{j != i} a_ij v_j|` at the witness row.
    pub row_residual: T,
    /// `||(m - lambda I) v||_2`.
    pub eigen_residual: T,
    /// `|sum_j v_j|`.
    pub component_sum: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowStatus {
    pub row: usize,
    pub status: Containment,
}

/// Containment of one eigenvalue against the disks of one kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct KindContainment<T> {
    pub kind: RadiusKind,
    pub disks: Vec<Disk<T>>,
    pub rows: Vec<RowStatus>,
    /// Some row is Inside or OnBoundary.
    pub covered: bool,
    /// The witness row is Inside or OnBoundary.
    pub covered_at_witness: bool,
}

/// Radii at the witness row, for comparing the median-shifted and half bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct WitnessRadii<T> {
    pub half: T,
    pub median: T,
    pub median_literal: T,
    pub b_star: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct MultipleEigenvalue<T> {
    /// Value used for containment (exact when one was supplied).
    #[serde(with = "crate::complex_serde")]
    pub value: Complex<T>,
    #[serde(with = "crate::complex_serde")]
    pub computed_value: Complex<T>,
    pub algebraic_count: usize,
    pub geometric_multiplicity: usize,
    pub witness: Witness<T>,
    /// Present for non-negative real matrices only.
    pub witness_radii: Option<WitnessRadii<T>>,
    pub kinds: Vec<KindContainment<T>>,
}

impl<T: Real> MultipleEigenvalue<T> {
    pub fn kind(&self, kind: RadiusKind) -> Option<&KindContainment<T>> {
        self.kinds.iter().find(|k| k.kind == kind)
    }
}

/// A theorem obligation that failed: a multiple eigenvalue of a non-negative
/// matrix outside every disk of a kind that is guaranteed to cover it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Violation<T> {
    #[serde(with = "crate::complex_serde")]
    pub value: Complex<T>,
    pub kind: RadiusKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct LocalizationReport<T> {
    pub matrix_id: String,
    /// Whether the matrix is real and entrywise non-negative.
    pub nonnegative: bool,
    pub eigen: EigenReport<T>,
    pub multiple: Vec<MultipleEigenvalue<T>>,
    /// Clusters with `algebraic_count >= 2` but a one-dimensional eigenspace.
    #[serde(with = "crate::complex_serde::vec")]
    pub defective: Vec<Complex<T>>,
    pub violations: Vec<Violation<T>>,
    /// Multiple eigenvalues outside every half disk.
    #[serde(with = "crate::complex_serde::vec")]
    pub outside_all_half: Vec<Complex<T>>,
    /// Multiple eigenvalues outside every third disk (not a theorem obligation).
    #[serde(with = "crate::complex_serde::vec")]
    pub outside_all_third: Vec<Complex<T>>,
}

impl<T: Real> LocalizationReport<T> {
    /// No guaranteed containment failed.
    pub fn theorem_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Radius kinds guaranteed to cover a multiple eigenvalue of a non-negative matrix.
pub const GUARANTEED_KINDS: [RadiusKind; 3] = [RadiusKind::Half, RadiusKind::Median, RadiusKind::Corollary2];

/// Builds a zero-sum vector in the span of the first two basis vectors,
/// scaled so that its first largest-magnitude component equals `1`.
pub fn zero_sum_from_basis<T: Real>(basis: &[ComplexVector<T>]) -> Result<ComplexVector<T>> {
    let [u, w, ..] = basis else {
        return Err(Error::Precondition(format!(
            "need an eigenspace of dimension at least 2, got {}",
            basis.len()
        )));
    };
    let su = u.sum();
    let sw = w.sum();
    let eps = T::epsilon() * T::from_usize_lossy(u.dim());
    let v = if su.norm() <= eps * u.norm() {
        u.clone()
    } else {
        let combined: Vec<Complex<T>> = u
            .entries()
            .iter()
            .zip(w.entries())
            .map(|(a, b)| a * sw - b * su)
            .collect();
        ComplexVector::from(combined)
    };
    let scale = u.norm().max(w.norm()) * (su.norm() + sw.norm()).max(T::one());
    if v.norm() <= eps * scale {
        return Err(Error::DegenerateBasis(
            "the zero-sum combination of the basis vectors vanished".into(),
        ));
    }
    Ok(normalize_to_unit_max(v))
}

fn normalize_to_unit_max<T: Real>(v: ComplexVector<T>) -> ComplexVector<T> {
    let top = v.max_abs();
    let cut = top * (T::one() - T::lit(8.0) * T::epsilon());
    let i = v
        .entries()
        .iter()
        .position(|z| z.norm() >= cut)
        .expect("non-zero vector has a largest component");
    let mut entries = v.scaled(v[i].inv()).into_entries();
    entries[i] = Complex::new(T::one(), T::zero());
    ComplexVector::from(entries)
}

/// Eigenvector of `m` for `lambda` whose components sum to zero, with its
/// largest component normalized to `1`. Both residuals are checked against
/// the absolute `tol` (times `||v||_2` for the eigen residual).
pub fn zero_sum_eigenvector<T: Real>(m: &ComplexMatrix<T>, lambda: Complex<T>, tol: T) -> Result<ComplexVector<T>> {
    if !m.is_square() {
        return Err(Error::Dimension("eigenvectors need a square matrix".into()));
    }
    let basis = null_space(&m.shifted(lambda), T::default_rank_tol())?;
    if basis.len() < 2 {
        return Err(Error::Precondition(format!(
            "eigenvalue {lambda} has geometric multiplicity {} < 2",
            basis.len()
        )));
    }
    let v = zero_sum_from_basis(&basis)?;
    let residual = m.shifted(lambda).mul_vec(&v)?.norm();
    if residual > tol * v.norm() {
        return Err(Error::Precondition(format!(
            "eigen residual {residual:e} exceeds {tol:e}; lambda is not accurate enough"
        )));
    }
    let sum = v.sum().norm();
    if sum > tol {
        return Err(Error::DegenerateBasis(format!("component sum {sum:e} exceeds {tol:e}")));
    }
    Ok(v)
}

fn witness_for<T: Real>(m: &ComplexMatrix<T>, lambda: Complex<T>, basis: &[ComplexVector<T>]) -> Result<Witness<T>> {
    let vector = zero_sum_from_basis(basis)?;
    let row = vector
        .entries()
        .iter()
        .position(|z| *z == Complex::new(T::one(), T::zero()))
        .expect("normalized witness has a unit component");
    let a = m.row(row);
    let rhs: Complex<T> = a
        .iter()
        .zip(vector.entries())
        .enumerate()
        .filter(|&(j, _)| j != row)
        .map(|(_, (x, y))| x * y)
        .sum();
    let row_residual = ((lambda - a[row]) * vector[row] - rhs).norm();
    let eigen_residual = m.shifted(lambda).mul_vec(&vector)?.norm();
    let component_sum = vector.sum().norm();
    Ok(Witness {
        vector,
        row,
        row_residual,
        eigen_residual,
        component_sum,
    })
}

fn evaluate_kind<T: Real>(
    m: &ComplexMatrix<T>,
    lambda: Complex<T>,
    kind: RadiusKind,
    witness_row: usize,
    boundary_tol: T,
) -> Result<KindContainment<T>> {
    let disks = disks::disk_set(m, kind)?;
    let rows: Vec<RowStatus> = disks
        .iter()
        .map(|d| {
            let band = boundary_tol * (d.center.norm() + d.radius).max(T::one());
            RowStatus {
                row: d.row,
                status: disks::classify(lambda, d, band),
            }
        })
        .collect();
    let covered = rows.iter().any(|r| r.status.is_covered());
    let covered_at_witness = rows[witness_row].status.is_covered();
    Ok(KindContainment {
        kind,
        disks,
        rows,
        covered,
        covered_at_witness,
    })
}

/// Kinds evaluated for every multiple eigenvalue.
pub fn evaluated_kinds(n: usize, nonnegative: bool) -> Vec<RadiusKind> {
    let mut kinds = vec![RadiusKind::Full, RadiusKind::Half];
    if nonnegative {
        kinds.push(RadiusKind::Median);
    }
    kinds.extend([RadiusKind::Corollary2, RadiusKind::Third, RadiusKind::Fraction(n / 4)]);
    kinds
}

/// Evaluates every multiple eigenvalue of `m` against every radius kind.
/// Nothing is asserted; guaranteed containments that fail on a
/// non-negative matrix are collected in `violations`.
pub fn localize<T: Real>(m: &ComplexMatrix<T>, opts: &LocalizeOptions<T>) -> Result<LocalizationReport<T>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "localization needs a square matrix, got {}x{}",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let n = m.n_rows();
    let nonnegative = m.is_nonneg_real();
    let cluster_tol = opts.cluster_tol.unwrap_or_else(|| default_cluster_tol(m));
    let eigen = eigen_report(m, cluster_tol, opts.rank_tol)?;
    let kinds = evaluated_kinds(n, nonnegative);

    let mut multiple = Vec::new();
    let mut defective = Vec::new();
    let mut violations = Vec::new();
    let mut outside_all_half = Vec::new();
    let mut outside_all_third = Vec::new();

    for cluster in &eigen.clusters {
        if cluster.geometric_multiplicity < 2 {
            if cluster.algebraic_count >= 2 {
                defective.push(cluster.value);
            }
            continue;
        }
        let value = opts
            .exact_values
            .iter()
            .copied()
            .filter(|z| (z - cluster.value).norm() <= cluster_tol)
            .min_by(|a, b| (a - cluster.value).norm().total_cmp(&(b - cluster.value).norm()))
            .unwrap_or(cluster.value);
        let witness = witness_for(m, value, &cluster.eigenspace_basis)?;
        let kinds: Vec<KindContainment<T>> = kinds
            .iter()
            .map(|&k| evaluate_kind(m, value, k, witness.row, opts.boundary_tol))
            .collect::<Result<_>>()?;

        let witness_radii = if nonnegative {
            let median = disks::median_radius(m, witness.row)?;
            Some(WitnessRadii {
                half: disks::half_radius(m, witness.row)?,
                median: median.radius,
                median_literal: median.literal_radius,
                b_star: median.b_star,
            })
        } else {
            None
        };

        for k in &kinds {
            if nonnegative && GUARANTEED_KINDS.contains(&k.kind) && !k.covered {
                violations.push(Violation { value, kind: k.kind });
            }
            if !k.covered {
                match k.kind {
                    RadiusKind::Half => outside_all_half.push(value),
                    RadiusKind::Third => outside_all_third.push(value),
                    _ => {}
                }
            }
        }

        multiple.push(MultipleEigenvalue {
            value,
            computed_value: cluster.value,
            algebraic_count: cluster.algebraic_count,
            geometric_multiplicity: cluster.geometric_multiplicity,
            witness,
            witness_radii,
            kinds,
        });
    }

    Ok(LocalizationReport {
        matrix_id: opts.matrix_id.clone(),
        nonnegative,
        eigen,
        multiple,
        defective,
        violations,
        outside_all_half,
        outside_all_third,
    })
}

/// Checks the half-disk guarantee on a non-negative real matrix.
///
/// Errors on negative or complex entries; returns a report with no
/// multiple eigenvalues when there are none.
pub fn verify_half_disk_theorem<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<LocalizationReport<T>> {
    verify_with(m, &LocalizeOptions::with_tol(tol))
}

pub fn verify_with<T: Real>(m: &ComplexMatrix<T>, opts: &LocalizeOptions<T>) -> Result<LocalizationReport<T>> {
    if let Some((i, j)) = m.first_non_nonneg() {
        return Err(Error::Domain(format!(
            "the half-disk guarantee needs a non-negative real matrix; entry ({i}, {j}) is {}",
            m[(i, j)]
        )));
    }
    localize(m, opts)
}

/// Same evaluation for matrices outside the non-negative class; multiple
/// eigenvalues outside every half disk land in `outside_all_half`.
pub fn counterexample_check<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<LocalizationReport<T>> {
    localize(m, &LocalizeOptions::with_tol(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn basis_that_already_sums_to_zero_is_kept() {
        let u = ComplexVector::from(vec![c(0.5), c(-0.5), c(0.0)]);
        let w = ComplexVector::from(vec![c(0.0), c(0.0), c(1.0)]);
        let v = zero_sum_from_basis(&[u, w]).unwrap();
        assert_eq!(v.entries(), &[c(1.0), c(-1.0), c(0.0)]);
    }

    #[test]
    fn combination_branch() {
        let u = ComplexVector::from(vec![c(1.0), c(0.0), c(0.0)]);
        let w = ComplexVector::from(vec![c(0.0), c(1.0), c(1.0)]);
        // (sum w) u - (sum u) w = (2, -1, -1)
        let v = zero_sum_from_basis(&[u, w]).unwrap();
        assert_eq!(v.entries(), &[c(1.0), c(-0.5), c(-0.5)]);
        assert!(matches!(
            zero_sum_from_basis(&[ComplexVector::from(vec![c(1.0)])]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let u = ComplexVector::from(vec![c(0.0), c(-2.0), c(2.0)]);
        let w = ComplexVector::from(vec![c(1.0), c(0.0), c(0.0)]);
        let v = zero_sum_from_basis(&[u, w]).unwrap();
        assert_eq!(v.entries(), &[c(0.0), c(1.0), c(-1.0)]);
    }

    #[test]
    fn two_identical_blocks() {
        let m = ComplexMatrix::from_real_rows(&[
            vec![1.0, 2.0, 0.0, 0.0],
            vec![3.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 2.0],
            vec![0.0, 0.0, 3.0, 1.0],
        ])
        .unwrap();
        let lambda = c(1.0 + 6.0f64.sqrt());
        let v = zero_sum_eigenvector(&m, lambda, 1e-10).unwrap();
        assert!(v.sum().norm() <= 1e-10);
        assert_eq!(v.max_abs(), 1.0);
        assert!(v.entries().contains(&c(1.0)));
    }

    #[test]
    fn simple_eigenvalue_is_rejected() {
        let m = generators::matrix_a3::<f64>();
        assert!(matches!(zero_sum_eigenvector(&m, c(2.0), 1e-9), Err(Error::Precondition(_))));
        let v = zero_sum_eigenvector(&m, c(-1.0), 1e-9).unwrap();
        assert!(v.sum().norm() < 1e-12);
    }

    #[test]
    fn verify_rejects_negative_entries() {
        let b = generators::matrix_b5::<f64>();
        assert!(matches!(verify_half_disk_theorem(&b, 1e-7), Err(Error::Domain(_))));
        assert!(counterexample_check(&b, 1e-7).is_ok());
    }

    #[test]
    fn no_multiple_eigenvalue_gives_empty_report() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let r = verify_half_disk_theorem(&m, 1e-7).unwrap();
        assert!(r.multiple.is_empty() && r.theorem_holds());
    }

    #[test]
    fn defective_clusters_are_excluded() {
        let m = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let r = verify_half_disk_theorem(&m, 1e-7).unwrap();
        assert!(r.multiple.is_empty());
        assert_eq!(r.defective.len(), 1);
    }
}
