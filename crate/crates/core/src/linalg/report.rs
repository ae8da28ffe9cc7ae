use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{eigenvalues, svd, ComplexMatrix, ComplexVector};
use crate::error::Result;
use crate::scalar::Real;

/// A group of numerically coincident eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct EigenCluster<T> {
    /// Mean of the clustered eigenvalues.
    #[serde(with = "crate::complex_serde")]
    pub value: Complex<T>,
    pub algebraic_count: usize,
    /// `n - rank(m - value I)`, never inferred from `algebraic_count`.
    pub geometric_multiplicity: usize,
    pub eigenspace_basis: Vec<ComplexVector<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct EigenReport<T> {
    pub clusters: Vec<EigenCluster<T>>,
    pub cluster_tol: T,
    pub rank_tol: T,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl<T: Real> EigenReport<T> {
    /// Clusters whose eigenspace has dimension at least two.
    pub fn multiple(&self) -> impl Iterator<Item = &EigenCluster<T>> {
        self.clusters.iter().filter(|c| c.geometric_multiplicity >= 2)
    }

    /// Cluster whose value is closest to `z`.
    pub fn nearest(&self, z: Complex<T>) -> Option<&EigenCluster<T>> {
        self.clusters.iter().min_by(|a, b| {
            (a.value - z)
                .norm()
                .partial_cmp(&(b.value - z).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

/// Default cluster distance `1e-6 * max(1, ||m||_F)` (at `f64`).
pub fn default_cluster_tol<T: Real>(m: &ComplexMatrix<T>) -> T {
    T::default_cluster_factor() * m.scale()
}

/// Groups the spectrum into single-linkage clusters and measures each
/// cluster's geometric multiplicity through a rank test.
pub fn eigen_report<T: Real>(m: &ComplexMatrix<T>, cluster_tol: T, rank_tol: T) -> Result<EigenReport<T>> {
    let values = eigenvalues(m)?;
    let n = values.len();
    let groups = single_linkage(&values, cluster_tol);
    let mut warnings = Vec::new();

    let mut clusters = Vec::with_capacity(groups.len());
    for members in groups {
        let count = members.len();
        let value = members.iter().map(|&k| values[k]).sum::<Complex<T>>() / T::from_usize_lossy(count);
        let decomposition = svd(&m.shifted(value));
        let top = decomposition.singular_values[0];
        let rank = if top == T::zero() {
            0
        } else {
            decomposition
                .singular_values
                .iter()
                .filter(|&&s| s > rank_tol * top)
                .count()
        };
        let mut nullity = n - rank;
        if nullity == 0 {
            warnings.push(format!(
                "cluster at {value} passed no null vector at rank_tol {rank_tol}; kept the smallest singular vector"
            ));
            nullity = 1;
        }
        if nullity > count {
            warnings.push(format!(
                "cluster at {value} has nullity {nullity} above its algebraic count {count}; truncated"
            ));
            nullity = count;
        }
        let basis = decomposition
            .right_vectors
            .into_iter()
            .skip(n - nullity)
            .collect();
        clusters.push(EigenCluster {
            value,
            algebraic_count: count,
            geometric_multiplicity: nullity,
            eigenspace_basis: basis,
        });
    }
    clusters.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));

    if clusters.len() == 1 && n > 1 {
        let spread = m.shifted(clusters[0].value).frobenius_norm();
        if spread > cluster_tol * T::from_usize_lossy(n) {
            warnings.push(format!(
                "all {n} eigenvalues merged into one cluster but ||m - lambda I||_F = {spread}; cluster_tol may be too loose"
            ));
        }
    }

    Ok(EigenReport {
        clusters,
        cluster_tol,
        rank_tol,
        warnings,
    })
}

/// `eigen_report` with the default tolerances.
pub fn eigen_report_with_defaults<T: Real>(m: &ComplexMatrix<T>) -> Result<EigenReport<T>> {
    eigen_report(m, default_cluster_tol(m), T::default_rank_tol())
}

/// Connected components of the graph joining values at distance `<= tol`.
fn single_linkage<T: Real>(values: &[Complex<T>], tol: T) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}
