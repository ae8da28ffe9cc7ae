//! Dense complex linear algebra: matrices, an eigensolver, numerical rank and
//! eigenspace extraction.

mod eigen;
mod matrix;
mod report;
mod svd;

pub use eigen::{eigenvalues, hessenberg, SWEEPS_PER_ROW};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use report::{default_cluster_tol, eigen_report, eigen_report_with_defaults, EigenCluster, EigenReport};
pub use svd::{null_space, numerical_rank, svd, Svd};
