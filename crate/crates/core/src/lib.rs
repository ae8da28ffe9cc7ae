//! Shrunken Gershgorin disks for eigenvalues of geometric multiplicity at
//! least two in non-negative matrices, together with the vector
//! rearrangement bounds behind them and brute-force oracles that check
//! those bounds on small instances.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below name the double-precision instantiations that the
//! CLI and the acceptance suite use.

mod complex_serde;
pub mod disks;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod localization;
pub mod rearrangement;
pub mod scalar;

pub use num_complex::Complex;

pub use error::{Error, Result};
pub use scalar::Real;

pub type C64 = Complex<f64>;
pub type Matrix64 = linalg::ComplexMatrix<f64>;
pub type Matrix32 = linalg::ComplexMatrix<f32>;
pub type Vector64 = linalg::ComplexVector<f64>;
pub type EigenReport64 = linalg::EigenReport<f64>;
pub type VectorConfig64 = rearrangement::VectorConfig<f64>;
pub type CoeffSeq64 = rearrangement::CoeffSeq<f64>;
pub type Disk64 = disks::Disk<f64>;
pub type LocalizationReport64 = localization::LocalizationReport<f64>;
