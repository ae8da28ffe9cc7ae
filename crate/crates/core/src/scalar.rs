//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::float::TotalOrder;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar (`f32` or `f64`) together with the default
/// tolerances the numerical routines use at that precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + TotalOrder
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Relative threshold below which a Hessenberg subdiagonal entry is zeroed.
    fn deflation_tol() -> Self;
    /// Default relative threshold for numerical rank.
    fn default_rank_tol() -> Self;
    /// Default cluster distance, relative to `max(1, ||m||_F)`.
    fn default_cluster_factor() -> Self;
    /// Relative slack admitted on `sum(v_i) = 0`.
    fn zero_sum_tol() -> Self;
    /// Default boundary tolerance for containment, relative to `max(1, |c| + r)`.
    fn default_boundary_factor() -> Self;

    /// Converts an `f64` literal. Panics only if the literal is not representable,
    /// which never happens for the finite constants used in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize fits in a float")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn deflation_tol() -> Self {
        1e-14
    }
    fn default_rank_tol() -> Self {
        1e-9
    }
    fn default_cluster_factor() -> Self {
        1e-6
    }
    fn zero_sum_tol() -> Self {
        1e-12
    }
    fn default_boundary_factor() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn deflation_tol() -> Self {
        1e-6
    }
    fn default_rank_tol() -> Self {
        1e-4
    }
    fn default_cluster_factor() -> Self {
        1e-3
    }
    fn zero_sum_tol() -> Self {
        1e-5
    }
    fn default_boundary_factor() -> Self {
        1e-4
    }
}
