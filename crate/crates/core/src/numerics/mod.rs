//! Small dense linear algebra used as the certificate engine for the frame
//! analyses: Jacobi eigendecomposition, tolerance-aware rank, orthonormal
//! completion, nonnegative least squares and minimum-norm hull points.
//!
//! Everything here is a pure function of its inputs.

mod eigen;
mod hull;
mod matrix;
mod nnls;
mod span;
mod tolerances;
pub mod vector;

use thiserror::Error;

pub use eigen::{sym_eig, SpectralData};
pub use hull::{min_norm_point, HullPoint};
pub use matrix::Matrix;
pub use nnls::{nnls_cone_feasible, ConeResult};
pub use span::{
    distance_to_span, orthonormal_basis, orthonormal_complement, orthonormality_defect, rank_of,
    span_rank,
};
pub use tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix is not symmetric (max |S_ij - S_ji| = {max_asymmetry:.3e})")]
    NotSymmetric { max_asymmetry: f64 },
    #[error("non-finite entry (NaN or infinity)")]
    NonFinite,
    #[error("rows are not orthonormal (max |G G^T - I| = {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("iteration limit of {iterations} reached")]
    IterationLimit { iterations: usize },
    #[error("empty input")]
    Empty,
    #[error("tolerance {name} = {value} must lie in (0, 1e-2)")]
    BadTolerance { name: &'static str, value: f64 },
    #[error("cone test inconclusive: {detail}")]
    Inconclusive { detail: String },
}

impl NumericsError {
    /// Failures of an iterative method to reach a certified answer, as
    /// opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            NumericsError::IterationLimit { .. } | NumericsError::Inconclusive { .. }
        )
    }
}
