//! Per-vector classification (isolated, deficient, isolable), replacement of
//! isolable vectors by strictly better ones, the core iteration, and
//! diagnostics derived from it.
//!
//! A vector `x` with packing neighbors `y` (those at `|<x, y>| = alpha`,
//! `alpha` the coherence) is isolable exactly when some unit `w` orthogonal
//! to `x` satisfies `<w, s_y y> <= 0` for every neighbor, `s_y` the sign of
//! `<x, y>`. Equivalently the projections `u_y = s_y (y - <x, y> x)` fail to
//! positively span the hyperplane `x^perp`. Classification decides this
//! with a minimum-norm-point test followed by a cone-membership test, and
//! every isolable verdict is then confirmed by actually building the
//! perturbed vector.

mod classify;
mod iteration;
mod perturb;
mod theorems;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::FrameError;
use crate::numerics::NumericsError;

pub use classify::{classify_vector, VectorStatus, VectorVerdict, DecisionStage};
pub use iteration::{
    core, isolable_set, replace_all_isolable, validate_core, CoreLevel, CoreTrace, CoreValidation,
    IsolableSet, Replacement, SpanCheck,
};
pub use perturb::{perturb_replace, perturbation_margin, MAX_HALVINGS};
pub use theorems::{
    classify_n_plus_2, eigen_span_diagnostic, tight_grassmannian_diagnostic, DichotomyReport,
    DichotomyVerdict, EigenSpanReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("index {index} out of range for {len} vectors")]
    Index { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no step size in {halvings} halvings made vector {index} strictly better")]
    SearchFailed { index: usize, halvings: usize },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl CoreError {
    /// Failures caused by floating-point limits rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            CoreError::SearchFailed { .. } => true,
            CoreError::Numerics(e) => e.is_numerical(),
            CoreError::Frame(FrameError::Numerics(e)) => e.is_numerical(),
            CoreError::Frame(FrameError::InconsistentVerdict { .. }) => true,
            _ => false,
        }
    }
}

/// Conditions worth surfacing alongside a result that do not invalidate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoreWarning {
    /// An inner product sits just outside the neighbor tolerance, so the
    /// verdict may flip under a slightly looser tolerance.
    NearTie { index: usize, others: Vec<usize> },
    /// The core iteration removed every vector. A Grassmannian frame always
    /// keeps at least `n + 1`, so the input is not one.
    NotGrassmannianEvidence { detail: String },
    /// The coherence of a level differs from that of the input.
    CoherenceShift { level: usize, coherence: f64, original: f64 },
    /// Vectors whose classification was inconclusive and were kept.
    IndeterminateRetained { level: usize, indices: Vec<usize> },
    /// An isolable verdict could not be confirmed by construction.
    Unconfirmed { index: usize, detail: String },
}

impl fmt::Display for CoreWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreWarning::NearTie { index, others } => write!(
                f,
                "vector {index}: inner products with {others:?} are within twice the neighbor tolerance of the coherence"
            ),
            CoreWarning::NotGrassmannianEvidence { detail } => {
                write!(f, "evidence input is not Grassmannian: {detail}")
            }
            CoreWarning::CoherenceShift {
                level,
                coherence,
                original,
            } => write!(f, "level {level} has coherence {coherence} (input: {original})"),
            CoreWarning::IndeterminateRetained { level, indices } => write!(
                f,
                "level {level}: indeterminate vectors {indices:?} treated as not isolable"
            ),
            CoreWarning::Unconfirmed { index, detail } => {
                write!(f, "vector {index}: isolable verdict not confirmed ({detail})")
            }
        }
    }
}
