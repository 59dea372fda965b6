//! Standard frames, tight completion and Naimark complements, the doubling
//! construction, and closed-form packing angles.

mod angles;
mod catalog;
mod doubling;
mod naimark;

use thiserror::Error;

use crate::frames::FrameError;
use crate::numerics::NumericsError;

pub use angles::{angle_catalog, catalog_consistency, AngleCatalogEntry, AngleKind, Comparison, ConsistencyReport};
pub use catalog::{circular_frame, mub_r2, simplex_etf, six_in_r4};
pub use doubling::double;
pub use naimark::{naimark_complement, tight_completion, NaimarkComplement, TightCompletion};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("{name} must be at least {min}, got {value}")]
    InvalidParameter {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("largest frame-operator eigenvalue {lambda} is not above 1; the complement is empty")]
    NotScalable { lambda: f64 },
    #[error("complement is empty: m = {m} equals the top multiplicity {k}")]
    DegenerateComplement { m: usize, k: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl ConstructionError {
    pub fn is_numerical(&self) -> bool {
        match self {
            ConstructionError::VerificationFailed(_) => true,
            ConstructionError::Numerics(e) | ConstructionError::Frame(FrameError::Numerics(e)) => e.is_numerical(),
            _ => false,
        }
    }
}
