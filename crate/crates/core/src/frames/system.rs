use serde::{Deserialize, Serialize};

use super::FrameError;
use crate::numerics::vector::{norm, scale};
use crate::numerics::{Matrix, Tolerances};

/// Rows farther than this from unit norm are rejected rather than renormalized.
pub const RENORMALIZE_LIMIT: f64 = 1e-6;

/// `m` unit vectors in `R^n`, with optional per-vector labels.
///
/// Construction validates the norms: a vector within `eq_abs` of unit
/// length is kept as given, one within [`RENORMALIZE_LIMIT`] is rescaled and
/// a warning is recorded, anything farther is an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitVectorSystem {
    dim: usize,
    vectors: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
    #[serde(skip)]
    warnings: Vec<String>,
}

impl UnitVectorSystem {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>, tol: &Tolerances) -> Result<Self, FrameError> {
        if dim == 0 {
            return Err(FrameError::ZeroDimension);
        }
        if vectors.is_empty() {
            return Err(FrameError::Empty);
        }
        let mut warnings = Vec::new();
        let mut out = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if v.len() != dim {
                return Err(FrameError::Shape {
                    index: i,
                    expected: dim,
                    found: v.len(),
                });
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(FrameError::NonFinite { index: i });
            }
            let len = norm(&v);
            let dev = (len - 1.0).abs();
            if dev <= tol.eq_abs {
                out.push(v);
            } else if dev <= RENORMALIZE_LIMIT {
                warnings.push(format!(
                    "vector {i} renormalized (norm was {len:.12})"
                ));
                out.push(scale(&v, 1.0 / len));
            } else {
                return Err(FrameError::Norm { index: i, norm: len });
            }
        }
        Ok(Self {
            dim,
            vectors: out,
            labels: None,
            warnings,
        })
    }

    /// Builds a system from vectors already known to be unit length up to
    /// rounding, normalizing each one exactly.
    pub(crate) fn from_unnormalized(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self, FrameError> {
        let normalized = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                crate::numerics::vector::normalized(v).ok_or(FrameError::Norm { index: i, norm: 0.0 })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, normalized, &Tolerances::default())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, FrameError> {
        if labels.len() != self.vectors.len() {
            return Err(FrameError::LabelCount {
                vectors: self.vectors.len(),
                labels: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `m x n` matrix with the vectors as rows (the transpose of the
    /// synthesis operator).
    pub fn as_rows(&self) -> Matrix {
        Matrix::from_rows(&self.vectors).expect("validated system")
    }

    /// Sub-system of the listed indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self, FrameError> {
        if indices.is_empty() {
            return Err(FrameError::Empty);
        }
        let mut vectors = Vec::with_capacity(indices.len());
        for &i in indices {
            vectors.push(self.vectors.get(i).ok_or(FrameError::Index { index: i, len: self.len() })?.clone());
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&i| l[i].clone()).collect());
        Ok(Self {
            dim: self.dim,
            vectors,
            labels,
            warnings: Vec::new(),
        })
    }

    /// Copy with vector `i` replaced by `v` (which must be unit length).
    pub fn replace(&self, i: usize, v: Vec<f64>, tol: &Tolerances) -> Result<Self, FrameError> {
        if i >= self.len() {
            return Err(FrameError::Index { index: i, len: self.len() });
        }
        let mut vectors = self.vectors.clone();
        vectors[i] = v;
        let mut out = Self::new(self.dim, vectors, tol)?;
        out.labels = self.labels.clone();
        Ok(out)
    }
}
