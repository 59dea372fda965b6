use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::frames::{frame_operator, gram, spectrum, UnitVectorSystem};
use crate::numerics::vector::{dot, norm, scale};
use crate::numerics::{orthonormal_complement, Matrix, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightCompletion {
    /// The largest eigenvalue of the frame operator, the new tight bound.
    pub lambda: f64,
    /// Multiplicity `k` of `lambda`.
    pub multiplicity: usize,
    /// `sqrt(lambda - lambda_j) e_j` for each eigenvalue below `lambda`;
    /// not unit norm in general.
    pub added: Vec<Vec<f64>>,
}

/// Adds `n - k` vectors so that the frame operator becomes `lambda I`.
pub fn tight_completion(x: &UnitVectorSystem, tol: &Tolerances) -> Result<TightCompletion, ConstructionError> {
    let spec = spectrum(x, tol)?;
    let lambda = spec.largest();
    let added: Vec<Vec<f64>> = spec
        .eigenvalues
        .iter()
        .zip(&spec.eigenvectors)
        .filter(|(l, _)| **l < lambda - tol.eq_abs)
        .map(|(l, e)| scale(e, (lambda - l).sqrt()))
        .collect();
    let multiplicity = x.dim() - added.len();

    let mut s = frame_operator(x);
    if !added.is_empty() {
        let z = Matrix::from_rows(&added)?.col_gram();
        s = Matrix::from_row_major(
            s.rows(),
            s.cols(),
            s.as_slice().iter().zip(z.as_slice()).map(|(a, b)| a + b).collect(),
        )?;
    }
    let dev = s.max_abs_diff(&Matrix::identity(x.dim()).scaled(lambda)).expect("square");
    if dev > tol.certify_abs * lambda {
        return Err(ConstructionError::VerificationFailed(format!(
            "completed frame operator is {dev:.3e} from lambda I"
        )));
    }
    Ok(TightCompletion {
        lambda,
        multiplicity,
        added,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaimarkComplement {
    /// `m` unit vectors in `R^{m-k}`.
    pub system: UnitVectorSystem,
    pub lambda: f64,
    pub multiplicity: usize,
    /// `max_i | |y_i| - 1 |`.
    pub norm_error: f64,
    /// `max_{i != j} | <y_i, y_j> (1 - lambda) - <x_i, x_j> |`.
    pub gram_error: f64,
    /// `| coh(Y) - coh(X) / (lambda - 1) |`.
    pub coherence_error: f64,
}

/// Complementary system with `<y_i, y_j> = <x_i, x_j> / (1 - lambda)` for
/// `i != j`.
///
/// The tightly completed system is scaled to a Parseval frame; its `n`
/// orthonormal synthesis rows are completed to an orthonormal basis of
/// `R^{m+n-k}`, and the first `m` columns of the complementary block, scaled
/// by `1 / sqrt(1 - 1/lambda)`, are the `y_i`. They are unique only up to a
/// common orthogonal map, so the checks are on Gram data.
pub fn naimark_complement(x: &UnitVectorSystem, tol: &Tolerances) -> Result<NaimarkComplement, ConstructionError> {
    let completion = tight_completion(x, tol)?;
    let lambda = completion.lambda;
    if lambda <= 1.0 + tol.eq_abs {
        return Err(ConstructionError::NotScalable { lambda });
    }
    let m = x.len();
    let k = completion.multiplicity;
    if m <= k {
        return Err(ConstructionError::DegenerateComplement { m, k });
    }

    let n = x.dim();
    let total = m + n - k;
    let columns: Vec<Vec<f64>> = x
        .vectors()
        .iter()
        .chain(&completion.added)
        .map(|v| scale(v, 1.0 / lambda.sqrt()))
        .collect();
    let synthesis = Matrix::from_columns(&columns)?;
    let comp = orthonormal_complement(&synthesis, tol)?;
    debug_assert_eq!((comp.rows(), comp.cols()), (m - k, total));

    let c = 1.0 / (1.0 - 1.0 / lambda).sqrt();
    let ys: Vec<Vec<f64>> = (0..m).map(|i| scale(&comp.column(i), c)).collect();

    let norm_error = ys.iter().map(|y| (norm(y) - 1.0).abs()).fold(0.0, f64::max);
    let mut gram_error: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let lhs = dot(&ys[i], &ys[j]) * (1.0 - lambda);
                gram_error = gram_error.max((lhs - dot(x.vector(i), x.vector(j))).abs());
            }
        }
    }
    if norm_error > tol.certify_abs || gram_error > tol.certify_abs {
        return Err(ConstructionError::VerificationFailed(format!(
            "complement norm error {norm_error:.3e}, Gram error {gram_error:.3e}"
        )));
    }
    let system = UnitVectorSystem::new(m - k, ys, tol)?;
    let coherence_error = (gram(&system).coherence - gram(x).coherence / (lambda - 1.0)).abs();
    if coherence_error > tol.certify_abs {
        return Err(ConstructionError::VerificationFailed(format!(
            "complement coherence off by {coherence_error:.3e}"
        )));
    }
    Ok(NaimarkComplement {
        system,
        lambda,
        multiplicity: k,
        norm_error,
        gram_error,
        coherence_error,
    })
}
