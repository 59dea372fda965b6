use super::ConstructionError;
use crate::frames::{gram, tightness, UnitVectorSystem};
use crate::numerics::vector::dot;
use crate::numerics::Tolerances;

/// `x_i^+ = (x_i, x_i) / sqrt2` for all `i`, followed by
/// `x_i^- = (x_i, -x_i) / sqrt2`.
///
/// The two halves are mutually orthogonal, each reproduces the Gram matrix
/// of `x`, and the frame operator becomes `diag(S, S)`; so tightness (with
/// the same bound) and coherence carry over. These identities are checked
/// on the result.
pub fn double(x: &UnitVectorSystem, tol: &Tolerances) -> Result<UnitVectorSystem, ConstructionError> {
    let m = x.len();
    let h = 0.5f64.sqrt();
    let mut vectors = Vec::with_capacity(2 * m);
    for sign in [1.0, -1.0] {
        for v in x.vectors() {
            let mut d: Vec<f64> = v.iter().map(|c| h * c).collect();
            d.extend(v.iter().map(|c| sign * h * c));
            vectors.push(d);
        }
    }
    let mut out = UnitVectorSystem::new(2 * x.dim(), vectors, tol)?;
    if let Some(labels) = x.labels() {
        let mut l: Vec<String> = labels.iter().map(|s| format!("{s}+")).collect();
        l.extend(labels.iter().map(|s| format!("{s}-")));
        out = out.with_labels(l)?;
    }

    let eps = tol.certify_abs;
    for i in 0..m {
        for j in 0..m {
            let cross = dot(out.vector(i), out.vector(m + j)).abs();
            let orig = dot(x.vector(i), x.vector(j));
            let plus = dot(out.vector(i), out.vector(j));
            let minus = dot(out.vector(m + i), out.vector(m + j));
            if cross > eps || (plus - orig).abs() > eps || (minus - orig).abs() > eps {
                return Err(ConstructionError::VerificationFailed(format!(
                    "doubling identities fail at ({i}, {j})"
                )));
            }
        }
    }
    let (before, after) = (tightness(x, tol), tightness(&out, tol));
    if before != after {
        return Err(ConstructionError::VerificationFailed(format!(
            "tightness changed from {before:?} to {after:?}"
        )));
    }
    if m >= 2 && (gram(x).coherence - gram(&out).coherence).abs() > eps {
        return Err(ConstructionError::VerificationFailed("coherence changed".into()));
    }
    Ok(out)
}
