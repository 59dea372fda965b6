use serde::{Deserialize, Serialize};

use super::{FrameError, UnitVectorSystem};
use crate::numerics::vector::{dot, max_abs_diff, norm};
use crate::numerics::{rank_of, sym_eig, Matrix, SpectralData, Tolerances};

/// `S = sum_i x_i x_i^T`
pub fn frame_operator(x: &UnitVectorSystem) -> Matrix {
    x.as_rows().col_gram()
}

/// Eigen-decomposition of the frame operator.
pub fn spectrum(x: &UnitVectorSystem, tol: &Tolerances) -> Result<SpectralData, FrameError> {
    Ok(sym_eig(&frame_operator(x), tol)?)
}

/// Whether the vectors left after dropping `omit` span `R^n`.
pub fn spans(x: &UnitVectorSystem, omit: &[usize], tol: &Tolerances) -> Result<bool, FrameError> {
    for &j in omit {
        if j >= x.len() {
            return Err(FrameError::Index { index: j, len: x.len() });
        }
    }
    let keep: Vec<usize> = (0..x.len()).filter(|i| !omit.contains(i)).collect();
    if keep.is_empty() {
        return Err(FrameError::Empty);
    }
    let rows = x.as_rows().select_rows(&keep);
    Ok(rank_of(&rows, tol)? == x.dim())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound")]
pub enum TightnessVerdict {
    NotTight,
    Tight(f64),
    Parseval,
}

impl TightnessVerdict {
    pub fn is_tight(&self) -> bool {
        !matches!(self, TightnessVerdict::NotTight)
    }

    pub fn bound(&self) -> Option<f64> {
        match self {
            TightnessVerdict::NotTight => None,
            TightnessVerdict::Tight(a) => Some(*a),
            TightnessVerdict::Parseval => Some(1.0),
        }
    }
}

/// Tight iff `max |S - (m/n) I| <= eq_abs`.
pub fn tightness(x: &UnitVectorSystem, tol: &Tolerances) -> TightnessVerdict {
    let a = x.len() as f64 / x.dim() as f64;
    let s = frame_operator(x);
    let dev = s
        .max_abs_diff(&Matrix::identity(x.dim()).scaled(a))
        .expect("square");
    if dev > tol.eq_abs {
        TightnessVerdict::NotTight
    } else if (a - 1.0).abs() <= tol.eq_abs {
        TightnessVerdict::Parseval
    } else {
        TightnessVerdict::Tight(a)
    }
}

/// Reconstructs `target` from its frame coefficients,
/// `sum_i <target, x_i> S^{-1} x_i`.
///
/// For tight frames the `(1/A) sum_i <target, x_i> x_i` route is computed as
/// well and the two must agree within `route_abs`.
pub fn reconstruct(x: &UnitVectorSystem, target: &[f64], tol: &Tolerances) -> Result<Vec<f64>, FrameError> {
    let n = x.dim();
    if target.len() != n {
        return Err(FrameError::Shape {
            index: 0,
            expected: n,
            found: target.len(),
        });
    }
    if !spans(x, &[], tol)? {
        return Err(FrameError::NotAFrame);
    }
    let spec = spectrum(x, tol)?;
    // S^{-1} = V diag(1/lambda) V^T
    let apply_inverse = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (lambda, e) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
            let c = dot(e, v) / lambda;
            out.iter_mut().zip(e).for_each(|(o, ei)| *o += c * ei);
        }
        out
    };
    let mut general = vec![0.0; n];
    for v in x.vectors() {
        let coeff = dot(target, v);
        let sv = apply_inverse(v);
        general.iter_mut().zip(&sv).for_each(|(g, s)| *g += coeff * s);
    }

    if let Some(a) = tightness(x, tol).bound() {
        let mut tight = vec![0.0; n];
        for v in x.vectors() {
            let coeff = dot(target, v) / a;
            tight.iter_mut().zip(v).for_each(|(t, vi)| *t += coeff * vi);
        }
        let gap = max_abs_diff(&general, &tight);
        if gap > tol.route_abs * norm(target).max(1.0) {
            return Err(FrameError::InconsistentVerdict {
                detail: format!("tight and general reconstructions differ by {gap:.3e}"),
            });
        }
    }
    Ok(general)
}
