use serde::{Deserialize, Serialize};

use super::iteration::{core, CoreTrace};
use super::{CoreError, CoreWarning};
use crate::diagnostic::{Diagnostic, DiagnosticStatus};
use crate::frames::{gram, neighbors, spectrum, tightness, UnitVectorSystem};
use crate::numerics::{distance_to_span, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DichotomyVerdict {
    /// `m != n + 2`.
    Inapplicable,
    FullCore,
    /// The core has `n + 1` vectors, pairwise at the coherence.
    EquiangularSubset { indices: Vec<usize> },
    /// Neither alternative holds, so the input is not Grassmannian.
    Unresolved { core: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub verdict: DichotomyVerdict,
    pub trace: Option<CoreTrace>,
    pub warnings: Vec<CoreWarning>,
}

/// For `n + 2` vectors in `R^n`: either the core is everything or it is an
/// equiangular set of `n + 1` vectors.
pub fn classify_n_plus_2(x: &UnitVectorSystem, tol: &Tolerances) -> Result<DichotomyReport, CoreError> {
    if x.len() != x.dim() + 2 {
        return Ok(DichotomyReport {
            verdict: DichotomyVerdict::Inapplicable,
            trace: None,
            warnings: Vec::new(),
        });
    }
    let trace = core(x, tol)?;
    let mut warnings = Vec::new();
    let c = trace.core.clone();
    let verdict = if c.len() == x.len() {
        DichotomyVerdict::FullCore
    } else if c.len() == x.dim() + 1 && pairwise_at(x, &c, gram(x).coherence, tol) {
        DichotomyVerdict::EquiangularSubset { indices: c }
    } else {
        warnings.push(CoreWarning::NotGrassmannianEvidence {
            detail: format!(
                "core of {} vectors is neither everything nor an equiangular set of n + 1",
                c.len()
            ),
        });
        DichotomyVerdict::Unresolved { core: c }
    };
    Ok(DichotomyReport {
        verdict,
        trace: Some(trace),
        warnings,
    })
}

fn pairwise_at(x: &UnitVectorSystem, idx: &[usize], alpha: f64, tol: &Tolerances) -> bool {
    let g = gram(x);
    idx.iter().enumerate().all(|(a, &i)| {
        idx[a + 1..]
            .iter()
            .all(|&j| (g.entries[(i, j)].abs() - alpha).abs() <= tol.neighbor_abs)
    })
}

/// A Grassmannian frame of `n + 2` vectors in `R^n`, `n > 2`, is never
/// tight. Flags a tight input the caller presumes Grassmannian.
pub fn tight_grassmannian_diagnostic(x: &UnitVectorSystem, presumed_grassmannian: bool, tol: &Tolerances) -> Diagnostic {
    let (m, n) = (x.len(), x.dim());
    if m != n + 2 {
        return Diagnostic::new(DiagnosticStatus::Skip, "applies only to n + 2 vectors");
    }
    if n <= 2 {
        return Diagnostic::new(DiagnosticStatus::Skip, "applies only for n > 2");
    }
    if !tightness(x, tol).is_tight() {
        return Diagnostic::new(DiagnosticStatus::Skip, "not tight");
    }
    if presumed_grassmannian {
        Diagnostic::new(
            DiagnosticStatus::FailedDiagnostic,
            "tight system of n + 2 vectors with n > 2 presumed Grassmannian: input is not Grassmannian or tolerances are wrong",
        )
    } else {
        Diagnostic::new(
            DiagnosticStatus::Pass,
            "tight system of n + 2 vectors with n > 2, hence not Grassmannian",
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSpanReport {
    pub status: DiagnosticStatus,
    pub top_multiplicity: usize,
    /// `distances[k][i]`: distance from the `k`-th top eigenvector to the
    /// span of vector `i` and its neighbors.
    pub distances: Vec<Vec<f64>>,
    pub max_distance: f64,
    pub detail: String,
}

/// Distance from the top eigenvector of the frame operator to the span of
/// each vector together with its neighbors; in a Grassmannian frame the
/// eigenvector lies in every such span.
pub fn eigen_span_diagnostic(x: &UnitVectorSystem, tol: &Tolerances) -> Result<EigenSpanReport, CoreError> {
    if x.len() <= x.dim() {
        return Ok(EigenSpanReport {
            status: DiagnosticStatus::Skip,
            top_multiplicity: 0,
            distances: Vec::new(),
            max_distance: 0.0,
            detail: "requires m > n".into(),
        });
    }
    let spec = spectrum(x, tol)?;
    let alpha = gram(x).coherence;
    let k = spec.top_multiplicity;
    let spans: Vec<Vec<&[f64]>> = (0..x.len())
        .map(|i| {
            let mut f = vec![x.vector(i)];
            f.extend(neighbors(x, i, alpha, tol).members.iter().map(|&j| x.vector(j)));
            f
        })
        .collect();
    let distances: Vec<Vec<f64>> = spec.eigenvectors[..k]
        .iter()
        .map(|e| spans.iter().map(|f| distance_to_span(e, f, tol)).collect())
        .collect();
    let max_distance = distances.iter().flatten().copied().fold(0.0, f64::max);
    let (status, detail) = if k > 1 {
        (
            DiagnosticStatus::Ambiguous,
            format!("largest eigenvalue has multiplicity {k}; no distinguished top eigenvector"),
        )
    } else if max_distance <= tol.route_abs {
        (DiagnosticStatus::Pass, "top eigenvector lies in every neighbor span".to_string())
    } else {
        (
            DiagnosticStatus::FailedDiagnostic,
            format!("top eigenvector is {max_distance:.3e} from some neighbor span: input is not Grassmannian"),
        )
    };
    Ok(EigenSpanReport {
        status,
        top_multiplicity: k,
        distances,
        max_distance,
        detail,
    })
}
