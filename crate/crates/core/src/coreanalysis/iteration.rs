use serde::{Deserialize, Serialize};

use super::classify::{classify_vector, VectorStatus, VectorVerdict};
use super::perturb::perturb_against;
use super::{CoreError, CoreWarning};
use crate::diagnostic::{Diagnostic, DiagnosticStatus};
use crate::frames::{gram, UnitVectorSystem};
use crate::numerics::vector::dot;
use crate::numerics::{span_rank, Tolerances};

/// The isolable vectors `I(X)` of a system with the verdicts behind them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolableSet {
    pub coherence: f64,
    pub isolable: Vec<usize>,
    /// Vectors whose classification was inconclusive; excluded from
    /// `isolable`.
    pub indeterminate: Vec<usize>,
    pub verdicts: Vec<VectorVerdict>,
    pub warnings: Vec<CoreWarning>,
}

pub fn isolable_set(x: &UnitVectorSystem, tol: &Tolerances) -> Result<IsolableSet, CoreError> {
    let verdicts = (0..x.len())
        .map(|i| classify_vector(x, i, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let pick = |f: fn(VectorStatus) -> bool| -> Vec<usize> {
        verdicts.iter().filter(|v| f(v.status)).map(|v| v.index).collect()
    };
    let isolable = pick(VectorStatus::is_isolable);
    let indeterminate = pick(|s| s == VectorStatus::Indeterminate);
    let mut warnings: Vec<CoreWarning> = verdicts.iter().flat_map(|v| v.warnings.clone()).collect();
    if !indeterminate.is_empty() {
        warnings.push(CoreWarning::IndeterminateRetained {
            level: 0,
            indices: indeterminate.clone(),
        });
    }
    Ok(IsolableSet {
        coherence: gram(x).coherence,
        isolable,
        indeterminate,
        verdicts,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replacement {
    pub system: UnitVectorSystem,
    pub replaced: Vec<usize>,
    pub coherence_before: f64,
    pub coherence_after: f64,
    /// Coherence of the system with its isolable vectors removed (`None`
    /// when nothing would remain).
    pub reduced_coherence: Option<f64>,
    /// Whether `coherence_after` matches `reduced_coherence`, which holds for
    /// Grassmannian input.
    pub diagnostic: Diagnostic,
    pub warnings: Vec<CoreWarning>,
}

/// Replaces every isolable vector, in ascending index order, by a nearby
/// vector that is strictly below the coherence against everything,
/// including the vectors already replaced.
pub fn replace_all_isolable(x: &UnitVectorSystem, tol: &Tolerances) -> Result<Replacement, CoreError> {
    let set = isolable_set(x, tol)?;
    let alpha = set.coherence;
    let mut current = x.clone();
    let mut replaced = Vec::new();
    if alpha > tol.eq_abs {
        for &i in &set.isolable {
            let w = set.verdicts[i]
                .witness
                .as_ref()
                .ok_or_else(|| CoreError::PreconditionViolation(format!("vector {i} has no witness")))?;
            let v = perturb_against(&current, i, w, alpha, tol)?;
            current = current.replace(i, v, tol)?;
            replaced.push(i);
        }
    }
    for &i in &replaced {
        let worst = (0..current.len())
            .filter(|&j| j != i)
            .map(|j| dot(current.vector(i), current.vector(j)).abs())
            .fold(0.0, f64::max);
        if worst >= alpha {
            return Err(CoreError::SearchFailed {
                index: i,
                halvings: super::MAX_HALVINGS,
            });
        }
    }

    let after = gram(&current).coherence;
    let keep: Vec<usize> = (0..x.len()).filter(|i| !set.isolable.contains(i)).collect();
    let reduced = if keep.is_empty() {
        None
    } else {
        Some(gram(&x.restrict(&keep)?).coherence)
    };
    let diagnostic = match reduced {
        _ if replaced.is_empty() => Diagnostic::new(DiagnosticStatus::Pass, "nothing to replace"),
        Some(r) if (r - after).abs() <= 1e-9 => Diagnostic::new(
            DiagnosticStatus::Pass,
            "coherence after replacement equals that of the remaining vectors",
        ),
        Some(r) => Diagnostic::new(
            DiagnosticStatus::FailedDiagnostic,
            format!("coherence after replacement {after} differs from {r} of the remaining vectors: input is not Grassmannian"),
        ),
        None => Diagnostic::new(
            DiagnosticStatus::FailedDiagnostic,
            "every vector was isolable: input is not Grassmannian",
        ),
    };
    Ok(Replacement {
        system: current,
        replaced,
        coherence_before: alpha,
        coherence_after: after,
        reduced_coherence: reduced,
        diagnostic,
        warnings: set.warnings,
    })
}

/// One step `Y_k` of the core iteration, with indices into the input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreLevel {
    pub members: Vec<usize>,
    pub isolable: Vec<usize>,
    pub indeterminate: Vec<usize>,
    pub coherence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreTrace {
    /// `Y_0 = X, Y_1, ...` up to and including the fixed point.
    pub levels: Vec<CoreLevel>,
    pub core: Vec<usize>,
    pub warnings: Vec<CoreWarning>,
}

/// Repeatedly removes the isolable vectors until none are left; what
/// remains is the core. Inconclusive vectors are kept.
pub fn core(x: &UnitVectorSystem, tol: &Tolerances) -> Result<CoreTrace, CoreError> {
    let original = gram(x).coherence;
    let mut members: Vec<usize> = (0..x.len()).collect();
    let mut levels = Vec::new();
    let mut warnings = Vec::new();
    loop {
        if members.is_empty() {
            warnings.push(CoreWarning::NotGrassmannianEvidence {
                detail: "the core iteration removed every vector".into(),
            });
            break;
        }
        let level = levels.len();
        let sub = x.restrict(&members)?;
        let set = isolable_set(&sub, tol)?;
        let global = |local: &[usize]| -> Vec<usize> { local.iter().map(|&k| members[k]).collect() };
        if (set.coherence - original).abs() > tol.neighbor_abs {
            warnings.push(CoreWarning::CoherenceShift {
                level,
                coherence: set.coherence,
                original,
            });
        }
        for w in set.warnings {
            warnings.push(match w {
                CoreWarning::NearTie { index, others } => CoreWarning::NearTie {
                    index: members[index],
                    others: global(&others),
                },
                CoreWarning::Unconfirmed { index, detail } => CoreWarning::Unconfirmed {
                    index: members[index],
                    detail,
                },
                CoreWarning::IndeterminateRetained { indices, .. } => CoreWarning::IndeterminateRetained {
                    level,
                    indices: global(&indices),
                },
                other => other,
            });
        }
        let isolable = global(&set.isolable);
        levels.push(CoreLevel {
            members: members.clone(),
            isolable: isolable.clone(),
            indeterminate: global(&set.indeterminate),
            coherence: set.coherence,
        });
        if isolable.is_empty() {
            break;
        }
        members.retain(|i| !isolable.contains(i));
    }
    Ok(CoreTrace {
        levels,
        core: members,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanCheck {
    pub index: usize,
    pub neighbors_in_core: usize,
    pub rank: usize,
    pub status: DiagnosticStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreValidation {
    pub coherence: f64,
    pub size: Diagnostic,
    pub spanning: Vec<SpanCheck>,
    pub status: DiagnosticStatus,
}

/// Checks the properties every Grassmannian core has: at least `n + 1`
/// vectors, each with neighbors inside the core spanning `R^n`. Failures
/// are evidence that the input is not Grassmannian.
pub fn validate_core(x: &UnitVectorSystem, trace: &CoreTrace, tol: &Tolerances) -> Result<CoreValidation, CoreError> {
    let g = gram(x);
    let alpha = g.coherence;
    let n = x.dim();
    if alpha <= tol.eq_abs {
        return Ok(CoreValidation {
            coherence: alpha,
            size: Diagnostic::new(DiagnosticStatus::Pass, "zero coherence: the core is the whole system"),
            spanning: Vec::new(),
            status: DiagnosticStatus::Pass,
        });
    }
    let c = &trace.core;
    let size = if c.len() > n {
        Diagnostic::new(DiagnosticStatus::Pass, format!("core has {} >= n + 1 = {} vectors", c.len(), n + 1))
    } else {
        Diagnostic::new(
            DiagnosticStatus::FailedDiagnostic,
            format!(
                "core has {} < n + 1 = {} vectors: evidence input is not Grassmannian",
                c.len(),
                n + 1
            ),
        )
    };
    let mut spanning = Vec::with_capacity(c.len());
    for &i in c {
        let nb: Vec<&[f64]> = c
            .iter()
            .filter(|&&j| j != i && (g.entries[(i, j)].abs() - alpha).abs() <= tol.neighbor_abs)
            .map(|&j| x.vector(j))
            .collect();
        let rank = if nb.is_empty() { 0 } else { span_rank(&nb, tol)? };
        spanning.push(SpanCheck {
            index: i,
            neighbors_in_core: nb.len(),
            rank,
            status: if rank == n {
                DiagnosticStatus::Pass
            } else {
                DiagnosticStatus::FailedDiagnostic
            },
        });
    }
    let failed = size.status.is_failure() || spanning.iter().any(|s| s.status.is_failure());
    Ok(CoreValidation {
        coherence: alpha,
        size,
        spanning,
        status: if failed {
            DiagnosticStatus::FailedDiagnostic
        } else {
            DiagnosticStatus::Pass
        },
    })
}
