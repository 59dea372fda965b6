use serde::{Deserialize, Serialize};

use super::perturb::perturb_replace;
use super::{CoreError, CoreWarning};
use crate::frames::{gram, NeighborSet, UnitVectorSystem};
use crate::numerics::vector::{dot, normalized, reject, scale, sub};
use crate::numerics::{
    min_norm_point, nnls_cone_feasible, orthonormal_basis, orthonormal_complement, span_rank,
    ConeResult, Matrix, NumericsError, Tolerances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorStatus {
    Isolated,
    DeficientIsolable,
    Isolable,
    NotIsolable,
    Indeterminate,
}

impl VectorStatus {
    /// Isolated and deficient vectors are isolable too.
    pub fn is_isolable(self) -> bool {
        matches!(
            self,
            VectorStatus::Isolated | VectorStatus::DeficientIsolable | VectorStatus::Isolable
        )
    }
}

/// Which step of the decision procedure settled a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionStage {
    /// Coherence zero or a single vector: nothing can be improved.
    ZeroCoherence,
    NoNeighbors,
    /// The neighbors do not span `R^n`.
    Deficiency,
    /// The projected neighbors lie in an open half-space.
    MinNormPoint,
    /// Cone membership of `+-b_j` for a basis `b_j` of `x^perp`.
    ConeTest,
    /// A numerical routine gave up or could not certify its answer.
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorVerdict {
    pub index: usize,
    pub status: VectorStatus,
    pub decided_by: DecisionStage,
    /// The coherence level at which neighbors were taken.
    pub level: f64,
    pub neighbors: Vec<usize>,
    pub neighbor_span_rank: usize,
    /// Unit direction orthogonal to the vector along which it can be moved
    /// to become isolated.
    pub witness: Option<Vec<f64>>,
    /// Convex weights on `neighbors` whose combination of the projected
    /// signed neighbors vanishes (present for not-isolable verdicts).
    pub certificate: Option<Vec<f64>>,
    /// Norm of the minimum-norm point of the projected signed neighbors.
    pub min_norm: Option<f64>,
    pub warnings: Vec<CoreWarning>,
}

impl VectorVerdict {
    pub fn neighbor_count(&self) -> usize {
        self.neighbors.len()
    }
}

pub(crate) struct StageOutcome {
    pub status: VectorStatus,
    pub stage: DecisionStage,
    pub witness: Option<Vec<f64>>,
    pub certificate: Option<Vec<f64>>,
    pub min_norm: Option<f64>,
}

/// Classifies vector `i` at the coherence level of `x`.
pub fn classify_vector(x: &UnitVectorSystem, i: usize, tol: &Tolerances) -> Result<VectorVerdict, CoreError> {
    if i >= x.len() {
        return Err(CoreError::Index { index: i, len: x.len() });
    }
    let g = gram(x);
    let alpha = g.coherence;
    let nb = g.neighbors(i, alpha, tol);
    let members: Vec<&[f64]> = nb.members.iter().map(|&j| x.vector(j)).collect();
    let rank = if members.is_empty() { 0 } else { span_rank(&members, tol)? };

    let mut verdict = VectorVerdict {
        index: i,
        status: VectorStatus::NotIsolable,
        decided_by: DecisionStage::ZeroCoherence,
        level: alpha,
        neighbors: nb.members.clone(),
        neighbor_span_rank: rank,
        witness: None,
        certificate: None,
        min_norm: None,
        warnings: Vec::new(),
    };
    if x.len() == 1 || alpha <= tol.eq_abs {
        return Ok(verdict);
    }
    let ties = g.near_ties(i, alpha, tol);
    if !ties.is_empty() {
        verdict.warnings.push(CoreWarning::NearTie { index: i, others: ties });
    }

    let outcome = match decide(x, i, &nb, rank, tol) {
        Ok(o) => o,
        Err(e) if e.is_numerical() => {
            verdict.status = VectorStatus::Indeterminate;
            verdict.decided_by = DecisionStage::Numerical;
            verdict.warnings.push(CoreWarning::Unconfirmed {
                index: i,
                detail: e.to_string(),
            });
            return Ok(verdict);
        }
        Err(e) => return Err(e.into()),
    };
    verdict.status = outcome.status;
    verdict.decided_by = outcome.stage;
    verdict.witness = outcome.witness;
    verdict.certificate = outcome.certificate;
    verdict.min_norm = outcome.min_norm;

    if verdict.status.is_isolable() {
        let confirmed = match &verdict.witness {
            Some(w) => perturb_replace(x, i, w, tol).map(|_| ()),
            None => Err(CoreError::PreconditionViolation("no witness direction".into())),
        };
        match confirmed {
            Ok(()) => {}
            Err(e @ (CoreError::SearchFailed { .. } | CoreError::PreconditionViolation(_))) => {
                verdict.status = VectorStatus::Indeterminate;
                verdict.warnings.push(CoreWarning::Unconfirmed {
                    index: i,
                    detail: e.to_string(),
                });
            }
            Err(e) if e.is_numerical() => {
                verdict.status = VectorStatus::Indeterminate;
                verdict.warnings.push(CoreWarning::Unconfirmed {
                    index: i,
                    detail: e.to_string(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(verdict)
}

fn decide(
    x: &UnitVectorSystem,
    i: usize,
    nb: &NeighborSet,
    rank: usize,
    tol: &Tolerances,
) -> Result<StageOutcome, NumericsError> {
    let xi = x.vector(i);
    let n = x.dim();
    if nb.is_empty() {
        let witness = hyperplane_basis(xi, tol)?.into_iter().next();
        return Ok(StageOutcome {
            status: VectorStatus::Isolated,
            stage: DecisionStage::NoNeighbors,
            witness,
            certificate: None,
            min_norm: None,
        });
    }
    let members: Vec<&[f64]> = nb.members.iter().map(|&j| x.vector(j)).collect();
    if rank < n {
        return Ok(StageOutcome {
            status: VectorStatus::DeficientIsolable,
            stage: DecisionStage::Deficiency,
            witness: Some(deficiency_witness(xi, &members, tol)?),
            certificate: None,
            min_norm: None,
        });
    }
    let generators = projected_neighbors(x, i, nb);
    classify_by_cone(xi, &generators, tol)
}

/// `u_y = s_y (y - <x, y> x)` for each neighbor `y`.
pub(crate) fn projected_neighbors(x: &UnitVectorSystem, i: usize, nb: &NeighborSet) -> Vec<Vec<f64>> {
    let xi = x.vector(i);
    nb.members
        .iter()
        .zip(&nb.signs)
        .map(|(&j, &s)| {
            let y = x.vector(j);
            scale(&sub(y, &scale(xi, dot(xi, y))), s)
        })
        .collect()
}

/// Orthonormal basis of `x^perp` (empty when `n = 1`).
fn hyperplane_basis(x: &[f64], tol: &Tolerances) -> Result<Vec<Vec<f64>>, NumericsError> {
    let rows = Matrix::from_rows(&[x])?;
    Ok(orthonormal_complement(&rows, tol)?.row_vecs())
}

/// A unit direction orthogonal to `x` that does not increase any neighbor
/// inner product to first order.
///
/// When `x` and its neighbors leave room, a direction orthogonal to all of
/// them is used. Otherwise the neighbors span a hyperplane not containing
/// `x`, and the direction is its normal `z` (oriented so `<x, z> > 0`)
/// projected onto `x^perp`: then `<w, s_y y> = -<z, x> alpha < 0`.
fn deficiency_witness(x: &[f64], members: &[&[f64]], tol: &Tolerances) -> Result<Vec<f64>, NumericsError> {
    let mut with_x: Vec<&[f64]> = members.to_vec();
    with_x.push(x);
    let basis = orthonormal_basis(&with_x, tol);
    if basis.len() < x.len() {
        let comp = orthonormal_complement(&Matrix::from_rows(&basis)?, tol)?;
        return Ok(comp.row(0).to_vec());
    }
    let nbasis = orthonormal_basis(members, tol);
    let mut z = x.to_vec();
    for b in &nbasis {
        z = sub(&z, &scale(b, dot(&z, b)));
    }
    let z = normalized(&z).ok_or_else(|| NumericsError::Inconclusive {
        detail: "deficiency normal vanished".into(),
    })?;
    normalized(&reject(&z, x)).ok_or_else(|| NumericsError::Inconclusive {
        detail: "deficiency normal is parallel to the vector".into(),
    })
}

/// The general isolability decision on projected signed neighbors `u`
/// (all orthogonal to `x`).
///
/// A nonzero minimum-norm point `p` of `conv(u)` gives the witness `-p/|p|`.
/// If the hull contains the origin, each `+-b_j` of a basis of `x^perp` is
/// tested for membership in the cone of `u`; all members means the `u`
/// positively span `x^perp` (not isolable), and an infeasibility
/// certificate is a witness.
pub(crate) fn classify_by_cone(x: &[f64], u: &[Vec<f64>], tol: &Tolerances) -> Result<StageOutcome, NumericsError> {
    let mn = min_norm_point(u, tol)?;
    let p_norm = mn.norm();
    let separates = |w: &[f64]| u.iter().all(|ui| dot(w, ui) <= tol.hull_abs);

    if p_norm > tol.hull_abs {
        if let Some(w) = normalized(&reject(&scale(&mn.point, -1.0), x)) {
            if separates(&w) {
                return Ok(StageOutcome {
                    status: VectorStatus::Isolable,
                    stage: DecisionStage::MinNormPoint,
                    witness: Some(w),
                    certificate: None,
                    min_norm: Some(p_norm),
                });
            }
        }
    }

    let mut combined = mn.weights.clone();
    for b in hyperplane_basis(x, tol)? {
        for sign in [1.0, -1.0] {
            let target = scale(&b, sign);
            match nnls_cone_feasible(u, &target, tol)? {
                ConeResult::Feasible { weights, .. } => {
                    combined.iter_mut().zip(&weights).for_each(|(c, w)| *c += w);
                }
                ConeResult::Infeasible { certificate, .. } => {
                    let w = normalized(&reject(&certificate, x)).filter(|w| separates(w)).ok_or_else(|| {
                        NumericsError::Inconclusive {
                            detail: "cone certificate does not separate after projection".into(),
                        }
                    })?;
                    return Ok(StageOutcome {
                        status: VectorStatus::Isolable,
                        stage: DecisionStage::ConeTest,
                        witness: Some(w),
                        certificate: None,
                        min_norm: Some(p_norm),
                    });
                }
            }
        }
    }
    let total: f64 = combined.iter().sum();
    Ok(StageOutcome {
        status: VectorStatus::NotIsolable,
        stage: DecisionStage::ConeTest,
        witness: None,
        certificate: Some(combined.iter().map(|c| c / total).collect()),
        min_norm: Some(p_norm),
    })
}
