use super::CoreError;
use crate::frames::{gram, UnitVectorSystem};
use crate::numerics::vector::{add_scaled, dot, norm, normalized};
use crate::numerics::Tolerances;

/// Cap on step-size halvings in the perturbation search.
pub const MAX_HALVINGS: usize = 60;

/// How far below the coherence a perturbed vector must land to count as a
/// strict improvement.
pub fn perturbation_margin(alpha: f64) -> f64 {
    (1e-6 * alpha).max(1e-12)
}

/// Moves `x_i` towards `w` until it is strictly below the coherence against
/// every other vector.
///
/// Returns `x' = (x_i + eps w) / |x_i + eps w|` with
/// `|<x', x_j>| < coh(X) - margin` for all `j != i`. The search starts at
/// `eps = min(1/2, (alpha - delta) / 2)`, `delta` the largest non-neighbor
/// inner product, and halves on failure.
pub fn perturb_replace(
    x: &UnitVectorSystem,
    i: usize,
    w: &[f64],
    tol: &Tolerances,
) -> Result<Vec<f64>, CoreError> {
    perturb_against(x, i, w, gram(x).coherence, tol)
}

/// [`perturb_replace`] with the target level `alpha` supplied by the caller,
/// for systems in which some vectors were already replaced.
pub(crate) fn perturb_against(
    x: &UnitVectorSystem,
    i: usize,
    w: &[f64],
    alpha: f64,
    tol: &Tolerances,
) -> Result<Vec<f64>, CoreError> {
    if i >= x.len() {
        return Err(CoreError::Index { index: i, len: x.len() });
    }
    let xi = x.vector(i);
    if w.len() != x.dim() {
        return Err(CoreError::PreconditionViolation(format!(
            "witness has {} coordinates, expected {}",
            w.len(),
            x.dim()
        )));
    }
    if (norm(w) - 1.0).abs() > tol.certify_abs {
        return Err(CoreError::PreconditionViolation(format!(
            "witness norm is {}, expected 1",
            norm(w)
        )));
    }
    if dot(w, xi).abs() > tol.certify_abs {
        return Err(CoreError::PreconditionViolation(format!(
            "witness is not orthogonal to vector {i} (inner product {:.3e})",
            dot(w, xi)
        )));
    }
    if alpha <= tol.eq_abs {
        return Err(CoreError::PreconditionViolation(
            "coherence is zero, no vector can be improved".into(),
        ));
    }

    let delta = gram(x).max_non_neighbor(i, alpha, tol);
    let limit = alpha - perturbation_margin(alpha);
    let improves = |eps: f64| -> Option<Vec<f64>> {
        let candidate = normalized(&add_scaled(xi, eps, w))?;
        let ok = x
            .vectors()
            .iter()
            .enumerate()
            .all(|(j, y)| j == i || dot(&candidate, y).abs() < limit);
        ok.then_some(candidate)
    };

    let start = 0.5f64.min((alpha - delta) / 2.0);
    let mut eps = start;
    for _ in 0..=MAX_HALVINGS {
        if let Some(v) = improves(eps) {
            return Ok(v);
        }
        eps /= 2.0;
    }
    // The start above is sufficient for the non-neighbors but can be too
    // small when the gain over the neighbors is only second order in eps.
    eps = 0.5;
    while eps > start {
        if let Some(v) = improves(eps) {
            return Ok(v);
        }
        eps /= 2.0;
    }
    Err(CoreError::SearchFailed {
        index: i,
        halvings: MAX_HALVINGS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(alpha: f64) -> UnitVectorSystem {
        let s = (1.0 - alpha * alpha).sqrt();
        UnitVectorSystem::new(
            3,
            vec![
                vec![0.0, 0.0, 1.0],
                vec![s, 0.0, alpha],
                vec![0.0, s, alpha],
                vec![0.0, -s, alpha],
            ],
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn fixed_step_from_the_worked_example() {
        let x = example(0.5);
        let xp = [-0.1, 0.0, 0.99f64.sqrt()];
        assert!((norm(&xp) - 1.0).abs() < 1e-15);
        for y in &x.vectors()[1..] {
            assert!(dot(&xp, y).abs() < 0.5);
        }
    }

    #[test]
    fn search_improves_the_worked_example() {
        let t = Tolerances::default();
        let x = example(0.5);
        let xp = perturb_replace(&x, 0, &[-1.0, 0.0, 0.0], &t).unwrap();
        assert!((norm(&xp) - 1.0).abs() < 1e-12);
        for y in &x.vectors()[1..] {
            assert!(dot(&xp, y).abs() < 0.5 - 1e-9);
        }
        assert!(xp[0] < 0.0 && xp[1].abs() < 1e-15);
    }

    #[test]
    fn bad_witness_is_rejected() {
        let t = Tolerances::default();
        let x = example(0.5);
        assert!(matches!(
            perturb_replace(&x, 0, &[0.0, 0.0, 1.0], &t),
            Err(CoreError::PreconditionViolation(_))
        ));
        assert!(matches!(
            perturb_replace(&x, 0, &[2.0, 0.0, 0.0], &t),
            Err(CoreError::PreconditionViolation(_))
        ));
        assert!(matches!(
            perturb_replace(&x, 9, &[1.0, 0.0, 0.0], &t),
            Err(CoreError::Index { .. })
        ));
    }

    #[test]
    fn wrong_direction_fails() {
        let t = Tolerances::default();
        let x = example(0.5);
        // towards the neighbor (s, 0, alpha): that inner product only grows
        assert!(matches!(
            perturb_replace(&x, 0, &[1.0, 0.0, 0.0], &t),
            Err(CoreError::SearchFailed { index: 0, .. })
        ));
    }
}
