//! Cone membership by Lawson-Hanson nonnegative least squares.

use serde::{Deserialize, Serialize};

use super::vector::{dot, norm, scale};
use super::{NumericsError, Tolerances};

/// Outcome of testing `target ∈ cone(generators)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ConeResult {
    /// `weights >= 0` with `|sum weights_i u_i - target| = residual <= hull_abs`.
    Feasible { weights: Vec<f64>, residual: f64 },
    /// Unit vector `r` with `<r, u_i> <= hull_abs` for every generator and
    /// `<r, target> > hull_abs`: the normalized final NNLS residual.
    Infeasible {
        certificate: Vec<f64>,
        residual: f64,
    },
}

impl ConeResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ConeResult::Feasible { .. })
    }
}

/// Decides whether `target` is a nonnegative combination of `generators`.
///
/// Runs the Lawson-Hanson active-set iteration on
/// `min |A w - target|, w >= 0` where the columns of `A` are the generators.
/// The iteration is capped at `100 * generators.len()` least-squares solves.
pub fn nnls_cone_feasible<V: AsRef<[f64]>>(
    generators: &[V],
    target: &[f64],
    tol: &Tolerances,
) -> Result<ConeResult, NumericsError> {
    let cols: Vec<&[f64]> = generators.iter().map(|g| g.as_ref()).collect();
    if cols.is_empty() {
        return Err(NumericsError::Empty);
    }
    let dim = target.len();
    for c in &cols {
        if c.len() != dim {
            return Err(NumericsError::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
    }
    if !target.iter().chain(cols.iter().flat_map(|c| c.iter())).all(|x| x.is_finite()) {
        return Err(NumericsError::NonFinite);
    }

    let weights = lawson_hanson(&cols, target, tol)?;
    let fitted = combine(&cols, &weights, dim);
    let resid_vec: Vec<f64> = target.iter().zip(&fitted).map(|(t, f)| t - f).collect();
    let residual = norm(&resid_vec);
    if residual <= tol.hull_abs {
        return Ok(ConeResult::Feasible { weights, residual });
    }

    let certificate = scale(&resid_vec, 1.0 / residual);
    let worst = cols
        .iter()
        .map(|c| dot(&certificate, c))
        .fold(f64::NEG_INFINITY, f64::max);
    let reach = dot(&certificate, target);
    if worst <= tol.hull_abs && reach > tol.hull_abs {
        Ok(ConeResult::Infeasible {
            certificate,
            residual,
        })
    } else {
        Err(NumericsError::Inconclusive {
            detail: format!(
                "residual {residual:.3e} but certificate fails: max <r,u> = {worst:.3e}, <r,b> = {reach:.3e}"
            ),
        })
    }
}

fn combine(cols: &[&[f64]], weights: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (c, &w) in cols.iter().zip(weights) {
        if w != 0.0 {
            out.iter_mut().zip(c.iter()).for_each(|(o, ci)| *o += w * ci);
        }
    }
    out
}

fn lawson_hanson(cols: &[&[f64]], b: &[f64], tol: &Tolerances) -> Result<Vec<f64>, NumericsError> {
    let g = cols.len();
    let dim = b.len();
    let max_iter = 100 * g;
    let col_scale = cols.iter().map(|c| norm(c)).fold(0.0, f64::max);
    let dual_tol = 64.0 * f64::EPSILON * col_scale * norm(b).max(1.0);
    let indep_rel = tol.singular_rel();

    let mut x = vec![0.0; g];
    let mut passive: Vec<usize> = Vec::new();
    // candidates rejected for linear dependence; cleared whenever x changes
    let mut blocked = vec![false; g];
    let mut iterations = 0usize;

    loop {
        let fitted = combine(cols, &x, dim);
        let r: Vec<f64> = b.iter().zip(&fitted).map(|(bi, fi)| bi - fi).collect();
        let entering = (0..g)
            .filter(|j| !passive.contains(j) && !blocked[*j])
            .map(|j| (j, dot(cols[j], &r)))
            .filter(|&(_, w)| w > dual_tol)
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
        let Some((j, _)) = entering else {
            return Ok(x);
        };
        if passive.len() >= dim || !independent_of(cols, &passive, j, indep_rel) {
            blocked[j] = true;
            continue;
        }
        passive.push(j);
        let before = x.clone();

        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(NumericsError::IterationLimit { iterations: max_iter });
            }
            let s = least_squares(cols, &passive, b);
            if s.iter().all(|&v| v > 0.0) {
                for (&p, &v) in passive.iter().zip(&s) {
                    x[p] = v;
                }
                break;
            }
            // move toward s until the first passive coefficient reaches zero
            let mut step = f64::INFINITY;
            let mut leaving = 0;
            for (k, (&p, &v)) in passive.iter().zip(&s).enumerate() {
                if v <= 0.0 {
                    let t = if x[p] > 0.0 { x[p] / (x[p] - v) } else { 0.0 };
                    if t < step {
                        step = t;
                        leaving = k;
                    }
                }
            }
            for (&p, &v) in passive.iter().zip(&s) {
                x[p] += step * (v - x[p]);
            }
            x[passive[leaving]] = 0.0;
            passive.retain(|&p| {
                if x[p] <= 0.0 {
                    x[p] = 0.0;
                    false
                } else {
                    true
                }
            });
            if passive.is_empty() {
                break;
            }
        }
        if x == before {
            // no progress: the entering column cannot improve the fit numerically
            blocked[j] = true;
            passive.retain(|&p| p != j);
            x[j] = 0.0;
        } else {
            blocked.iter_mut().for_each(|bl| *bl = false);
        }
    }
}

fn independent_of(cols: &[&[f64]], passive: &[usize], j: usize, rel: f64) -> bool {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(passive.len());
    for &p in passive {
        let mut v = cols[p].to_vec();
        gram_schmidt_step(&mut v, &basis);
        let len = norm(&v);
        if len > 0.0 {
            basis.push(scale(&v, 1.0 / len));
        }
    }
    let mut v = cols[j].to_vec();
    let original = norm(&v);
    gram_schmidt_step(&mut v, &basis);
    norm(&v) > rel * original
}

fn gram_schmidt_step(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= c * qi);
        }
    }
}

/// Unconstrained least squares on the passive columns via thin QR
/// (reorthogonalized modified Gram-Schmidt).
fn least_squares(cols: &[&[f64]], passive: &[usize], b: &[f64]) -> Vec<f64> {
    let k = passive.len();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = vec![vec![0.0; k]; k];
    for (jj, &p) in passive.iter().enumerate() {
        let mut v = cols[p].to_vec();
        for _ in 0..2 {
            for (ii, qi) in q.iter().enumerate() {
                let c = dot(&v, qi);
                r[ii][jj] += c;
                v.iter_mut().zip(qi).for_each(|(vi, qv)| *vi -= c * qv);
            }
        }
        let len = norm(&v);
        r[jj][jj] = len;
        q.push(if len > 0.0 { scale(&v, 1.0 / len) } else { v });
    }
    let qtb: Vec<f64> = q.iter().map(|qi| dot(qi, b)).collect();
    let mut s = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = qtb[i];
        for j in (i + 1)..k {
            acc -= r[i][j] * s[j];
        }
        s[i] = if r[i][i] != 0.0 { acc / r[i][i] } else { 0.0 };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn symmetric_average_is_feasible() {
        let gens = [vec![1.0, 1.0], vec![1.0, -1.0]];
        match nnls_cone_feasible(&gens, &[1.0, 0.0], &tol()).unwrap() {
            ConeResult::Feasible { weights, residual } => {
                assert!((weights[0] - 0.5).abs() < 1e-14);
                assert!((weights[1] - 0.5).abs() < 1e-14);
                assert!(residual < 1e-14);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn orthogonal_generator_is_infeasible() {
        let gens = [vec![0.0, 1.0]];
        match nnls_cone_feasible(&gens, &[1.0, 0.0], &tol()).unwrap() {
            ConeResult::Infeasible { certificate, .. } => {
                assert!((certificate[0] - 1.0).abs() < 1e-14);
                assert!(certificate[1].abs() < 1e-14);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn negative_quadrant_is_infeasible() {
        let gens = [vec![1.0, 0.0], vec![0.0, 1.0]];
        match nnls_cone_feasible(&gens, &[-1.0, -1.0], &tol()).unwrap() {
            ConeResult::Infeasible { certificate, .. } => {
                let h = 0.5f64.sqrt();
                assert!((certificate[0] + h).abs() < 1e-14);
                assert!((certificate[1] + h).abs() < 1e-14);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn dependent_generators_are_handled() {
        // more generators than dimensions, several collinear
        let gens = [
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![1.0, 1.0],
        ];
        for target in [[3.0, -2.0], [0.5, 7.0], [0.0, 0.0]] {
            assert!(nnls_cone_feasible(&gens, &target, &tol())
                .unwrap()
                .is_feasible());
        }
        match nnls_cone_feasible(&gens, &[-1.0, 0.25], &tol()).unwrap() {
            ConeResult::Infeasible { certificate, .. } => {
                assert!((certificate[0] + 1.0).abs() < 1e-12);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn errors() {
        let empty: [Vec<f64>; 0] = [];
        assert!(matches!(
            nnls_cone_feasible(&empty, &[1.0], &tol()),
            Err(NumericsError::Empty)
        ));
        assert!(matches!(
            nnls_cone_feasible(&[vec![1.0, 0.0]], &[1.0], &tol()),
            Err(NumericsError::DimensionMismatch { .. })
        ));
    }
}
