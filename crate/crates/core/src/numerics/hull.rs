//! Minimum-norm point of a convex hull.

use serde::{Deserialize, Serialize};

use super::vector::dot;
use super::{NumericsError, Tolerances};

const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullPoint {
    pub point: Vec<f64>,
    /// Convex weights with `sum weights_i u_i = point`.
    pub weights: Vec<f64>,
    /// Frank-Wolfe duality gap `|p|^2 - min_i <p, u_i>` at exit.
    pub gap: f64,
    pub iterations: usize,
}

impl HullPoint {
    pub fn norm(&self) -> f64 {
        dot(&self.point, &self.point).sqrt()
    }
}

/// Point of `conv(points)` closest to the origin.
///
/// Frank-Wolfe with away steps and exact line search, started from the
/// centroid. On exit `<p, u_i> >= |p|^2 - gap` holds for every input point.
pub fn min_norm_point<V: AsRef<[f64]>>(points: &[V], tol: &Tolerances) -> Result<HullPoint, NumericsError> {
    let pts: Vec<&[f64]> = points.iter().map(|p| p.as_ref()).collect();
    let k = pts.len();
    if k == 0 {
        return Err(NumericsError::Empty);
    }
    let dim = pts[0].len();
    for p in &pts {
        if p.len() != dim {
            return Err(NumericsError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if !p.iter().all(|x| x.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
    }

    let scale = pts
        .iter()
        .map(|p| dot(p, p))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    // stopping gap, kept well under hull_abs^2 relative to the point scale
    let target_gap = (1e-3 * tol.hull_abs).min(1e-14) * scale;

    let mut weights = vec![1.0 / k as f64; k];
    let mut point = combine(&pts, &weights, dim);

    for iteration in 0..MAX_ITERATIONS {
        let pp = dot(&point, &point);
        let grads: Vec<f64> = pts.iter().map(|u| dot(&point, u)).collect();
        let (s, gs) = argmin(&grads, |_| true);
        let gap = pp - gs;
        if gap <= target_gap || pp <= f64::EPSILON * f64::EPSILON * scale {
            return Ok(HullPoint {
                point,
                weights,
                gap: gap.max(0.0),
                iterations: iteration,
            });
        }
        let (v, gv) = argmax(&grads, |i| weights[i] > 0.0);
        let away_gap = gv - pp;

        if gap >= away_gap {
            // toward vertex s: d = u_s - p
            let d: Vec<f64> = pts[s].iter().zip(&point).map(|(a, b)| a - b).collect();
            let dd = dot(&d, &d);
            let step = if dd > 0.0 { (-dot(&point, &d) / dd).clamp(0.0, 1.0) } else { 0.0 };
            weights.iter_mut().for_each(|w| *w *= 1.0 - step);
            weights[s] += step;
        } else {
            // away from vertex v: d = p - u_v
            let d: Vec<f64> = point.iter().zip(pts[v]).map(|(a, b)| a - b).collect();
            let dd = dot(&d, &d);
            let max_step = weights[v] / (1.0 - weights[v]);
            let mut step = if dd > 0.0 { -dot(&point, &d) / dd } else { 0.0 };
            step = step.clamp(0.0, max_step);
            weights.iter_mut().for_each(|w| *w *= 1.0 + step);
            weights[v] -= step;
            if step >= max_step {
                weights[v] = 0.0;
            }
        }
        for w in weights.iter_mut() {
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        point = combine(&pts, &weights, dim);
    }
    Err(NumericsError::IterationLimit {
        iterations: MAX_ITERATIONS,
    })
}

fn combine(pts: &[&[f64]], weights: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (p, &w) in pts.iter().zip(weights) {
        if w != 0.0 {
            out.iter_mut().zip(p.iter()).for_each(|(o, x)| *o += w * x);
        }
    }
    out
}

fn argmin(values: &[f64], keep: impl Fn(usize) -> bool) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if keep(i) && v < best.1 {
            best = (i, v);
        }
    }
    best
}

fn argmax(values: &[f64], keep: impl Fn(usize) -> bool) -> (usize, f64) {
    let mut best = (usize::MAX, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if keep(i) && v > best.1 {
            best = (i, v);
        }
    }
    best
}
