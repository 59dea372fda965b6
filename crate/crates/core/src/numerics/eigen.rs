//! Symmetric eigendecomposition by cyclic Jacobi rotations.

use serde::{Deserialize, Serialize};

use super::{Matrix, NumericsError, Tolerances};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
///
/// Each eigenvector has its first coordinate of magnitude above `eq_abs`
/// made positive, so repeated runs on the same input agree bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    /// Number of eigenvalues within `eq_abs` of the largest one.
    pub top_multiplicity: usize,
}

impl SpectralData {
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `sum_i lambda_i v_i v_i^T`
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let mut s = Matrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    s[(i, j)] += lambda * v[i] * v[j];
                }
            }
        }
        s
    }
}

pub fn sym_eig(s: &Matrix, tol: &Tolerances) -> Result<SpectralData, NumericsError> {
    if !s.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if !s.is_square() {
        return Err(NumericsError::DimensionMismatch {
            expected: s.rows(),
            found: s.cols(),
        });
    }
    let asym = s.max_asymmetry();
    if asym > tol.eq_abs {
        return Err(NumericsError::NotSymmetric { max_asymmetry: asym });
    }

    let n = s.rows();
    let mut a = s.clone();
    // symmetrize exactly so the rotations see a truly symmetric matrix
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                if t == 0.0 {
                    // off-diagonal entry negligible next to the diagonal gap
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                rotate(&mut a, &mut v, p, q, c, sn);
            }
        }
    }
    if !converged {
        return Err(NumericsError::IterationLimit {
            iterations: MAX_SWEEPS,
        });
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n).map(|i| (a[(i, i)], v.column(i))).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for (lambda, mut vec) in pairs {
        canonical_sign(&mut vec, tol.eq_abs);
        eigenvalues.push(lambda);
        eigenvectors.push(vec);
    }
    let top = eigenvalues[0];
    let top_multiplicity = eigenvalues
        .iter()
        .filter(|&&l| (top - l).abs() <= tol.eq_abs)
        .count();
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
        top_multiplicity,
    })
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Flips `v` so its first coordinate larger than `threshold` in magnitude is positive.
pub(crate) fn canonical_sign(v: &mut [f64], threshold: f64) {
    if let Some(first) = v.iter().find(|x| x.abs() > threshold) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::vector::{dot, norm};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn check_decomposition(s: &Matrix, spec: &SpectralData) {
        let scale = s.frobenius_norm().max(1.0);
        for (l, v) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
            let sv = s.mul_vec(v).unwrap();
            let resid: f64 = sv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - l * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(resid <= 1e-8 * scale, "residual {resid}");
        }
        for (i, a) in spec.eigenvectors.iter().enumerate() {
            for (j, b) in spec.eigenvectors.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot(a, b) - want).abs() <= 1e-9);
            }
        }
        assert!(spec.reconstruct().max_abs_diff(s).unwrap() <= 1e-8 * scale);
        for w in spec.eigenvalues.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let s = Matrix::identity(3);
        let spec = sym_eig(&s, &tol()).unwrap();
        assert_eq!(spec.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert_eq!(spec.top_multiplicity, 3);
        check_decomposition(&s, &spec);
    }

    #[test]
    fn diagonal_two_by_two() {
        let s = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let spec = sym_eig(&s, &tol()).unwrap();
        assert_eq!(spec.eigenvalues, vec![2.0, 1.0]);
        assert_eq!(spec.eigenvectors[0], vec![0.0, 1.0]);
        assert_eq!(spec.eigenvectors[1], vec![1.0, 0.0]);
    }

    #[test]
    fn dense_three_by_three() {
        // eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2+sqrt2, 2, 2-sqrt2
        let s = Matrix::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ])
        .unwrap();
        let spec = sym_eig(&s, &tol()).unwrap();
        let r2 = 2f64.sqrt();
        let want = [2.0 + r2, 2.0, 2.0 - r2];
        for (got, want) in spec.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-13);
        }
        check_decomposition(&s, &spec);
        for v in &spec.eigenvectors {
            assert!((norm(v) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_asymmetric_and_nonfinite() {
        let s = Matrix::from_rows(&[vec![1.0, 0.1], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            sym_eig(&s, &tol()),
            Err(NumericsError::NotSymmetric { .. })
        ));
        let mut s = Matrix::identity(2);
        s[(0, 0)] = f64::INFINITY;
        assert!(matches!(sym_eig(&s, &tol()), Err(NumericsError::NonFinite)));
    }

    #[test]
    fn sign_convention_first_nonzero_positive() {
        let s = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let spec = sym_eig(&s, &tol()).unwrap();
        for v in &spec.eigenvectors {
            let first = v.iter().find(|x| x.abs() > 1e-9).unwrap();
            assert!(*first > 0.0);
        }
        assert!((spec.eigenvalues[0] - 2.0).abs() < 1e-14);
        assert!(spec.eigenvalues[1].abs() < 1e-14);
    }
}
