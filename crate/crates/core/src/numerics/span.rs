//! Rank, spans and orthonormal completion.

use super::eigen::sym_eig;
use super::vector::{dot, norm, scale};
use super::{Matrix, NumericsError, Tolerances};

/// Numerical rank: eigenvalues of `M^T M` above `rank_rel` times the largest.
///
/// A matrix whose largest squared singular value does not exceed `eq_abs^2`
/// has rank 0.
pub fn rank_of(m: &Matrix, tol: &Tolerances) -> Result<usize, NumericsError> {
    if !m.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let gram = m.col_gram();
    let spec = sym_eig(&gram, tol)?;
    let top = spec.largest();
    if top <= tol.eq_abs * tol.eq_abs {
        return Ok(0);
    }
    Ok(spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > tol.rank_rel * top)
        .count())
}

/// Rank of the span of a list of equal-length vectors.
pub fn span_rank<V: AsRef<[f64]>>(vectors: &[V], tol: &Tolerances) -> Result<usize, NumericsError> {
    if vectors.is_empty() {
        return Ok(0);
    }
    rank_of(&Matrix::from_rows(vectors)?, tol)
}

/// Completes a set of orthonormal rows to an orthonormal basis of `R^N`.
///
/// Uses pivoted Gram-Schmidt against the standard basis: at each step the
/// coordinate vector with the largest residual is orthogonalized (twice) and
/// appended. Returns the `(N - r) x N` block of new rows; for `r = N` this is
/// the empty `0 x N` matrix.
pub fn orthonormal_complement(rows: &Matrix, tol: &Tolerances) -> Result<Matrix, NumericsError> {
    if !rows.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    let r = rows.rows();
    let n = rows.cols();
    if r > n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            found: r,
        });
    }
    let dev = orthonormality_defect(rows);
    if dev > tol.eq_abs {
        return Err(NumericsError::NotOrthonormal { deviation: dev });
    }

    let mut basis: Vec<Vec<f64>> = rows.row_vecs();
    let mut added: Vec<Vec<f64>> = Vec::with_capacity(n - r);
    let mut used = vec![false; n];
    for _ in r..n {
        let mut best: Option<(usize, Vec<f64>, f64)> = None;
        for (k, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            let resid = orthogonalize(&e, &basis);
            let len = norm(&resid);
            if best.as_ref().is_none_or(|(_, _, b)| len > *b) {
                best = Some((k, resid, len));
            }
        }
        let (k, resid, len) = best.expect("fewer basis vectors than dimension");
        if len <= f64::EPSILON {
            return Err(NumericsError::NotOrthonormal { deviation: 1.0 });
        }
        used[k] = true;
        let unit = scale(&resid, 1.0 / len);
        basis.push(unit.clone());
        added.push(unit);
    }

    let full = Matrix::from_rows(&basis)?;
    let dev = orthonormality_defect(&full);
    if dev > tol.certify_abs {
        return Err(NumericsError::NotOrthonormal { deviation: dev });
    }
    if added.is_empty() {
        Ok(Matrix::zeros(0, n))
    } else {
        Matrix::from_rows(&added)
    }
}

/// `max |G G^T - I|` over the rows of `g`.
pub fn orthonormality_defect(g: &Matrix) -> f64 {
    let gram = g.row_gram();
    gram.max_abs_diff(&Matrix::identity(g.rows())).unwrap_or(f64::INFINITY)
}

/// Two passes of modified Gram-Schmidt against an orthonormal list.
fn orthogonalize(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut out = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&out, b);
            out.iter_mut().zip(b).for_each(|(o, bi)| *o -= c * bi);
        }
    }
    out
}

/// Orthonormal basis of `span(vectors)` by pivoted Gram-Schmidt.
///
/// A candidate whose residual norm falls below `sqrt(rank_rel)` times the
/// largest input norm is treated as dependent.
pub fn orthonormal_basis<V: AsRef<[f64]>>(vectors: &[V], tol: &Tolerances) -> Vec<Vec<f64>> {
    let largest = vectors
        .iter()
        .map(|v| norm(v.as_ref()))
        .fold(0.0, f64::max);
    if largest == 0.0 {
        return Vec::new();
    }
    let cutoff = tol.singular_rel() * largest;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut remaining: Vec<Vec<f64>> = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
    loop {
        let mut best: Option<(usize, Vec<f64>, f64)> = None;
        for (k, v) in remaining.iter().enumerate() {
            let resid = orthogonalize(v, &basis);
            let len = norm(&resid);
            if best.as_ref().is_none_or(|(_, _, b)| len > *b) {
                best = Some((k, resid, len));
            }
        }
        match best {
            Some((k, resid, len)) if len > cutoff => {
                basis.push(scale(&resid, 1.0 / len));
                remaining.swap_remove(k);
            }
            _ => return basis,
        }
    }
}

/// Euclidean distance from `v` to `span(vectors)`.
pub fn distance_to_span<V: AsRef<[f64]>>(v: &[f64], vectors: &[V], tol: &Tolerances) -> f64 {
    let basis = orthonormal_basis(vectors, tol);
    norm(&orthogonalize(v, &basis))
}
