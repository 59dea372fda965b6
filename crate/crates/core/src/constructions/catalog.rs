use std::f64::consts::PI;

use super::ConstructionError;
use crate::frames::UnitVectorSystem;
use crate::numerics::{orthonormal_complement, Matrix, Tolerances};

/// `m` equally spaced lines in the plane: `(cos k pi/m, sin k pi/m)`,
/// `k = 1..m`. Tight with bound `m/2`, coherence `cos(pi/m)`.
pub fn circular_frame(m: usize) -> Result<UnitVectorSystem, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::InvalidParameter {
            name: "m",
            value: m,
            min: 2,
        });
    }
    let vectors = (1..=m)
        .map(|k| {
            let t = k as f64 * PI / m as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    Ok(UnitVectorSystem::from_unnormalized(2, vectors)?)
}

/// Six vectors in `R^4`, pairwise at `1/3`: `(1, +-sqrt2 e_j) / sqrt3` for
/// `j = 1, 2, 3`.
pub fn six_in_r4() -> UnitVectorSystem {
    let a = 1.0 / 3f64.sqrt();
    let b = (2.0f64 / 3.0).sqrt();
    let mut vectors = Vec::with_capacity(6);
    for j in 1..4 {
        for s in [b, -b] {
            let mut v = vec![a, 0.0, 0.0, 0.0];
            v[j] = s;
            vectors.push(v);
        }
    }
    UnitVectorSystem::from_unnormalized(4, vectors).expect("fixed construction")
}

/// The standard basis of `R^2` together with the Hadamard basis.
pub fn mub_r2() -> UnitVectorSystem {
    let h = 0.5f64.sqrt();
    UnitVectorSystem::from_unnormalized(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![h, h], vec![h, -h]])
        .expect("fixed construction")
}

/// `n + 1` vectors in `R^n` with pairwise inner products `-1/n`: the
/// standard basis of `R^{n+1}` projected onto the complement of the
/// all-ones vector, normalized and written in an orthonormal basis of that
/// complement.
pub fn simplex_etf(n: usize) -> Result<UnitVectorSystem, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::InvalidParameter {
            name: "n",
            value: n,
            min: 1,
        });
    }
    let ones = vec![1.0 / ((n + 1) as f64).sqrt(); n + 1];
    let basis = orthonormal_complement(&Matrix::from_rows(&[ones])?, &Tolerances::default())?;
    let vectors = (0..=n).map(|i| basis.column(i)).collect();
    Ok(UnitVectorSystem::from_unnormalized(n, vectors)?)
}
