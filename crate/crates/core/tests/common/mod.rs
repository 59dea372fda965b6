//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use grassframe::constructions::{circular_frame, mub_r2, simplex_etf};
use grassframe::numerics::vector::{dot, normalized};
use grassframe::numerics::{orthonormal_basis, Matrix, Tolerances};
use grassframe::UnitVectorSystem;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        if let Some(v) = normalized(&gaussian(rng, n)) {
            return v;
        }
    }
}

pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let raw: Vec<Vec<f64>> = (0..n).map(|_| gaussian(rng, n)).collect();
        let basis = orthonormal_basis(&raw, &tol());
        if basis.len() == n {
            return Matrix::from_rows(&basis).unwrap();
        }
    }
}

pub fn random_system(rng: &mut ChaCha8Rng, m: usize, n: usize) -> UnitVectorSystem {
    let vs = (0..m).map(|_| random_unit(rng, n)).collect();
    UnitVectorSystem::new(n, vs, &tol()).unwrap()
}

/// Applies a random rotation, random sign flips and a random permutation.
/// None of these change which vectors are isolable.
pub fn scramble(rng: &mut ChaCha8Rng, x: &UnitVectorSystem) -> UnitVectorSystem {
    let q = random_orthogonal(rng, x.dim());
    let mut vs: Vec<Vec<f64>> = x
        .vectors()
        .iter()
        .map(|v| {
            let s = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
            q.mul_vec(v).unwrap().into_iter().map(|c| s * c).collect()
        })
        .collect();
    vs.shuffle(rng);
    UnitVectorSystem::new(x.dim(), vs, &tol()).unwrap()
}

/// `(0,0,1)` with three neighbors at `alpha`, two of them opposite; the
/// coherence is `alpha` for `alpha >= 1/2`.
pub fn worked_example(alpha: f64) -> UnitVectorSystem {
    let s = (1.0 - alpha * alpha).sqrt();
    UnitVectorSystem::new(
        3,
        vec![
            vec![0.0, 0.0, 1.0],
            vec![s, 0.0, alpha],
            vec![0.0, s, alpha],
            vec![0.0, -s, alpha],
        ],
        &tol(),
    )
    .unwrap()
}

pub fn basis_plus_diagonal() -> UnitVectorSystem {
    let d = 1.0 / 3f64.sqrt();
    UnitVectorSystem::new(
        3,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![d, d, d],
        ],
        &tol(),
    )
    .unwrap()
}

pub fn onb(n: usize) -> UnitVectorSystem {
    let vs = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    UnitVectorSystem::new(n, vs, &tol()).unwrap()
}

/// The six diagonals of the icosahedron: an equiangular tight frame in
/// `R^3` at angle `1/sqrt5`.
pub fn icosahedron_diagonals() -> UnitVectorSystem {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [0.0, 1.0, phi],
        [0.0, -1.0, phi],
        [1.0, phi, 0.0],
        [-1.0, phi, 0.0],
        [phi, 0.0, 1.0],
        [phi, 0.0, -1.0],
    ];
    let vs = raw.iter().map(|v| normalized(v).unwrap()).collect();
    UnitVectorSystem::new(3, vs, &tol()).unwrap()
}

/// A small system (`n <= 3`, `m <= 6`) drawn from a rotating list of
/// families with varied neighbor structure.
pub fn small_system(rng: &mut ChaCha8Rng, k: usize) -> UnitVectorSystem {
    let base = match k % 9 {
        0 => circular_frame(rng.random_range(3..=6)).unwrap(),
        1 => simplex_etf(rng.random_range(1..=3)).unwrap(),
        2 => worked_example(rng.random_range(0.5..0.9)),
        3 => basis_plus_diagonal(),
        4 => mub_r2(),
        5 => icosahedron_diagonals(),
        6 => {
            let n = rng.random_range(2..=3);
            let m = rng.random_range(n + 1..=6);
            random_system(rng, m, n)
        }
        7 => {
            // part of a structured frame plus one random vector
            let full = if rng.random_bool(0.5) {
                icosahedron_diagonals()
            } else {
                circular_frame(rng.random_range(4..=6)).unwrap()
            };
            let keep = rng.random_range(2..full.len());
            let mut vs: Vec<Vec<f64>> = full.vectors()[..keep].to_vec();
            vs.push(random_unit(rng, full.dim()));
            UnitVectorSystem::new(full.dim(), vs, &tol()).unwrap()
        }
        _ => {
            // the worked example with an extra vector below the coherence
            let mut vs = worked_example(0.5).vectors().to_vec();
            vs.push(normalized(&[0.83, 0.3, -0.46]).unwrap());
            UnitVectorSystem::new(3, vs, &tol()).unwrap()
        }
    };
    scramble(rng, &base)
}

/// Whether some sampled perturbation of `x_i` is below `coh(X) - margin`
/// against every other vector.
pub fn brute_force_improves(
    rng: &mut ChaCha8Rng,
    x: &UnitVectorSystem,
    i: usize,
    directions: usize,
    radii: &[f64],
    margin: f64,
) -> bool {
    let alpha = grassframe::frames::gram(x).coherence;
    let xi = x.vector(i);
    for _ in 0..directions {
        let v = random_unit(rng, x.dim());
        for &r in radii {
            let cand: Vec<f64> = xi.iter().zip(&v).map(|(a, b)| a + r * b).collect();
            let Some(cand) = normalized(&cand) else { continue };
            let ok = (0..x.len())
                .filter(|&j| j != i)
                .all(|j| dot(&cand, x.vector(j)).abs() < alpha - margin);
            if ok {
                return true;
            }
        }
    }
    false
}
