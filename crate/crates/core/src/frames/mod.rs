//! The frame model: unit-norm systems, their Gram matrix and coherence,
//! neighbor structure, the frame operator, tightness and ETF predicates, and
//! the Welch / orthoplex / Gerzon bounds.

mod bounds;
mod gram;
mod operator;
mod system;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use bounds::{
    bounds_card, gerzon_max, is_equiangular, is_etf, neighbor_count_report, orthoplex_bound,
    welch_bound, BoundsCard, Equiangularity, NeighborCountReport,
};
pub use gram::{gram, neighbors, GramMatrix, NeighborSet};
pub use operator::{frame_operator, reconstruct, spans, spectrum, tightness, TightnessVerdict};
pub use system::{UnitVectorSystem, RENORMALIZE_LIMIT};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("a system needs at least one vector")]
    Empty,
    #[error("vector {index} has {found} coordinates, expected {expected}")]
    Shape {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("vector {index} has norm {norm}, too far from 1 to renormalize")]
    Norm { index: usize, norm: f64 },
    #[error("{labels} labels given for {vectors} vectors")]
    LabelCount { vectors: usize, labels: usize },
    #[error("index {index} out of range for {len} vectors")]
    Index { index: usize, len: usize },
    #[error("the vectors do not span the space")]
    NotAFrame,
    #[error("inconsistent verdict: {detail}")]
    InconsistentVerdict { detail: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Tolerances;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn onb(n: usize) -> UnitVectorSystem {
        let vs = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        UnitVectorSystem::new(n, vs, &tol()).unwrap()
    }

    fn six() -> UnitVectorSystem {
        let a = 1.0 / 3f64.sqrt();
        let b = (2.0f64 / 3.0).sqrt();
        UnitVectorSystem::new(
            4,
            vec![
                vec![a, b, 0.0, 0.0],
                vec![a, -b, 0.0, 0.0],
                vec![a, 0.0, b, 0.0],
                vec![a, 0.0, -b, 0.0],
                vec![a, 0.0, 0.0, b],
                vec![a, 0.0, 0.0, -b],
            ],
            &tol(),
        )
        .unwrap()
    }

    fn circular(m: usize) -> UnitVectorSystem {
        let vs = (1..=m)
            .map(|k| {
                let t = k as f64 * std::f64::consts::PI / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        UnitVectorSystem::new(2, vs, &tol()).unwrap()
    }

    fn mub() -> UnitVectorSystem {
        let h = 0.5f64.sqrt();
        UnitVectorSystem::new(
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![h, h], vec![h, -h]],
            &tol(),
        )
        .unwrap()
    }

    fn section3(alpha: f64) -> UnitVectorSystem {
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

    #[test]
    fn gram_of_basis_is_identity() {
        let g = gram(&onb(3));
        assert_eq!(g.entries, crate::numerics::Matrix::identity(3));
        assert_eq!(g.coherence, 0.0);
    }

    #[test]
    fn gram_coherence_golden_values() {
        let g = gram(&six());
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!((g.entries[(i, j)].abs() - 1.0 / 3.0).abs() < 1e-15);
                }
            }
        }
        assert!((g.coherence - 1.0 / 3.0).abs() < 1e-12);
        let c5 = gram(&circular(5)).coherence;
        assert!((c5 - (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert!((c5 - 0.8090169944).abs() < 1e-10);
    }

    #[test]
    fn neighbor_sets() {
        let x = section3(0.5);
        let n = neighbors(&x, 0, 0.5, &tol());
        assert_eq!(n.members, vec![1, 2, 3]);
        assert_eq!(n.signs, vec![1.0, 1.0, 1.0]);
        let n = neighbors(&onb(4), 2, 0.0, &tol());
        assert_eq!(n.members, vec![0, 1, 3]);
        let n = neighbors(&six(), 0, 1.0 / 3.0, &tol());
        assert_eq!(n.members, vec![1, 2, 3, 4, 5]);
        assert_eq!(n.signs, vec![-1.0, 1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn frame_operators() {
        assert_eq!(frame_operator(&onb(3)), crate::numerics::Matrix::identity(3));
        let s = frame_operator(&six());
        let want = [2.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
        for i in 0..4 {
            for j in 0..4 {
                let w = if i == j { want[i] } else { 0.0 };
                assert!((s[(i, j)] - w).abs() < 1e-14);
            }
        }
        let s = frame_operator(&circular(5));
        assert!((s[(0, 0)] - 2.5).abs() < 1e-14);
        assert!((s[(1, 1)] - 2.5).abs() < 1e-14);
        assert!(s[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn spectrum_of_six_in_r4() {
        let spec = spectrum(&six(), &tol()).unwrap();
        let want = [2.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
        for (got, want) in spec.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-13);
        }
        assert_eq!(spec.top_multiplicity, 1);
        let sum: f64 = spec.eigenvalues.iter().sum();
        assert!((sum - 6.0).abs() < 1e-8 * 6.0);
    }

    #[test]
    fn drop_one_spanning() {
        let x = six();
        for j in 0..6 {
            assert!(spans(&x, &[j], &tol()).unwrap());
        }
        assert!(!spans(&x, &[0, 1], &tol()).unwrap());
        let rows = x.as_rows().select_rows(&[2, 3, 4, 5]);
        assert_eq!(crate::numerics::rank_of(&rows, &tol()).unwrap(), 3);
        assert!(!spans(&onb(3), &[0], &tol()).unwrap());
        assert!(spans(&onb(1), &[0], &tol()).is_err());
    }

    #[test]
    fn tightness_verdicts() {
        assert_eq!(tightness(&onb(3), &tol()), TightnessVerdict::Parseval);
        assert_eq!(tightness(&circular(5), &tol()), TightnessVerdict::Tight(2.5));
        assert_eq!(tightness(&six(), &tol()), TightnessVerdict::NotTight);
        assert_eq!(tightness(&mub(), &tol()), TightnessVerdict::Tight(2.0));
    }

    #[test]
    fn equiangularity() {
        let e = is_equiangular(&six(), &tol());
        assert!(e.equiangular);
        assert!((e.angle - 1.0 / 3.0).abs() < 1e-15);
        let e = is_equiangular(&onb(3), &tol());
        assert!(e.equiangular && e.angle == 0.0);
        let d = 1.0 / 3f64.sqrt();
        let mut vs = onb(3).vectors().to_vec();
        vs.push(vec![d, d, d]);
        let x = UnitVectorSystem::new(3, vs, &tol()).unwrap();
        assert!(!is_equiangular(&x, &tol()).equiangular);
    }

    #[test]
    fn etf_predicate() {
        let t = -1.0 / 3.0;
        // tetrahedron Gram with entries -1/3, built from explicit coordinates
        let s = 1.0 / 3f64.sqrt();
        let tetra = UnitVectorSystem::new(
            3,
            vec![
                vec![s, s, s],
                vec![s, -s, -s],
                vec![-s, s, -s],
                vec![-s, -s, s],
            ],
            &tol(),
        )
        .unwrap();
        let g = gram(&tetra);
        assert!((g.entries[(0, 1)] - t).abs() < 1e-15);
        assert!(is_etf(&tetra, &tol()).unwrap());
        assert!((g.coherence - welch_bound(4, 3).unwrap()).abs() < 1e-9);
        assert!(!is_etf(&six(), &tol()).unwrap());
        assert!(is_etf(&onb(3), &tol()).unwrap());
        assert!(is_etf(&circular(3), &tol()).unwrap());
    }

    #[test]
    fn bounds() {
        assert!((welch_bound(6, 4).unwrap() - 0.1f64.sqrt()).abs() < 1e-15);
        assert!((welch_bound(6, 4).unwrap() - 0.3162277660).abs() < 1e-10);
        assert!((welch_bound(4, 3).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(welch_bound(3, 3), None);
        assert_eq!(gerzon_max(3), 6);
        assert!((orthoplex_bound(3) - 0.5773502692).abs() < 1e-10);
        let card = bounds_card(&six(), &tol());
        assert_eq!(card.meets_welch, Some(false));
        assert!(!card.exceeds_gerzon);
        let card = bounds_card(&onb(2), &tol());
        assert_eq!(card.welch, None);
        assert_eq!(card.meets_welch, None);
    }

    #[test]
    fn reconstruction() {
        let target = [0.3, -1.2, 2.0];
        let r = reconstruct(&onb(3), &target, &tol()).unwrap();
        assert!(crate::numerics::vector::max_abs_diff(&r, &target) < 1e-15);
        let r = reconstruct(&circular(5), &[1.0, 0.0], &tol()).unwrap();
        assert!((r[0] - 1.0).abs() < 1e-14 && r[1].abs() < 1e-14);
        let target = [0.7, -0.1, 0.25, 1.5];
        let r = reconstruct(&six(), &target, &tol()).unwrap();
        assert!(crate::numerics::vector::max_abs_diff(&r, &target) < 1e-7);
        let x = onb(3).restrict(&[0, 1]).unwrap();
        assert!(matches!(reconstruct(&x, &target[..3], &tol()), Err(FrameError::NotAFrame)));
    }

    #[test]
    fn neighbor_counts() {
        let r = neighbor_count_report(&six(), &tol());
        assert_eq!(r.counts, vec![5; 6]);
        assert_eq!(r.status, crate::diagnostic::DiagnosticStatus::Skip);
        let r = neighbor_count_report(&onb(3), &tol());
        assert_eq!(r.counts, vec![2; 3]);
        let r = neighbor_count_report(&mub(), &tol());
        assert_eq!(r.counts, vec![2; 4]);
        assert_eq!(r.status, crate::diagnostic::DiagnosticStatus::Pass);
        let r = neighbor_count_report(&circular(5), &tol());
        assert_eq!(r.counts, vec![2; 5]);
        assert_eq!(r.status, crate::diagnostic::DiagnosticStatus::Pass);
    }
}
