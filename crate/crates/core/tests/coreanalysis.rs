mod common;

use common::*;
use grassframe::constructions::{circular_frame, mub_r2, simplex_etf, six_in_r4};
use grassframe::coreanalysis::*;
use grassframe::frames::gram;
use grassframe::numerics::vector::{dot, norm};
use grassframe::{DiagnosticStatus, UnitVectorSystem};

#[test]
fn isolable_sets_of_reference_systems() {
    let t = tol();
    assert!(isolable_set(&onb(3), &t).unwrap().isolable.is_empty());
    assert_eq!(isolable_set(&basis_plus_diagonal(), &t).unwrap().isolable, vec![0, 1, 2]);
    for n in 2..=5 {
        assert!(isolable_set(&simplex_etf(n).unwrap(), &t).unwrap().isolable.is_empty());
    }
    assert!(isolable_set(&six_in_r4(), &t).unwrap().isolable.is_empty());
    assert!(isolable_set(&icosahedron_diagonals(), &t).unwrap().isolable.is_empty());
}

#[test]
fn worked_example_across_angles() {
    let t = tol();
    // below 1/2 the two opposite neighbors set the coherence instead
    for k in 10..20 {
        let alpha = k as f64 / 20.0;
        let x = worked_example(alpha);
        let v = classify_vector(&x, 0, &t).unwrap();
        assert_eq!(v.status, VectorStatus::Isolable, "alpha = {alpha}");
        assert_eq!(v.decided_by, DecisionStage::ConeTest);
        let xp = perturb_replace(&x, 0, v.witness.as_ref().unwrap(), &t).unwrap();
        for y in &x.vectors()[1..] {
            assert!(dot(&xp, y).abs() < alpha - 1e-9);
        }
    }
}

#[test]
fn deficient_replacement() {
    let t = tol();
    let x = basis_plus_diagonal();
    let alpha = 1.0 / 3f64.sqrt();
    let v = classify_vector(&x, 0, &t).unwrap();
    let w = v.witness.unwrap();
    assert!(dot(&w, x.vector(0)).abs() < 1e-8 && (norm(&w) - 1.0).abs() < 1e-8);
    let xp = perturb_replace(&x, 0, &w, &t).unwrap();
    for y in &x.vectors()[1..] {
        assert!(dot(&xp, y).abs() < alpha);
    }
}

#[test]
fn replace_all_on_reference_systems() {
    let t = tol();
    let x = basis_plus_diagonal();
    let alpha = 1.0 / 3f64.sqrt();
    let r = replace_all_isolable(&x, &t).unwrap();
    assert_eq!(r.replaced, vec![0, 1, 2]);
    for &i in &r.replaced {
        for j in 0..4 {
            if j != i {
                assert!(dot(r.system.vector(i), r.system.vector(j)).abs() < alpha);
            }
        }
        assert_eq!(classify_vector(&r.system, i, &t).unwrap().level, r.coherence_after);
    }
    // {d} alone has coherence 0, unlike the replaced system
    assert_eq!(r.diagnostic.status, DiagnosticStatus::FailedDiagnostic);

    let r = replace_all_isolable(&onb(3), &t).unwrap();
    assert!(r.replaced.is_empty());
    assert_eq!(r.system, onb(3));
    let s = simplex_etf(3).unwrap();
    let r = replace_all_isolable(&s, &t).unwrap();
    assert!(r.replaced.is_empty());
    assert_eq!(r.system, s);
}

#[test]
fn replaced_vectors_become_isolated() {
    // isolable vectors next to a core that keeps the coherence
    let t = tol();
    let mut vs = icosahedron_diagonals().vectors()[..4].to_vec();
    let mut rng = rng(5);
    for _ in 0..2 {
        vs.push(random_unit(&mut rng, 3));
    }
    let x = UnitVectorSystem::new(3, vs, &t).unwrap();
    let r = replace_all_isolable(&x, &t).unwrap();
    let alpha = gram(&x).coherence;
    for &i in &r.replaced {
        let worst = (0..x.len())
            .filter(|&j| j != i)
            .map(|j| dot(r.system.vector(i), r.system.vector(j)).abs())
            .fold(0.0, f64::max);
        assert!(worst < alpha);
    }
}

#[test]
fn core_of_reference_systems() {
    let t = tol();
    let c = core(&onb(4), &t).unwrap();
    assert_eq!(c.core, vec![0, 1, 2, 3]);
    for n in 2..=6 {
        let c = core(&simplex_etf(n).unwrap(), &t).unwrap();
        assert_eq!(c.core, (0..=n).collect::<Vec<_>>());
    }
    let c = core(&six_in_r4(), &t).unwrap();
    assert_eq!(c.levels.len(), 1);
    assert_eq!(c.core.len(), 6);

    let c = core(&basis_plus_diagonal(), &t).unwrap();
    assert_eq!(c.core, vec![3]);
    assert_eq!(c.levels.len(), 2);
    assert_eq!(c.levels[0].isolable, vec![0, 1, 2]);
    assert_eq!(c.levels[1].members, vec![3]);
    assert!(c.levels[1].isolable.is_empty());
    assert_eq!(c.levels[1].coherence, 0.0);
    assert!(c
        .warnings
        .iter()
        .any(|w| matches!(w, CoreWarning::CoherenceShift { level: 1, .. })));
}

#[test]
fn core_can_empty_out() {
    let t = tol();
    let x = UnitVectorSystem::new(2, vec![vec![1.0, 0.0], vec![0.6, 0.8]], &t).unwrap();
    let c = core(&x, &t).unwrap();
    assert!(c.core.is_empty());
    assert!(c
        .warnings
        .iter()
        .any(|w| matches!(w, CoreWarning::NotGrassmannianEvidence { .. })));
}

#[test]
fn core_validation() {
    let t = tol();
    let x = six_in_r4();
    let v = validate_core(&x, &core(&x, &t).unwrap(), &t).unwrap();
    assert_eq!(v.status, DiagnosticStatus::Pass);
    assert!(v.spanning.iter().all(|s| s.rank == 4));

    let x = basis_plus_diagonal();
    let v = validate_core(&x, &core(&x, &t).unwrap(), &t).unwrap();
    assert_eq!(v.size.status, DiagnosticStatus::FailedDiagnostic);
    assert!(v.size.detail.contains("not Grassmannian"));

    let x = onb(3);
    let v = validate_core(&x, &core(&x, &t).unwrap(), &t).unwrap();
    assert_eq!(v.status, DiagnosticStatus::Pass);
    assert!(v.spanning.is_empty());

    let x = circular_frame(4).unwrap();
    let v = validate_core(&x, &core(&x, &t).unwrap(), &t).unwrap();
    assert_eq!(v.status, DiagnosticStatus::Pass);
}

#[test]
fn n_plus_2_dichotomy() {
    let t = tol();
    assert_eq!(classify_n_plus_2(&six_in_r4(), &t).unwrap().verdict, DichotomyVerdict::FullCore);
    assert_eq!(
        classify_n_plus_2(&circular_frame(4).unwrap(), &t).unwrap().verdict,
        DichotomyVerdict::FullCore
    );
    assert_eq!(classify_n_plus_2(&onb(3), &t).unwrap().verdict, DichotomyVerdict::Inapplicable);

    // four generic lines in the plane shed vectors down to a single one
    let x = random_system(&mut rng(3), 4, 2);
    let r = classify_n_plus_2(&x, &t).unwrap();
    match r.verdict {
        DichotomyVerdict::Unresolved { core } => assert!(core.len() < 3),
        other => panic!("unexpected {other:?}"),
    }
    assert!(r
        .warnings
        .iter()
        .any(|w| matches!(w, CoreWarning::NotGrassmannianEvidence { .. })));
}

#[test]
fn tight_grassmannian_reporting() {
    let t = tol();
    assert_eq!(tight_grassmannian_diagnostic(&six_in_r4(), true, &t).status, DiagnosticStatus::Skip);
    assert_eq!(tight_grassmannian_diagnostic(&mub_r2(), true, &t).status, DiagnosticStatus::Skip);
    // a unit-norm tight frame of five vectors in R^3
    let tight5 = grassframe::constructions::naimark_complement(&circular_frame(5).unwrap(), &t)
        .unwrap()
        .system;
    assert_eq!(tight5.len(), 5);
    assert!(grassframe::frames::tightness(&tight5, &t).is_tight());
    assert_eq!(
        tight_grassmannian_diagnostic(&tight5, true, &t).status,
        DiagnosticStatus::FailedDiagnostic
    );
    assert_eq!(tight_grassmannian_diagnostic(&tight5, false, &t).status, DiagnosticStatus::Pass);
}

#[test]
fn eigen_span_reporting() {
    let t = tol();
    let r = eigen_span_diagnostic(&six_in_r4(), &t).unwrap();
    assert_eq!(r.status, DiagnosticStatus::Pass);
    assert!(r.max_distance < 1e-12);
    let r = eigen_span_diagnostic(&circular_frame(5).unwrap(), &t).unwrap();
    assert_eq!(r.status, DiagnosticStatus::Ambiguous);
    assert_eq!(r.top_multiplicity, 2);
    assert_eq!(r.distances.len(), 2);
    assert_eq!(eigen_span_diagnostic(&onb(3), &t).unwrap().status, DiagnosticStatus::Skip);
}

#[test]
fn verdict_invariants_on_seeded_systems() {
    let t = tol();
    let mut rng = rng(11);
    for k in 0..60 {
        let x = small_system(&mut rng, k);
        let alpha = gram(&x).coherence;
        for i in 0..x.len() {
            let v = classify_vector(&x, i, &t).unwrap();
            if v.status == VectorStatus::Isolated {
                assert!(v.neighbors.is_empty());
            }
            if v.status == VectorStatus::DeficientIsolable {
                assert!(v.neighbor_span_rank < x.dim());
            }
            if alpha > t.eq_abs && v.neighbors.is_empty() {
                assert_ne!(v.status, VectorStatus::NotIsolable);
            }
            if let Some(w) = &v.witness {
                assert!((norm(w) - 1.0).abs() <= 1e-8);
                assert!(dot(w, x.vector(i)).abs() <= 1e-8);
            }
            if let Some(c) = &v.certificate {
                assert!(c.iter().all(|&ci| ci >= 0.0));
                assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn constructive_soundness_on_seeded_systems() {
    let t = tol();
    let mut rng = rng(23);
    let mut seen = [0usize; 2];
    for k in 0..45 {
        let x = small_system(&mut rng, k);
        let alpha = gram(&x).coherence;
        for i in 0..x.len() {
            let v = classify_vector(&x, i, &t).unwrap();
            if v.status.is_isolable() {
                seen[0] += 1;
                let xp = perturb_replace(&x, i, v.witness.as_ref().unwrap(), &t).unwrap();
                assert!((norm(&xp) - 1.0).abs() < 1e-12);
                for j in (0..x.len()).filter(|&j| j != i) {
                    assert!(dot(&xp, x.vector(j)).abs() < alpha);
                }
            } else if v.status == VectorStatus::NotIsolable && alpha > t.eq_abs {
                seen[1] += 1;
                assert!(
                    !brute_force_improves(&mut rng, &x, i, 10_000, &[1e-2, 1e-3], 1e-9),
                    "system {k}, vector {i}"
                );
            }
        }
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

#[test]
fn core_is_idempotent_and_chain_is_monotone() {
    let t = tol();
    let mut rng = rng(31);
    for k in 0..40 {
        let x = small_system(&mut rng, k);
        let trace = core(&x, &t).unwrap();
        assert!(trace.levels.len() <= x.len() + 1);
        for pair in trace.levels.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(b.members.len() < a.members.len());
            let expect: Vec<usize> = a.members.iter().copied().filter(|i| !a.isolable.contains(i)).collect();
            assert_eq!(b.members, expect);
        }
        if !trace.core.is_empty() {
            let sub = x.restrict(&trace.core).unwrap();
            let again = core(&sub, &t).unwrap();
            assert_eq!(again.core, (0..sub.len()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn core_contains_every_isolable_free_subset_at_the_same_level() {
    let t = tol();
    let mut rng = rng(37);
    let mut checked = 0;
    for k in 0..30 {
        let x = small_system(&mut rng, k);
        let alpha = gram(&x).coherence;
        let c = core(&x, &t).unwrap().core;
        let m = x.len();
        for mask in 1u32..(1 << m) {
            let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let y = x.restrict(&idx).unwrap();
            if (gram(&y).coherence - alpha).abs() > t.neighbor_abs {
                continue;
            }
            let set = isolable_set(&y, &t).unwrap();
            if set.isolable.is_empty() && set.indeterminate.is_empty() {
                checked += 1;
                assert!(idx.iter().all(|i| c.contains(i)), "system {k}: {idx:?} not in core {c:?}");
            }
        }
    }
    assert!(checked > 30);
}
