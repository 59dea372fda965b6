//! Invariants and diagnostics run against a single system by `check`.
//!
//! Invariants hold for every unit-norm system, so a failure means a bug or
//! a tolerance set too tight. Diagnostics encode properties of Grassmannian
//! frames; their failures only count under `--grassmannian`.

use grassframe::constructions::{angle_catalog, double, naimark_complement, AngleKind, ConstructionError};
use grassframe::coreanalysis::{
    classify_n_plus_2, core, eigen_span_diagnostic, isolable_set, perturb_replace, perturbation_margin,
    replace_all_isolable, tight_grassmannian_diagnostic, validate_core, CoreError, DichotomyVerdict,
    IsolableSet, VectorStatus,
};
use grassframe::frames::{
    frame_operator, gram, is_etf, neighbor_count_report, reconstruct, spans, spectrum, tightness, welch_bound,
    FrameError,
};
use grassframe::numerics::vector::{dot, max_abs_diff, norm, normalized};
use grassframe::{DiagnosticStatus, Tolerances, UnitVectorSystem};
use serde::Serialize;

use crate::report::drop_one_spanning;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
    Ambiguous,
    FailedDiagnostic,
}

impl CheckStatus {
    fn from_diagnostic(s: DiagnosticStatus) -> Self {
        match s {
            DiagnosticStatus::Pass => CheckStatus::Pass,
            DiagnosticStatus::Skip => CheckStatus::Skip,
            DiagnosticStatus::Ambiguous => CheckStatus::Ambiguous,
            DiagnosticStatus::FailedDiagnostic => CheckStatus::FailedDiagnostic,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
            CheckStatus::Ambiguous => "AMBIGUOUS",
            CheckStatus::FailedDiagnostic => "FAILED-DIAGNOSTIC",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Invariant,
    Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub kind: CheckKind,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub source: String,
    pub m: usize,
    pub n: usize,
    pub tolerances: Tolerances,
    pub grassmannian: bool,
    pub checks: Vec<CheckResult>,
    pub failed: usize,
}

type Outcome = (CheckStatus, String);

fn pass(detail: impl Into<String>) -> Outcome {
    (CheckStatus::Pass, detail.into())
}

fn fail(detail: impl Into<String>) -> Outcome {
    (CheckStatus::Fail, detail.into())
}

fn skip(detail: impl Into<String>) -> Outcome {
    (CheckStatus::Skip, detail.into())
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

/// Errors from a check body: numerical ones make the check ambiguous, any
/// other is a failure.
#[derive(Debug)]
struct CheckError {
    numerical: bool,
    message: String,
}

impl From<CoreError> for CheckError {
    fn from(e: CoreError) -> Self {
        Self {
            numerical: e.is_numerical(),
            message: e.to_string(),
        }
    }
}

impl From<FrameError> for CheckError {
    fn from(e: FrameError) -> Self {
        CoreError::from(e).into()
    }
}

impl From<ConstructionError> for CheckError {
    fn from(e: ConstructionError) -> Self {
        Self {
            numerical: e.is_numerical(),
            message: e.to_string(),
        }
    }
}

struct Suite {
    results: Vec<CheckResult>,
}

impl Suite {
    fn run(&mut self, name: &'static str, kind: CheckKind, body: impl FnOnce() -> Result<Outcome, CheckError>) {
        let (status, detail) = match body() {
            Ok(o) => o,
            Err(e) if e.numerical => (CheckStatus::Ambiguous, e.message),
            Err(e) => (CheckStatus::Fail, e.message),
        };
        self.results.push(CheckResult {
            name,
            kind,
            status,
            detail,
        });
    }
}

/// A fixed orthogonal change of coordinates (a Householder reflection),
/// sign flips on odd positions and reversed order.
fn relabel(x: &UnitVectorSystem, tol: &Tolerances) -> Result<UnitVectorSystem, FrameError> {
    let n = x.dim();
    let axis = normalized(&(1..=n).map(|k| k as f64).collect::<Vec<_>>()).expect("nonzero");
    let vs = x
        .vectors()
        .iter()
        .enumerate()
        .rev()
        .map(|(i, v)| {
            let s = if i % 2 == 1 { -1.0 } else { 1.0 };
            let c = 2.0 * dot(&axis, v);
            v.iter().zip(&axis).map(|(vi, ai)| s * (vi - c * ai)).collect()
        })
        .collect();
    UnitVectorSystem::new(n, vs, tol)
}

/// Runs the suite. `grassmannian` makes diagnostic failures count.
pub fn run_checks(source: &str, x: &UnitVectorSystem, tol: &Tolerances, grassmannian: bool) -> CheckReport {
    let (m, n) = (x.len(), x.dim());
    let g = gram(x);
    let alpha = g.coherence;
    let mut s = Suite { results: Vec::new() };
    let set: Result<IsolableSet, CoreError> = isolable_set(x, tol);

    s.run("coherence-range", CheckKind::Invariant, || {
        Ok(verdict((0.0..=1.0 + 1e-12).contains(&alpha), format!("coherence {alpha}")))
    });
    s.run("coherence-invariance", CheckKind::Invariant, || {
        let other = gram(&relabel(x, tol)?).coherence;
        Ok(verdict(
            (other - alpha).abs() <= 1e-9,
            format!("after rotation, sign flips and reordering: {other}"),
        ))
    });
    s.run("frame-operator-trace", CheckKind::Invariant, || {
        let tr = frame_operator(x).trace();
        Ok(verdict((tr - m as f64).abs() <= 1e-8 * m as f64, format!("trace {tr}, m = {m}")))
    });
    s.run("welch-bound", CheckKind::Invariant, || {
        if m <= n || !spans(x, &[], tol)? {
            return Ok(skip("applies to spanning systems with m > n"));
        }
        let w = welch_bound(m, n).expect("m > n");
        Ok(verdict(alpha >= w - 1e-9, format!("coherence {alpha} vs welch {w}")))
    });
    s.run("catalog-lower-bound", CheckKind::Invariant, || {
        let tight = tightness(x, tol).is_tight();
        let relevant: Vec<_> = angle_catalog(m, n)
            .into_iter()
            .filter(|e| e.kind == AngleKind::GrassmannianAlpha || tight)
            .collect();
        if relevant.is_empty() {
            return Ok(skip("no catalog angle applies"));
        }
        let worst = relevant.iter().map(|e| e.value).fold(0.0f64, f64::max);
        Ok(verdict(
            alpha >= worst - 1e-9,
            format!("coherence {alpha} vs catalog angle {worst}"),
        ))
    });
    s.run("tight-bound", CheckKind::Invariant, || {
        Ok(match tightness(x, tol).bound() {
            None => skip("not tight"),
            Some(a) => {
                let want = m as f64 / n as f64;
                verdict((a - want).abs() <= 1e-8, format!("A = {a}, m/n = {want}"))
            }
        })
    });
    s.run("etf-routes-agree", CheckKind::Invariant, || {
        let etf = is_etf(x, tol)?;
        Ok(pass(format!("tight+equiangular and welch equality agree (etf: {etf})")))
    });
    s.run("full-neighbors-imply-etf", CheckKind::Invariant, || {
        if !tightness(x, tol).is_tight() || m < 2 {
            return Ok(skip("applies to tight systems"));
        }
        let full = (0..m).find(|&i| g.neighbors(i, alpha, tol).len() == m - 1);
        Ok(match full {
            None => skip("no vector has every other vector as a neighbor"),
            Some(i) => verdict(is_etf(x, tol)?, format!("vector {i} has m - 1 neighbors")),
        })
    });
    s.run("reconstruction", CheckKind::Invariant, || {
        if !spans(x, &[], tol)? {
            return Ok(skip("system does not span"));
        }
        let target: Vec<f64> = (0..n).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let back = reconstruct(x, &target, tol)?;
        let err = max_abs_diff(&back, &target);
        Ok(verdict(err <= 1e-8, format!("max error {err:.3e}")))
    });
    s.run("verdict-consistency", CheckKind::Invariant, || {
        let set = set.clone()?;
        let mut problems = Vec::new();
        for v in &set.verdicts {
            let i = v.index;
            match v.status {
                VectorStatus::Isolated if !v.neighbors.is_empty() => {
                    problems.push(format!("vector {i} isolated with neighbors"))
                }
                VectorStatus::DeficientIsolable if v.neighbor_span_rank >= n => {
                    problems.push(format!("vector {i} deficient with neighbor rank {}", v.neighbor_span_rank))
                }
                VectorStatus::NotIsolable if alpha > tol.eq_abs => {
                    if v.neighbors.is_empty() {
                        problems.push(format!("vector {i} not isolable without neighbors"));
                    }
                    if let Some(c) = &v.certificate {
                        let sum: f64 = c.iter().sum();
                        if c.iter().any(|&w| w < -tol.hull_abs) || (sum - 1.0).abs() > 1e-8 {
                            problems.push(format!("vector {i} certificate is not a convex combination"));
                        }
                    }
                }
                _ => {}
            }
            if let Some(w) = &v.witness {
                if (norm(w) - 1.0).abs() > tol.certify_abs || dot(w, x.vector(i)).abs() > tol.certify_abs {
                    problems.push(format!("vector {i} witness is not a unit vector orthogonal to it"));
                }
            }
        }
        Ok(if problems.is_empty() {
            pass(format!("{m} verdicts consistent"))
        } else {
            fail(problems.join("; "))
        })
    });
    s.run("constructive-isolability", CheckKind::Invariant, || {
        let set = set.clone()?;
        let mut confirmed = 0;
        for v in &set.verdicts {
            let Some(w) = v.witness.as_ref().filter(|_| v.status.is_isolable()) else { continue };
            let x_new = perturb_replace(x, v.index, w, tol)?;
            let worst = (0..m)
                .filter(|&j| j != v.index)
                .map(|j| dot(&x_new, x.vector(j)).abs())
                .fold(0.0f64, f64::max);
            if worst >= alpha - perturbation_margin(alpha) {
                return Ok(fail(format!("vector {}: replacement reaches {worst}", v.index)));
            }
            confirmed += 1;
        }
        Ok(if set.indeterminate.is_empty() {
            pass(format!("{confirmed} isolable verdicts confirmed"))
        } else {
            (
                CheckStatus::Ambiguous,
                format!("indeterminate vectors {:?}", set.indeterminate),
            )
        })
    });
    s.run("core-chain", CheckKind::Invariant, || {
        let trace = core(x, tol)?;
        let mut ok = true;
        for pair in trace.levels.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            ok &= b.members.len() < a.members.len() && b.members.iter().all(|i| a.members.contains(i));
            ok &= b.coherence <= a.coherence + tol.eq_abs;
        }
        ok &= trace.levels.last().is_some_and(|l| l.isolable.is_empty() || trace.core.is_empty());
        Ok(verdict(
            ok,
            format!("{} levels, core of {}", trace.levels.len(), trace.core.len()),
        ))
    });
    s.run("core-idempotence", CheckKind::Invariant, || {
        let trace = core(x, tol)?;
        if trace.core.is_empty() {
            return Ok(skip("empty core"));
        }
        let again = core(&x.restrict(&trace.core)?, tol)?;
        Ok(verdict(
            again.core.len() == trace.core.len(),
            format!("core of the core has {} of {} vectors", again.core.len(), trace.core.len()),
        ))
    });
    s.run("naimark-gram-relation", CheckKind::Invariant, || {
        let lambda = spectrum(x, tol)?.largest();
        if lambda <= 1.0 + 1e-6 {
            return Ok(skip(format!("largest eigenvalue {lambda} is not above 1")));
        }
        let y = match naimark_complement(x, tol) {
            Err(ConstructionError::DegenerateComplement { .. }) => return Ok(skip("complement is empty")),
            r => r?,
        };
        let mut worst = 0.0f64;
        for i in 0..m {
            worst = worst.max((norm(y.system.vector(i)) - 1.0).abs());
            for j in 0..m {
                if i != j {
                    let lhs = dot(y.system.vector(i), y.system.vector(j)) * (1.0 - y.lambda);
                    worst = worst.max((lhs - g.entries[(i, j)]).abs());
                }
            }
        }
        Ok(verdict(worst <= 1e-8, format!("max deviation {worst:.3e}")))
    });
    s.run("doubling-identities", CheckKind::Invariant, || {
        let d = double(x, tol)?;
        let mut ok = d.len() == 2 * m && d.dim() == 2 * n;
        ok &= tightness(&d, tol) == tightness(x, tol);
        if m >= 2 {
            ok &= (gram(&d).coherence - alpha).abs() <= 1e-12;
        }
        Ok(verdict(ok, format!("doubled system: {} vectors in R^{}", d.len(), d.dim())))
    });

    let diag = |st: DiagnosticStatus, detail: String| -> Result<Outcome, CheckError> {
        Ok((CheckStatus::from_diagnostic(st), detail))
    };
    s.run("core-validation", CheckKind::Diagnostic, || {
        let v = validate_core(x, &core(x, tol)?, tol)?;
        diag(v.status, v.size.detail)
    });
    s.run("neighbor-counts", CheckKind::Diagnostic, || {
        let r = neighbor_count_report(x, tol);
        diag(r.status, r.detail)
    });
    s.run("eigen-span", CheckKind::Diagnostic, || {
        let r = eigen_span_diagnostic(x, tol)?;
        diag(r.status, r.detail)
    });
    s.run("tight-grassmannian", CheckKind::Diagnostic, || {
        let d = tight_grassmannian_diagnostic(x, grassmannian, tol);
        diag(d.status, d.detail)
    });
    s.run("drop-one-spanning", CheckKind::Diagnostic, || {
        let r = drop_one_spanning(x, tol).map_err(|e| CheckError {
            numerical: e.exit_code() == 3,
            message: e.to_string(),
        })?;
        diag(r.status, r.detail)
    });
    s.run("n-plus-2-dichotomy", CheckKind::Diagnostic, || {
        Ok(match classify_n_plus_2(x, tol)?.verdict {
            DichotomyVerdict::Inapplicable => skip("m != n + 2"),
            DichotomyVerdict::FullCore => pass("core is the whole system"),
            DichotomyVerdict::EquiangularSubset { indices } => pass(format!("core {indices:?} is equiangular")),
            DichotomyVerdict::Unresolved { core } => (
                CheckStatus::FailedDiagnostic,
                format!("core {core:?} fits neither alternative: evidence input is not Grassmannian"),
            ),
        })
    });
    s.run("replacement-coherence", CheckKind::Diagnostic, || {
        let r = replace_all_isolable(x, tol)?;
        diag(r.diagnostic.status, r.diagnostic.detail)
    });

    let failed = s
        .results
        .iter()
        .filter(|c| {
            c.status == CheckStatus::Fail || (grassmannian && c.status == CheckStatus::FailedDiagnostic)
        })
        .count();
    CheckReport {
        source: source.to_string(),
        m,
        n,
        tolerances: *tol,
        grassmannian,
        checks: s.results,
        failed,
    }
}

pub fn render_text(r: &CheckReport) -> String {
    let mut out = format!("source: {} (m = {}, n = {})\n", r.source, r.m, r.n);
    for c in &r.checks {
        out.push_str(&format!("  {:<18} {:<26} {}\n", c.status.label(), c.name, c.detail));
    }
    out.push_str(&format!("{} failed\n", r.failed));
    out
}
