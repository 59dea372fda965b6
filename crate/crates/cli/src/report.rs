//! The full analysis of one system.

use std::fmt::Write as _;

use grassframe::coreanalysis::{
    classify_n_plus_2, core, eigen_span_diagnostic, isolable_set, tight_grassmannian_diagnostic, validate_core,
    CoreTrace, CoreValidation, DichotomyVerdict, EigenSpanReport, VectorVerdict,
};
use grassframe::frames::{
    bounds_card, gram, is_equiangular, is_etf, neighbor_count_report, spans, spectrum, tightness, BoundsCard,
    Equiangularity, NeighborCountReport, TightnessVerdict,
};
use grassframe::{Diagnostic, DiagnosticStatus, Tolerances, UnitVectorSystem};
use serde::Serialize;

use crate::emit::{fixed, index_list, matrix_table};
use crate::CliError;

/// A value together with the names of the tolerances that decided it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decided<T> {
    pub value: T,
    pub decided_under: Vec<&'static str>,
}

fn decided<T>(value: T, under: &[&'static str]) -> Decided<T> {
    Decided {
        value,
        decided_under: under.to_vec(),
    }
}

const CLASSIFY_TOLS: &[&str] = &["neighbor_abs", "hull_abs", "rank_rel", "certify_abs"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    /// Frame-operator eigenvalues, largest first.
    pub eigenvalues: Vec<f64>,
    pub top_multiplicity: usize,
}

/// Whether the system still spans after dropping any single vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DropOneReport {
    pub status: DiagnosticStatus,
    /// Indices whose removal loses spanning.
    pub critical: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub drop_one_spanning: Decided<DropOneReport>,
    pub neighbor_counts: Decided<NeighborCountReport>,
    pub eigen_span: Decided<EigenSpanReport>,
    pub tight_grassmannian: Decided<Diagnostic>,
    pub core_validation: Decided<CoreValidation>,
    pub n_plus_2: Decided<DichotomyVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub source: String,
    pub m: usize,
    pub n: usize,
    pub labels: Option<Vec<String>>,
    pub tolerances: Tolerances,
    pub coherence: f64,
    pub gram: Vec<Vec<f64>>,
    pub bounds: Decided<BoundsCard>,
    pub tightness: Decided<TightnessVerdict>,
    pub equiangularity: Decided<Equiangularity>,
    pub etf: Decided<bool>,
    pub spectrum: Decided<SpectrumSummary>,
    pub verdicts: Decided<Vec<VectorVerdict>>,
    pub core: Decided<CoreTrace>,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

pub fn drop_one_spanning(x: &UnitVectorSystem, tol: &Tolerances) -> Result<DropOneReport, CliError> {
    let (m, n) = (x.len(), x.dim());
    if m <= n || !spans(x, &[], tol)? {
        return Ok(DropOneReport {
            status: DiagnosticStatus::Skip,
            critical: Vec::new(),
            detail: "applies to spanning systems with m > n".into(),
        });
    }
    let mut critical = Vec::new();
    for j in 0..m {
        if !spans(x, &[j], tol)? {
            critical.push(j);
        }
    }
    Ok(if critical.is_empty() {
        DropOneReport {
            status: DiagnosticStatus::Pass,
            critical,
            detail: "spans after removing any one vector".into(),
        }
    } else {
        let detail = format!(
            "removing any of {} loses spanning: evidence input is not Grassmannian",
            index_list(&critical)
        );
        DropOneReport {
            status: DiagnosticStatus::FailedDiagnostic,
            critical,
            detail,
        }
    })
}

/// Runs every analysis on `x`. `presumed_grassmannian` only affects the
/// tight-Grassmannian diagnostic.
pub fn analyze(
    source: &str,
    x: &UnitVectorSystem,
    tol: &Tolerances,
    presumed_grassmannian: bool,
) -> Result<AnalysisReport, CliError> {
    let g = gram(x);
    let spec = spectrum(x, tol)?;
    let set = isolable_set(x, tol)?;
    let trace = core(x, tol)?;
    let validation = validate_core(x, &trace, tol)?;
    let dichotomy = classify_n_plus_2(x, tol)?;

    let mut warnings: Vec<String> = x.warnings().to_vec();
    // the core trace repeats the level-0 warnings of the isolable set
    warnings.extend(trace.warnings.iter().map(ToString::to_string));
    warnings.extend(dichotomy.warnings.iter().map(ToString::to_string));

    let diagnostics = Diagnostics {
        drop_one_spanning: decided(drop_one_spanning(x, tol)?, &["rank_rel"]),
        neighbor_counts: decided(neighbor_count_report(x, tol), &["eq_abs", "neighbor_abs"]),
        eigen_span: decided(eigen_span_diagnostic(x, tol)?, &["eq_abs", "neighbor_abs", "route_abs"]),
        tight_grassmannian: decided(tight_grassmannian_diagnostic(x, presumed_grassmannian, tol), &["eq_abs"]),
        core_validation: decided(validation, &["eq_abs", "neighbor_abs", "rank_rel"]),
        n_plus_2: decided(dichotomy.verdict, CLASSIFY_TOLS),
    };
    Ok(AnalysisReport {
        source: source.to_string(),
        m: x.len(),
        n: x.dim(),
        labels: x.labels().map(<[String]>::to_vec),
        tolerances: *tol,
        coherence: g.coherence,
        gram: g.entries.row_vecs(),
        bounds: decided(bounds_card(x, tol), &["route_abs"]),
        tightness: decided(tightness(x, tol), &["eq_abs"]),
        equiangularity: decided(is_equiangular(x, tol), &["neighbor_abs"]),
        etf: decided(is_etf(x, tol)?, &["eq_abs", "neighbor_abs", "route_abs"]),
        spectrum: decided(
            SpectrumSummary {
                eigenvalues: spec.eigenvalues,
                top_multiplicity: spec.top_multiplicity,
            },
            &["eq_abs"],
        ),
        verdicts: decided(set.verdicts, CLASSIFY_TOLS),
        core: decided(trace, CLASSIFY_TOLS),
        diagnostics,
        warnings,
    })
}

pub fn tightness_text(t: &TightnessVerdict) -> String {
    match t {
        TightnessVerdict::NotTight => "not tight".into(),
        TightnessVerdict::Tight(a) => format!("tight, A = {}", fixed(*a)),
        TightnessVerdict::Parseval => "Parseval (A = 1)".into(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verdict_table(verdicts: &[VectorVerdict]) -> String {
    let mut out = format!(
        "  {:>5}  {:<18}  {:<15}  {:>9}  {:>4}\n",
        "index", "status", "decided by", "neighbors", "rank"
    );
    for v in verdicts {
        let status = serde_json::to_value(v.status).ok();
        let stage = serde_json::to_value(v.decided_by).ok();
        let _ = writeln!(
            out,
            "  {:>5}  {:<18}  {:<15}  {:>9}  {:>4}",
            v.index,
            status.as_ref().and_then(|s| s.as_str()).unwrap_or("?"),
            stage.as_ref().and_then(|s| s.as_str()).unwrap_or("?"),
            v.neighbor_count(),
            v.neighbor_span_rank
        );
    }
    out
}

pub fn core_text(trace: &CoreTrace) -> String {
    let mut out = String::new();
    for (k, level) in trace.levels.iter().enumerate() {
        let _ = writeln!(
            out,
            "  Y_{k}: {} vectors, coherence {}, isolable {}",
            level.members.len(),
            fixed(level.coherence),
            index_list(&level.isolable)
        );
    }
    let _ = writeln!(out, "  core: {}", index_list(&trace.core));
    out
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", r.source);
    let _ = writeln!(out, "m = {}, n = {}", r.m, r.n);
    let tols: Vec<String> = r.tolerances.named().iter().map(|(k, v)| format!("{k} = {v:e}")).collect();
    let _ = writeln!(out, "tolerances: {}", tols.join(", "));
    let _ = writeln!(out, "coherence: {}", fixed(r.coherence));
    let b = &r.bounds.value;
    let _ = writeln!(
        out,
        "bounds: welch {}, orthoplex {}, gerzon max m {}{}",
        b.welch.map_or("n/a".into(), fixed),
        fixed(b.orthoplex),
        b.gerzon_max_m,
        match b.meets_welch {
            Some(true) => ", meets welch",
            _ => "",
        }
    );
    let _ = writeln!(out, "tightness: {}", tightness_text(&r.tightness.value));
    let _ = writeln!(
        out,
        "equiangular: {}, etf: {}",
        yes_no(r.equiangularity.value.equiangular),
        yes_no(r.etf.value)
    );
    let eig: Vec<String> = r.spectrum.value.eigenvalues.iter().map(|&e| fixed(e)).collect();
    let _ = writeln!(
        out,
        "spectrum: {} (top multiplicity {})",
        eig.join(" "),
        r.spectrum.value.top_multiplicity
    );
    out.push_str("gram:\n");
    out.push_str(&matrix_table(&r.gram));
    out.push_str("vectors:\n");
    out.push_str(&verdict_table(&r.verdicts.value));
    out.push_str("core iteration:\n");
    out.push_str(&core_text(&r.core.value));
    out.push_str("diagnostics:\n");
    let d = &r.diagnostics;
    let n2 = match &d.n_plus_2.value {
        DichotomyVerdict::Inapplicable => (DiagnosticStatus::Skip, "m != n + 2".to_string()),
        DichotomyVerdict::FullCore => (DiagnosticStatus::Pass, "core is the whole system".to_string()),
        DichotomyVerdict::EquiangularSubset { indices } => (
            DiagnosticStatus::Pass,
            format!("core {} is equiangular", index_list(indices)),
        ),
        DichotomyVerdict::Unresolved { core } => (
            DiagnosticStatus::FailedDiagnostic,
            format!("core {} fits neither alternative", index_list(core)),
        ),
    };
    let rows = [
        ("drop-one spanning", d.drop_one_spanning.value.status, d.drop_one_spanning.value.detail.clone()),
        ("neighbor counts", d.neighbor_counts.value.status, d.neighbor_counts.value.detail.clone()),
        ("eigen-span", d.eigen_span.value.status, d.eigen_span.value.detail.clone()),
        ("tight grassmannian", d.tight_grassmannian.value.status, d.tight_grassmannian.value.detail.clone()),
        ("core validation", d.core_validation.value.status, d.core_validation.value.size.detail.clone()),
        ("n + 2 dichotomy", n2.0, n2.1),
    ];
    for (name, status, detail) in rows {
        let _ = writeln!(out, "  {name:<20} {:<18} {detail}", status.to_string());
    }
    if !r.warnings.is_empty() {
        out.push_str("warnings:\n");
        for w in &r.warnings {
            let _ = writeln!(out, "  {w}");
        }
    }
    out
}
