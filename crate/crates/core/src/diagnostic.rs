use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome label for a theorem-backed diagnostic.
///
/// Diagnostics check consequences of hypotheses (Grassmannian optimality,
/// tightness) that cannot be verified from the input alone, so a failure is
/// evidence about the input rather than an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum DiagnosticStatus {
    Pass,
    Skip,
    Ambiguous,
    FailedDiagnostic,
}

impl DiagnosticStatus {
    pub fn is_failure(self) -> bool {
        self == DiagnosticStatus::FailedDiagnostic
    }
}

/// A diagnostic outcome with a human-readable explanation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub status: DiagnosticStatus,
    pub detail: String,
}

impl Diagnostic {
    pub fn new(status: DiagnosticStatus, detail: impl Into<String>) -> Self {
        Self {
            status,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for DiagnosticStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticStatus::Pass => "PASS",
            DiagnosticStatus::Skip => "SKIP",
            DiagnosticStatus::Ambiguous => "AMBIGUOUS",
            DiagnosticStatus::FailedDiagnostic => "FAILED-DIAGNOSTIC",
        })
    }
}
