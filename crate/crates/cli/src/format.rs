//! Reading and writing vector systems.
//!
//! Two input formats are accepted. The structured one is a JSON object
//!
//! ```text
//! {"dim": 2, "vectors": [[1, 0], [0, 1]], "labels": ["a", "b"],
//!  "tolerances": {"neighbor_abs": 1e-7}}
//! ```
//!
//! with `labels` and `tolerances` optional. The plain one has one vector per
//! line as whitespace-separated reals, with `#` starting a comment. Both
//! store vectors as rows: a frame written as the columns of an `n x m`
//! matrix has to be transposed first.

use grassframe::{Tolerances, UnitVectorSystem};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

/// Per-file tolerance overrides; missing entries keep the caller's value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub eq_abs: Option<f64>,
    pub neighbor_abs: Option<f64>,
    pub hull_abs: Option<f64>,
    pub rank_rel: Option<f64>,
    pub route_abs: Option<f64>,
    pub certify_abs: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            eq_abs: self.eq_abs.unwrap_or(base.eq_abs),
            neighbor_abs: self.neighbor_abs.unwrap_or(base.neighbor_abs),
            hull_abs: self.hull_abs.unwrap_or(base.hull_abs),
            rank_rel: self.rank_rel.unwrap_or(base.rank_rel),
            route_abs: self.route_abs.unwrap_or(base.route_abs),
            certify_abs: self.certify_abs.unwrap_or(base.certify_abs),
        }
    }
}

/// A parsed but not yet validated input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

impl FrameFile {
    /// Validates the vectors under `tol` (norms, shapes, labels).
    pub fn system(&self, tol: &Tolerances) -> Result<UnitVectorSystem, CliError> {
        let x = UnitVectorSystem::new(self.dim, self.vectors.clone(), tol)?;
        Ok(match &self.labels {
            Some(l) => x.with_labels(l.clone())?,
            None => x,
        })
    }

    /// `base` with this file's overrides applied.
    pub fn tolerances(&self, base: Tolerances) -> Tolerances {
        self.tolerances.unwrap_or_default().apply(base)
    }
}

/// Parses either input format, picking the structured one when the first
/// non-blank character is `{`.
pub fn parse_frame(text: &str) -> Result<FrameFile, CliError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    } else {
        parse_plain(text)
    }
}

fn parse_plain(text: &str) -> Result<FrameFile, CliError> {
    let mut vectors = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| CliError::Parse(format!("line {}: '{tok}' is not a number", lineno + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        vectors.push(row);
    }
    let dim = vectors.first().map_or(0, Vec::len);
    Ok(FrameFile {
        dim,
        vectors,
        labels: None,
        tolerances: None,
    })
}

/// Parses and validates in one step, with file overrides layered on `base`.
pub fn read_system(text: &str, base: Tolerances) -> Result<(UnitVectorSystem, Tolerances), CliError> {
    let file = parse_frame(text)?;
    let tol = file.tolerances(base).validated()?;
    Ok((file.system(&tol)?, tol))
}

/// The structured form of `x`, at full precision so that it reads back
/// exactly, with an optional `summary` object alongside. Readers ignore the
/// summary.
pub fn frame_value(x: &UnitVectorSystem, summary: Option<Value>) -> Value {
    let mut map = Map::new();
    map.insert("dim".into(), x.dim().into());
    map.insert(
        "vectors".into(),
        Value::Array(
            x.vectors()
                .iter()
                .map(|v| Value::Array(v.iter().map(|&c| c.into()).collect()))
                .collect(),
        ),
    );
    if let Some(labels) = x.labels() {
        map.insert("labels".into(), labels.to_vec().into());
    }
    if let Some(s) = summary {
        map.insert("summary".into(), s);
    }
    Value::Object(map)
}

/// The plain form of `x`, preceded by `header` lines as comments.
pub fn frame_text(x: &UnitVectorSystem, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    if let Some(labels) = x.labels() {
        out.push_str("# labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    for v in x.vectors() {
        let row: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
