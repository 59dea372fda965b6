use serde::{Deserialize, Serialize};

use super::{gram, tightness, FrameError, GramMatrix, UnitVectorSystem};
use crate::diagnostic::DiagnosticStatus;
use crate::numerics::Tolerances;

/// `sqrt((m - n) / (n (m - 1)))`, defined for `m > n`.
pub fn welch_bound(m: usize, n: usize) -> Option<f64> {
    if m <= n || n == 0 {
        return None;
    }
    let (m, n) = (m as f64, n as f64);
    Some(((m - n) / (n * (m - 1.0))).sqrt())
}

pub fn orthoplex_bound(n: usize) -> f64 {
    1.0 / (n as f64).sqrt()
}

/// Largest possible size `n (n + 1) / 2` of a real equiangular tight frame.
pub fn gerzon_max(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCard {
    pub m: usize,
    pub n: usize,
    /// `None` when `m <= n` (the bound does not apply).
    pub welch: Option<f64>,
    pub orthoplex: f64,
    pub gerzon_max_m: usize,
    pub coherence: f64,
    /// `|coherence - welch| <= route_abs`; `None` when the bound does not apply.
    pub meets_welch: Option<bool>,
    pub exceeds_gerzon: bool,
}

pub fn bounds_card(x: &UnitVectorSystem, tol: &Tolerances) -> BoundsCard {
    let (m, n) = (x.len(), x.dim());
    let coherence = gram(x).coherence;
    let welch = welch_bound(m, n);
    BoundsCard {
        m,
        n,
        welch,
        orthoplex: orthoplex_bound(n),
        gerzon_max_m: gerzon_max(n),
        coherence,
        meets_welch: welch.map(|w| (coherence - w).abs() <= tol.route_abs),
        exceeds_gerzon: m > gerzon_max(n),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equiangularity {
    pub equiangular: bool,
    /// The coherence; the common angle when `equiangular`.
    pub angle: f64,
    /// `max |G_ij| - min |G_ij|` over off-diagonal entries.
    pub spread: f64,
    /// The spread lies within a factor two of `neighbor_abs`, so the verdict
    /// depends on that tolerance.
    pub near_threshold: bool,
}

pub fn is_equiangular(x: &UnitVectorSystem, tol: &Tolerances) -> Equiangularity {
    equiangularity_of(&gram(x), tol)
}

fn equiangularity_of(g: &GramMatrix, tol: &Tolerances) -> Equiangularity {
    match g.off_diagonal_range() {
        None => Equiangularity {
            equiangular: true,
            angle: 0.0,
            spread: 0.0,
            near_threshold: false,
        },
        Some((lo, hi)) => {
            let spread = hi - lo;
            Equiangularity {
                equiangular: spread <= tol.neighbor_abs,
                angle: hi,
                spread,
                near_threshold: spread > 0.5 * tol.neighbor_abs && spread <= 2.0 * tol.neighbor_abs,
            }
        }
    }
}

/// Equiangular tight frame test.
///
/// Decided as tight-and-equiangular; when `m > n` the Welch equality
/// `|coherence - welch| <= route_abs` is evaluated independently and the two
/// routes must agree. An orthonormal basis (`m = n`, coherence 0) counts as
/// a degenerate ETF.
pub fn is_etf(x: &UnitVectorSystem, tol: &Tolerances) -> Result<bool, FrameError> {
    let g = gram(x);
    let structural = tightness(x, tol).is_tight() && equiangularity_of(&g, tol).equiangular;
    if let Some(w) = welch_bound(x.len(), x.dim()) {
        let by_welch = (g.coherence - w).abs() <= tol.route_abs;
        if by_welch != structural {
            return Err(FrameError::InconsistentVerdict {
                detail: format!(
                    "tight+equiangular = {structural} but |coherence - welch| = {:.3e}",
                    (g.coherence - w).abs()
                ),
            });
        }
    }
    Ok(structural)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborCountReport {
    pub level: f64,
    pub counts: Vec<usize>,
    pub status: DiagnosticStatus,
    pub detail: String,
}

/// Neighbor counts at the coherence level, with the parity bounds that hold
/// for tight Grassmannian frames that are not ETFs: every count `<= m - 2`,
/// and for odd `m` some count `<= m - 3`.
pub fn neighbor_count_report(x: &UnitVectorSystem, tol: &Tolerances) -> NeighborCountReport {
    let g = gram(x);
    let m = x.len();
    let level = g.coherence;
    let counts: Vec<usize> = (0..m).map(|i| g.neighbors(i, level, tol).len()).collect();
    let tight = tightness(x, tol).is_tight();
    let etf = is_etf(x, tol).unwrap_or(false);
    let (status, detail) = if !tight || etf || m < 3 {
        (
            DiagnosticStatus::Skip,
            "bounds apply only to tight frames that are not ETFs".to_string(),
        )
    } else if let Some((i, c)) = counts.iter().enumerate().find(|(_, &c)| c > m - 2) {
        (
            DiagnosticStatus::FailedDiagnostic,
            format!("vector {i} has {c} neighbors > m - 2 = {}: input is not a tight Grassmannian frame or tolerances are off", m - 2),
        )
    } else if m % 2 == 1 && counts.iter().all(|&c| c > m - 3) {
        (
            DiagnosticStatus::FailedDiagnostic,
            format!("m = {m} is odd but no vector has at most m - 3 neighbors"),
        )
    } else {
        (DiagnosticStatus::Pass, "neighbor-count bounds hold".to_string())
    };
    NeighborCountReport {
        level,
        counts,
        status,
        detail,
    }
}
