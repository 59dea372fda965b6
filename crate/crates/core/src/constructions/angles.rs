use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::frames::welch_bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleKind {
    /// Smallest coherence of `m` unit vectors in `R^n`.
    GrassmannianAlpha,
    /// Smallest coherence of `m`-vector unit-norm tight frames in `R^n`.
    OneGrassmannianMu,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleCatalogEntry {
    pub m: usize,
    pub n: usize,
    pub kind: AngleKind,
    pub value: f64,
    pub rule: String,
}

/// `(modulus, residue, m - n, rule, value(n, sqrt5))`
type AlphaRule = (usize, usize, usize, &'static str, fn(f64, f64) -> f64);

/// Known closed-form packing angles for `m` lines in `R^n` (`m > n >= 2`).
///
/// Empty when no rule applies. For `m = n + 2` the tight-frame value is
/// always present and may accompany a Grassmannian value.
pub fn angle_catalog(m: usize, n: usize) -> Vec<AngleCatalogEntry> {
    if n < 2 || m <= n {
        return Vec::new();
    }
    let nf = n as f64;
    let s5 = 5f64.sqrt();
    let alpha_rules: [AlphaRule; 4] = [
        (3, 1, 2, "n = -2 mod 3, m = n + 2: 3/(2n+1)", |n, _| 3.0 / (2.0 * n + 1.0)),
        (6, 3, 3, "n = -3 mod 6, m = n + 3: 6/((sqrt5+1)n + 3(sqrt5-1))", |n, s5| {
            6.0 / ((s5 + 1.0) * n + 3.0 * (s5 - 1.0))
        }),
        (28, 21, 7, "n = -7 mod 28, m = n + 7: 14/(5n+21)", |n, _| 14.0 / (5.0 * n + 21.0)),
        (276, 253, 23, "n = -23 mod 276, m = n + 23: 69/(14n+253)", |n, _| {
            69.0 / (14.0 * n + 253.0)
        }),
    ];
    let mut out = Vec::new();
    for (modulus, residue, offset, rule, value) in alpha_rules {
        if n % modulus == residue && m == n + offset {
            out.push(AngleCatalogEntry {
                m,
                n,
                kind: AngleKind::GrassmannianAlpha,
                value: value(nf, s5),
                rule: rule.to_string(),
            });
        }
    }
    if m == n + 2 {
        out.push(AngleCatalogEntry {
            m,
            n,
            kind: AngleKind::OneGrassmannianMu,
            value: 2.0 / nf * (PI / (nf + 2.0)).cos(),
            rule: "m = n + 2: (2/n) cos(pi/(n+2))".to_string(),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// e.g. `alpha(9,7) < alpha(6,4)`.
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub entries: Vec<AngleCatalogEntry>,
    pub comparisons: Vec<Comparison>,
    pub violations: usize,
}

const SLACK: f64 = 1e-12;

/// Checks every catalog value for `m` in `ms`, `n` in `ns` against the
/// Welch bound and the monotonicity of packing angles, and compares the
/// two kinds of value where both are known.
///
/// Monotonicity: `alpha(m, n) <= alpha(m+1, n)`, `alpha(m+1, n+1) <
/// alpha(m, n)` and `alpha(m, n+1) < alpha(m, n)`. Chained, `alpha(m', n')
/// <= alpha(m, n)` whenever `n' >= n` and `m' <= m + (n' - n)`, strictly
/// when `n' > n`.
pub fn catalog_consistency(ms: std::ops::RangeInclusive<usize>, ns: std::ops::RangeInclusive<usize>) -> ConsistencyReport {
    let mut entries = Vec::new();
    for n in ns {
        for m in ms.clone() {
            entries.extend(angle_catalog(m, n));
        }
    }
    let mut comparisons = Vec::new();
    let name = |e: &AngleCatalogEntry| match e.kind {
        AngleKind::GrassmannianAlpha => format!("alpha({},{})", e.m, e.n),
        AngleKind::OneGrassmannianMu => format!("mu({},{})", e.m, e.n),
    };

    for e in &entries {
        if let Some(w) = welch_bound(e.m, e.n) {
            comparisons.push(Comparison {
                relation: format!("{} >= welch({},{})", name(e), e.m, e.n),
                lhs: e.value,
                rhs: w,
                holds: e.value >= w - SLACK,
            });
        }
        comparisons.push(Comparison {
            relation: format!("0 < {} < 1", name(e)),
            lhs: e.value,
            rhs: 1.0,
            holds: e.value > 0.0 && e.value < 1.0,
        });
    }
    let alphas: Vec<&AngleCatalogEntry> = entries
        .iter()
        .filter(|e| e.kind == AngleKind::GrassmannianAlpha)
        .collect();
    for mu in entries.iter().filter(|e| e.kind == AngleKind::OneGrassmannianMu) {
        for a in alphas.iter().filter(|a| a.m == mu.m && a.n == mu.n) {
            comparisons.push(Comparison {
                relation: format!("{} >= {}", name(mu), name(a)),
                lhs: mu.value,
                rhs: a.value,
                holds: mu.value >= a.value - SLACK,
            });
        }
    }
    for p in &alphas {
        for q in &alphas {
            if q.n < p.n || (q.m, q.n) == (p.m, p.n) || q.m > p.m + (q.n - p.n) {
                continue;
            }
            let strict = q.n > p.n;
            comparisons.push(Comparison {
                relation: format!("{} {} {}", name(q), if strict { "<" } else { "<=" }, name(p)),
                lhs: q.value,
                rhs: p.value,
                holds: if strict { q.value < p.value } else { q.value <= p.value + SLACK },
            });
        }
    }
    let violations = comparisons.iter().filter(|c| !c.holds).count();
    ConsistencyReport {
        entries,
        comparisons,
        violations,
    }
}
