use serde::{Deserialize, Serialize};

use super::UnitVectorSystem;
use crate::numerics::{Matrix, Tolerances};

/// Pairwise inner products `G_ij = <x_i, x_j>` together with the coherence
/// `max_{i != j} |G_ij|` (zero for a single vector).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub entries: Matrix,
    pub coherence: f64,
}

/// The vectors meeting `x_owner` at `|<x_owner, x_j>| = level` (within
/// `neighbor_abs`), with the sign of each inner product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborSet {
    pub owner: usize,
    pub level: f64,
    pub members: Vec<usize>,
    pub signs: Vec<f64>,
}

impl NeighborSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn gram(x: &UnitVectorSystem) -> GramMatrix {
    let entries = x.as_rows().row_gram();
    let m = entries.rows();
    let mut coherence: f64 = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            coherence = coherence.max(entries[(i, j)].abs());
        }
    }
    GramMatrix { entries, coherence }
}

impl GramMatrix {
    pub fn len(&self) -> usize {
        self.entries.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn neighbors(&self, i: usize, level: f64, tol: &Tolerances) -> NeighborSet {
        let mut members = Vec::new();
        let mut signs = Vec::new();
        for j in 0..self.len() {
            if j == i {
                continue;
            }
            let g = self.entries[(i, j)];
            if (g.abs() - level).abs() <= tol.neighbor_abs {
                members.push(j);
                signs.push(if g < 0.0 { -1.0 } else { 1.0 });
            }
        }
        NeighborSet {
            owner: i,
            level,
            members,
            signs,
        }
    }

    /// Indices `j != i` whose `|G_ij|` sits within `2 * neighbor_abs` of
    /// `level` without being a neighbor: verdicts there depend on the tolerance.
    pub fn near_ties(&self, i: usize, level: f64, tol: &Tolerances) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| j != i)
            .filter(|&j| {
                let d = (self.entries[(i, j)].abs() - level).abs();
                d > tol.neighbor_abs && d <= 2.0 * tol.neighbor_abs
            })
            .collect()
    }

    /// Largest `|G_ij|` over `j != i` that is not a neighbor at `level`.
    pub fn max_non_neighbor(&self, i: usize, level: f64, tol: &Tolerances) -> f64 {
        (0..self.len())
            .filter(|&j| j != i)
            .map(|j| self.entries[(i, j)].abs())
            .filter(|g| (g - level).abs() > tol.neighbor_abs)
            .fold(0.0, f64::max)
    }

    /// Off-diagonal magnitudes `(min, max)`; `None` for a single vector.
    pub fn off_diagonal_range(&self) -> Option<(f64, f64)> {
        let m = self.len();
        if m < 2 {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                let g = self.entries[(i, j)].abs();
                lo = lo.min(g);
                hi = hi.max(g);
            }
        }
        Some((lo, hi))
    }
}

pub fn neighbors(x: &UnitVectorSystem, i: usize, level: f64, tol: &Tolerances) -> NeighborSet {
    gram(x).neighbors(i, level, tol)
}
