use serde::{Deserialize, Serialize};

use super::NumericsError;

/// Every numerical threshold used by the library.
///
/// One value is threaded from the caller (usually the CLI) through every
/// operation, so a report can always state exactly which tolerances produced
/// its verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Scalar equality: symmetry, unit norms, tightness, eigenvalue multiplicity.
    pub eq_abs: f64,
    /// Neighbor membership: `||<x, y>| - alpha| <= neighbor_abs`.
    pub neighbor_abs: f64,
    /// Threshold below which a convex-hull or cone residual counts as zero.
    pub hull_abs: f64,
    /// Relative eigenvalue cutoff (on `M^T M`) for numerical rank.
    pub rank_rel: f64,
    /// Agreement between two independent routes to the same answer
    /// (Welch equality vs. tight+equiangular, reconstruction identity,
    /// eigenvector-in-span distance).
    pub route_abs: f64,
    /// Self-checks run on constructed outputs (orthonormality of completions,
    /// Naimark Gram relation, eigen residuals).
    pub certify_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_abs: 1e-9,
            neighbor_abs: 1e-8,
            hull_abs: 1e-9,
            rank_rel: 1e-10,
            route_abs: 1e-7,
            certify_abs: 1e-8,
        }
    }
}

impl Tolerances {
    /// Validates that every tolerance lies in `(0, 1e-2)`.
    pub fn validated(self) -> Result<Self, NumericsError> {
        for (name, value) in self.named() {
            if !(value.is_finite() && value > 0.0 && value < 1e-2) {
                return Err(NumericsError::BadTolerance { name, value });
            }
        }
        Ok(self)
    }

    pub fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("eq_abs", self.eq_abs),
            ("neighbor_abs", self.neighbor_abs),
            ("hull_abs", self.hull_abs),
            ("rank_rel", self.rank_rel),
            ("route_abs", self.route_abs),
            ("certify_abs", self.certify_abs),
        ]
    }

    /// Relative singular-value cutoff implied by `rank_rel` (which applies to
    /// squared singular values).
    pub fn singular_rel(&self) -> f64 {
        self.rank_rel.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(Tolerances::default().validated().is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        let d = Tolerances::default();
        assert!(Tolerances { hull_abs: 0.0, ..d }.validated().is_err());
        assert!(Tolerances { eq_abs: 0.5, ..d }.validated().is_err());
        assert!(Tolerances { rank_rel: f64::NAN, ..d }.validated().is_err());
    }
}
