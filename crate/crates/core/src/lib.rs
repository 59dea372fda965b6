//! Analysis of finite unit-norm vector systems in `R^n`: coherence and the
//! classical lower bounds, isolated / deficient / isolable vectors, the core
//! of a line packing, and the standard constructions (Naimark complements,
//! doubling, tight completion, closed-form packing angles).

pub mod constructions;
pub mod coreanalysis;
pub mod diagnostic;
pub mod frames;
pub mod numerics;

pub use diagnostic::{Diagnostic, DiagnosticStatus};
pub use numerics::{Matrix, NumericsError, SpectralData, Tolerances};
pub use frames::{FrameError, UnitVectorSystem};
