//! Sheaf cohomology: Bott formulas, line-bundle complexes, the display
//! chase for monads and truncated Čech hypercohomology.

mod bott;
mod cech;
mod complex;
mod display;
mod table;

pub use bott::{line_bundle_cohomology, line_bundle_euler};
pub use cech::{cech_hypercohomology, minimal_bound, truncated_hypercohomology, Hypercohomology};
pub use complex::LineBundleComplex;
pub use display::three_term_cohomology;
pub use table::CohomologyTable;

use crate::algebra::AlgebraError;
use crate::forms::{AmbientSpace, FormError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("map {0} and its successor do not compose to zero")]
    NotAComplex(usize),
    #[error("the display chase needs a projective space of dimension at least 2, got {0}")]
    DisplayUnsupported(AmbientSpace),
    #[error("not a monad: {0}")]
    NotAMonad(String),
    #[error("truncated cohomology changes between bounds {bound} and {}; increase the bound", .bound + 1)]
    Unstable { bound: u32 },
    #[error("Euler characteristic {found} differs from {expected}; increase the bound")]
    EulerMismatch { expected: i64, found: i64 },
    #[error("internal error: {0}")]
    Internal(String),
}
