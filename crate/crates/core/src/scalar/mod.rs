//! Exact cyclotomic scalars.

mod context;
mod cyclo;
pub mod field;
mod gauss;

pub use context::{cyclo_eq, Backend, ScalarContext, FLOAT_TOLERANCE};
pub use cyclo::{Approx, Cyclo};
pub use field::CycloField;
pub use gauss::{gauss_diagnostics, GaussReport};

/// Rational coefficients used throughout.
pub type Rational = num_rational::BigRational;
