pub mod error;
pub mod algebra;
pub mod braid;
pub mod diagram;
pub mod lang;
pub mod rep;
pub mod scalar;
pub mod state;

pub use error::{Error, Result};
