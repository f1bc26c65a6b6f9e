//! Exact computations for the Lie superalgebra W(m|n) of vector fields on
//! C^{m|n}: structure constants, PBW normal forms, support cones, gl(m|n)
//! representations, tensor modules and their simplicity diagnostics.

pub mod algebra;
pub mod error;
pub mod format;
pub mod jobs;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub mod enveloping;
pub mod glreps;
pub mod pbw;
pub mod tensor;
pub mod weights;
