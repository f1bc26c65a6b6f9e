//! Exact arithmetic in the supercommutative algebra A(m|n), the vector-field
//! superalgebra W(m|n) acting on it, its extension by A, gl(m|n), and the
//! Weyl superalgebra.
//!
//! Indices are zero-based internally: direction `i < m` is the even variable
//! `t_{i+1}`, direction `m + k` is the odd variable `xi_{k+1}`. Text formats
//! and reports use the one-based labels.

mod field;
mod gl;
mod monomial;
mod oddset;
mod poly;
mod tilde;
mod weyl;

pub use field::{FieldTerm, VectorField};
pub use gl::{GlElement, GlIndex};
pub use monomial::{Context, Monomial};
pub use oddset::{tau, tau_sequence, OddSet};
pub use poly::SuperPoly;
pub use tilde::TildeElement;
pub use weyl::{WeylElement, WeylKey};

use std::fmt;

/// The superdimension `(m|n)`: `m` even and `n` odd coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub m: usize,
    pub n: usize,
}

impl Signature {
    pub const fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Parity of the coordinate `t_i` (unified index).
    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.m
    }

    pub fn check(&self, other: &Signature) -> crate::Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(crate::Error::SignatureMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.m, self.n)
    }
}
