//! PBW normal forms in U(W), U(W + A) and the quotient algebra, and the
//! operator families built there.

mod alphabet;
mod ops;

pub use alphabet::{uk, Flavor, KAlphabet, KLetter, LAlphabet, Letter, LeviSpec};
pub use ops::*;
