//! Weight geometry: support sets as finite unions of shifted lattice cones,
//! root sets, shadow decompositions, extremal weights and the parabolic
//! decomposition of the root set attached to a support.
//!
//! Weights are rows of exact rationals in the `epsilon` basis; roots are
//! integer rows. Only integer vectors are ever added to a weight, so the
//! integrality of each coordinate is fixed by the base point.

mod cone;
mod direction;
mod parabolic;
mod roots;
mod shadow;

pub use cone::{Cone, SupportSet};
pub use direction::{classify_direction, direction_set, DirClass, IntSet, Progression};
pub use parabolic::{
    check_deltazero, default_triangular_split, levi_shape, parabolic_decomposition, LeviShape,
    ParabolicDecomposition, TriangularSplit,
};
pub use roots::{delta_double_prime, delta_prime, euclid, root_label, root_set, sl_embedding, Root};
pub use shadow::{
    check_closure_lemmas, check_k_monotonicity, find_extremal, is_extremal, k_lambda, sample_points, shadow,
    ClosureReport, Extremality, ShadowPartition, DEFAULT_WINDOW,
};

use crate::rational::{fmt_q, Q};
use num_traits::Zero;
use std::fmt;

/// A weight `sum_i c_i eps_i` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(m: usize) -> Self {
        Weight(vec![Q::zero(); m])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Whether coordinate `i` is an integer (the tag is invariant under
    /// adding roots).
    pub fn is_integral(&self, i: usize) -> bool {
        self.0[i].is_integer()
    }

    /// `self + k * root`.
    pub fn shift(&self, root: &[i64], k: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(root)
                .map(|(x, &r)| x + Q::from_integer((r * k).into()))
                .collect(),
        )
    }

    /// The standard Euclidean pairing with a root.
    pub fn pair(&self, root: &[i64]) -> Q {
        self.0
            .iter()
            .zip(root)
            .fold(Q::zero(), |acc, (x, &r)| acc + x * Q::from_integer(r.into()))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}
