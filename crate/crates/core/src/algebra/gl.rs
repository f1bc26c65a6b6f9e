use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Signature;
use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::rational::{fmt_q, sign, Q};

/// The matrix unit `E_{row,col}` of gl(m|n) (zero-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlIndex {
    pub row: usize,
    pub col: usize,
}

impl GlIndex {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn parity(&self, sig: Signature) -> bool {
        sig.is_odd(self.row) ^ sig.is_odd(self.col)
    }

    /// Degree in the grading gl = gl^{-1} + gl^0 + gl^1: the odd-even block
    /// has degree -1 and the even-odd block degree 1.
    pub fn z_degree(&self, sig: Signature) -> i32 {
        match (sig.is_odd(self.row), sig.is_odd(self.col)) {
            (true, false) => -1,
            (false, true) => 1,
            _ => 0,
        }
    }

    /// `[E_ij, E_kl] = d_jk E_il - (-1)^{|E_ij||E_kl|} d_li E_kj`.
    pub fn bracket(&self, other: &GlIndex, sig: Signature) -> SparseVec<GlIndex> {
        let mut out = SparseVec::new();
        if self.col == other.row {
            add_term(&mut out, GlIndex::new(self.row, other.col), Q::one());
        }
        if other.col == self.row {
            let s = self.parity(sig) && other.parity(sig);
            add_term(&mut out, GlIndex::new(other.row, self.col), -sign(s));
        }
        out
    }

    /// All matrix units of gl(m|n), row-major.
    pub fn all(sig: Signature) -> Vec<GlIndex> {
        let d = sig.dim();
        (0..d).flat_map(|i| (0..d).map(move |j| GlIndex::new(i, j))).collect()
    }
}

impl fmt::Display for GlIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{},{}", self.row + 1, self.col + 1)
    }
}

/// An element of gl(m|n) as a sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlElement {
    pub sig: Signature,
    pub entries: BTreeMap<GlIndex, Q>,
}

impl GlElement {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(sig: Signature, row: usize, col: usize) -> Self {
        Self::from_entries(sig, [(GlIndex::new(row, col), Q::one())])
    }

    pub fn from_entries(sig: Signature, entries: impl IntoIterator<Item = (GlIndex, Q)>) -> Self {
        let mut g = Self::zero(sig);
        for (k, c) in entries {
            add_term(&mut g.entries, k, c);
        }
        g
    }

    fn check_size(&self, other: &GlElement) -> Result<()> {
        if self.sig.dim() != other.sig.dim() {
            return Err(Error::SizeMismatch(self.sig.dim(), other.sig.dim()));
        }
        self.sig.check(&other.sig)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &GlElement) -> Result<GlElement> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (k, c) in &other.entries {
            add_term(&mut out.entries, *k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> GlElement {
        Self::from_entries(self.sig, self.entries.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn bracket(&self, other: &GlElement) -> Result<GlElement> {
        self.check_size(other)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                for (k, c) in a.bracket(b, self.sig) {
                    add_term(&mut out.entries, k, c * x * y);
                }
            }
        }
        Ok(out)
    }

    /// Supertrace: even diagonal minus odd diagonal.
    pub fn str(&self) -> Q {
        let mut s = Q::zero();
        for (k, c) in &self.entries {
            if k.row == k.col {
                if self.sig.is_odd(k.row) {
                    s -= c;
                } else {
                    s += c;
                }
            }
        }
        s
    }
}

impl fmt::Display for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(k, c)| format!("{}*{}", fmt_q(c), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    /// Super-commutator of dense matrices, an oracle independent of the
    /// index formula.
    fn dense_bracket(a: &GlElement, b: &GlElement, pa: bool, pb: bool) -> GlElement {
        let d = a.sig.dim();
        let get = |g: &GlElement, i: usize, j: usize| g.entries.get(&GlIndex::new(i, j)).cloned().unwrap_or_else(Q::zero);
        let mut out = GlElement::zero(a.sig);
        for i in 0..d {
            for j in 0..d {
                let mut s = Q::zero();
                for k in 0..d {
                    s += get(a, i, k) * get(b, k, j) - sign(pa && pb) * get(b, i, k) * get(a, k, j);
                }
                add_term(&mut out.entries, GlIndex::new(i, j), s);
            }
        }
        out
    }

    #[test]
    fn examples() {
        let sig = Signature::new(2, 1);
        assert_eq!(GlElement::unit(sig, 0, 0).str(), q(1));
        assert_eq!(GlElement::unit(sig, 2, 2).str(), q(-1));
        let h = GlElement::unit(sig, 0, 1).bracket(&GlElement::unit(sig, 1, 0)).unwrap();
        assert_eq!(h, GlElement::from_entries(sig, [(GlIndex::new(0, 0), q(1)), (GlIndex::new(1, 1), q(-1))]));
        let h = GlElement::unit(sig, 0, 2).bracket(&GlElement::unit(sig, 2, 0)).unwrap();
        assert_eq!(h, GlElement::from_entries(sig, [(GlIndex::new(0, 0), q(1)), (GlIndex::new(2, 2), q(1))]));
    }

    #[test]
    fn agrees_with_matrix_supercommutator_and_str_kills_brackets() {
        for sig in [Signature::new(1, 1), Signature::new(2, 1), Signature::new(1, 2)] {
            for a in GlIndex::all(sig) {
                for b in GlIndex::all(sig) {
                    let x = GlElement::unit(sig, a.row, a.col);
                    let y = GlElement::unit(sig, b.row, b.col);
                    let br = x.bracket(&y).unwrap();
                    assert_eq!(br, dense_bracket(&x, &y, a.parity(sig), b.parity(sig)));
                    assert_eq!(br.str(), q(0));
                }
            }
        }
    }

    #[test]
    fn size_mismatch() {
        let a = GlElement::unit(Signature::new(1, 1), 0, 0);
        let b = GlElement::unit(Signature::new(2, 1), 0, 0);
        assert_eq!(a.bracket(&b), Err(Error::SizeMismatch(2, 3)));
    }

    #[test]
    fn grading() {
        let sig = Signature::new(1, 1);
        assert_eq!(GlIndex::new(1, 0).z_degree(sig), -1);
        assert_eq!(GlIndex::new(0, 1).z_degree(sig), 1);
        assert_eq!(GlIndex::new(1, 1).z_degree(sig), 0);
    }
}
