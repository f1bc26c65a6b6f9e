//! The enveloping algebra of gl(m|n) with PBW order gl^{-1} < gl^0 < gl^1.

use std::fmt;

use crate::algebra::{GlIndex, Signature};
use crate::pbw::{Alphabet, Env, Pbw};
use crate::rational::Q;

/// A matrix unit tagged with its Z-degree so that the derived order puts
/// gl^{-1} first and gl^1 last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlLetter {
    pub z: i8,
    pub idx: GlIndex,
}

impl GlLetter {
    pub fn new(sig: Signature, idx: GlIndex) -> Self {
        Self {
            z: idx.z_degree(sig) as i8,
            idx,
        }
    }

    pub fn unit(sig: Signature, row: usize, col: usize) -> Self {
        Self::new(sig, GlIndex::new(row, col))
    }
}

impl fmt::Display for GlLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.idx)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GlAlphabet {
    pub sig: Signature,
}

impl Alphabet for GlAlphabet {
    type Letter = GlLetter;

    fn parity(&self, a: &GlLetter) -> bool {
        a.idx.parity(self.sig)
    }

    fn bracket(&self, a: &GlLetter, b: &GlLetter) -> Vec<(GlLetter, Q)> {
        a.idx
            .bracket(&b.idx, self.sig)
            .into_iter()
            .map(|(k, c)| (GlLetter::new(self.sig, k), c))
            .collect()
    }

    fn check(&self, a: &GlLetter) -> crate::Result<()> {
        let d = self.sig.dim();
        if a.idx.row >= d || a.idx.col >= d || a.z as i32 != a.idx.z_degree(self.sig) {
            return Err(crate::Error::AlphabetError(format!("{a} in gl({})", self.sig)));
        }
        Ok(())
    }
}

/// PBW engine for U(gl(m|n)); no degree cap applies to gl words.
pub fn ugl(sig: Signature) -> Pbw<GlAlphabet> {
    Pbw::with_cap(GlAlphabet { sig }, i64::MAX)
}

pub type GlWord = Vec<GlLetter>;
pub type UGl = Env<GlLetter>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn odd_square_and_reordering() {
        let sig = Signature::new(1, 1);
        let p = ugl(sig);
        let e12 = GlLetter::unit(sig, 0, 1);
        let e21 = GlLetter::unit(sig, 1, 0);
        // E12 E12 = [E12,E12]/2 = 0
        assert!(p.normal_word(&[e12, e12]).unwrap().is_zero());
        // E12 E21 = -E21 E12 + E11 + E22
        let n = p.normal_word(&[e12, e21]).unwrap();
        let mut expected = UGl::word(vec![e21, e12], q(-1));
        expected.add_word(vec![GlLetter::unit(sig, 0, 0)], q(1));
        expected.add_word(vec![GlLetter::unit(sig, 1, 1)], q(1));
        assert_eq!(n, expected);
    }

    #[test]
    fn products_associate() {
        let sig = Signature::new(2, 1);
        let p = ugl(sig);
        let letters: Vec<GlLetter> = GlIndex::all(sig).into_iter().map(|i| GlLetter::new(sig, i)).collect();
        for a in &letters {
            for b in &letters {
                for c in letters.iter().step_by(2) {
                    let (ea, eb, ec) = (UGl::letter(*a), UGl::letter(*b), UGl::letter(*c));
                    let left = p.mul(&p.mul(&ea, &eb).unwrap(), &ec).unwrap();
                    let right = p.mul(&ea, &p.mul(&eb, &ec).unwrap()).unwrap();
                    assert_eq!(left, right);
                    assert_eq!(left, p.normal_word(&[*a, *b, *c]).unwrap());
                }
            }
        }
    }
}
