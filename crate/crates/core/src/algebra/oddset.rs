use std::fmt;

use crate::error::{Error, Result};

/// A subset of the odd indices, stored as a bitmask; iteration is ascending.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddSet(u32);

impl OddSet {
    pub const EMPTY: OddSet = OddSet(0);

    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn singleton(k: usize) -> Self {
        Self(1 << k)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Self(it.into_iter().fold(0, |acc, k| acc | (1 << k)))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn parity(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn with(&self, k: usize) -> Self {
        Self(self.0 | 1 << k)
    }

    pub fn without(&self, k: usize) -> Self {
        Self(self.0 & !(1 << k))
    }

    pub fn union(&self, o: OddSet) -> Self {
        Self(self.0 | o.0)
    }

    pub fn minus(&self, o: OddSet) -> Self {
        Self(self.0 & !o.0)
    }

    pub fn is_disjoint(&self, o: OddSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(&self, o: OddSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// Number of elements strictly below `k`.
    pub fn count_below(&self, k: usize) -> usize {
        (self.0 & ((1u32 << k) - 1)).count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..32).filter(move |k| bits >> k & 1 == 1)
    }

    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// All subsets of `{0..n}`, in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = OddSet> {
        (0..1u32 << n).map(OddSet)
    }

    /// All subsets of `self`.
    pub fn subsets(&self) -> Vec<OddSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = self.0;
        loop {
            out.push(OddSet(s));
            if s == 0 {
                break;
            }
            s = (s - 1) & self.0;
        }
        out.reverse();
        out
    }
}

impl fmt::Display for OddSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|k| (k + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Inversion count of the sequence (sorted `i`, then sorted `j`); the sign of
/// `xi_I xi_J = (-1)^tau(I,J) xi_{I u J}`.
pub fn tau(i: OddSet, j: OddSet) -> Result<u32> {
    if !i.is_disjoint(j) {
        return Err(Error::OverlappingSets);
    }
    Ok(j.iter().map(|b| i.len() as u32 - i.count_below(b) as u32).sum())
}

/// Inversion count of an arbitrary sequence.
pub fn tau_sequence(seq: &[usize]) -> u32 {
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> OddSet {
        OddSet::from_indices(v.iter().map(|k| k - 1))
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(OddSet::EMPTY, OddSet::EMPTY).unwrap(), 0);
        assert_eq!(tau(set(&[2]), set(&[1])).unwrap(), 1);
        // brute force over the concatenation (1,3,2,4)
        assert_eq!(tau_sequence(&[1, 3, 2, 4]), 1);
        assert_eq!(tau(set(&[1, 3]), set(&[2, 4])).unwrap(), 1);
        assert_eq!(tau(set(&[1]), set(&[1, 2])), Err(Error::OverlappingSets));
    }

    #[test]
    fn tau_matches_concatenated_inversions() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                if a & b != 0 {
                    continue;
                }
                let (i, j) = (OddSet(a), OddSet(b));
                let seq: Vec<usize> = i.iter().chain(j.iter()).collect();
                assert_eq!(tau(i, j).unwrap(), tau_sequence(&seq));
            }
        }
    }

    #[test]
    fn subsets_enumerated() {
        assert_eq!(set(&[1, 3]).subsets(), vec![set(&[]), set(&[1]), set(&[3]), set(&[1, 3])]);
    }
}
