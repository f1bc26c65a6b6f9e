use std::fmt;

use smallvec::SmallVec;

use super::{tau, OddSet, Signature};
use crate::rational::{q, Q};

/// Whether negative exponents are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Context {
    #[default]
    Polynomial,
    Laurent,
}

/// `t^alpha xi_I`: an exponent row over the even variables and an odd set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub exps: SmallVec<[i32; 4]>,
    pub odd: OddSet,
}

impl Monomial {
    pub fn one(m: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, m),
            odd: OddSet::EMPTY,
        }
    }

    pub fn new(exps: &[i32], odd: OddSet) -> Self {
        Self {
            exps: SmallVec::from_slice(exps),
            odd,
        }
    }

    /// The coordinate `t_i` in the unified index range.
    pub fn var(sig: Signature, i: usize) -> Self {
        let mut mono = Self::one(sig.m);
        if i < sig.m {
            mono.exps[i] = 1;
        } else {
            mono.odd = OddSet::singleton(i - sig.m);
        }
        mono
    }

    pub fn parity(&self) -> bool {
        self.odd.parity()
    }

    /// Total polynomial degree `|alpha| + |I|`.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum::<i64>() + self.odd.len() as i64
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    /// Product of monomials: `None` if the odd parts overlap, otherwise the
    /// sign (`true` for negative) and the product.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if !self.odd.is_disjoint(other.odd) {
            return None;
        }
        let sign = tau(self.odd, other.odd).ok()? % 2 == 1;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((
            sign,
            Monomial {
                exps,
                odd: self.odd.union(other.odd),
            },
        ))
    }

    /// Left partial derivative in direction `i`.
    pub fn derive(&self, sig: Signature, i: usize) -> Option<(Q, Monomial)> {
        if i < sig.m {
            let e = self.exps[i];
            if e == 0 {
                return None;
            }
            let mut out = self.clone();
            out.exps[i] -= 1;
            Some((q(e as i64), out))
        } else {
            let k = i - sig.m;
            if !self.odd.contains(k) {
                return None;
            }
            let c = if self.odd.count_below(k) % 2 == 1 { q(-1) } else { q(1) };
            Some((
                c,
                Monomial {
                    exps: self.exps.clone(),
                    odd: self.odd.without(k),
                },
            ))
        }
    }

    /// Eigenvalue of the Euler operator `d_i = t_i d/dt_i`.
    pub fn euler(&self, sig: Signature, i: usize) -> i64 {
        if i < sig.m {
            self.exps[i] as i64
        } else if self.odd.contains(i - sig.m) {
            1
        } else {
            0
        }
    }

    /// Every polynomial monomial in `sig` with degree at most `deg`.
    pub fn all_up_to(sig: Signature, deg: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        for odd in OddSet::all(sig.n) {
            let rest = deg - odd.len() as i64;
            if rest < 0 {
                continue;
            }
            let mut exps = vec![0i32; sig.m];
            enumerate_exps(&mut exps, 0, rest, &mut |e| out.push(Monomial::new(e, odd)));
        }
        out.sort();
        out
    }
}

/// Calls `f` on every exponent row with entries summing to at most `budget`.
pub(crate) fn enumerate_exps(exps: &mut Vec<i32>, pos: usize, budget: i64, f: &mut dyn FnMut(&[i32])) {
    if pos == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e as i32;
        enumerate_exps(exps, pos + 1, budget - e, f);
    }
    exps[pos] = 0;
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                _ => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        for k in self.odd.iter() {
            parts.push(format!("xi{}", k + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_products_and_derivatives() {
        let sig = Signature::new(1, 2);
        let xi1 = Monomial::var(sig, 1);
        let xi2 = Monomial::var(sig, 2);
        assert!(xi1.mul(&xi1).is_none());
        let (neg, prod) = xi2.mul(&xi1).unwrap();
        assert!(neg);
        assert_eq!(prod.odd, OddSet::from_indices([0, 1]));
        // d/dxi1 (xi1 xi2) = xi2; d/dxi2 (xi1 xi2) = -xi1
        let (c, m) = prod.derive(sig, 1).unwrap();
        assert_eq!((c, m), (q(1), xi2.clone()));
        let (c, m) = prod.derive(sig, 2).unwrap();
        assert_eq!((c, m), (q(-1), xi1));
    }

    #[test]
    fn enumeration_counts() {
        // two even and two odd variables, degree <= 3: 10 + 2*6 + 3 = 25
        assert_eq!(Monomial::all_up_to(Signature::new(2, 2), 3).len(), 25);
    }
}
