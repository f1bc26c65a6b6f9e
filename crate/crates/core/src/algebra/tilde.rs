use std::fmt;

use super::{Signature, SuperPoly, VectorField};
use crate::error::Result;
use crate::linalg::add_term;
use crate::rational::sign;

/// An element `x + a` of the extension of W(m|n) by the abelian ideal A(m|n),
/// with `[x, a] = x(a)` and `[a, a'] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeElement {
    pub w: VectorField,
    pub a: SuperPoly,
}

impl TildeElement {
    pub fn zero(sig: Signature) -> Self {
        Self {
            w: VectorField::zero(sig),
            a: SuperPoly::zero(sig),
        }
    }

    pub fn field(w: VectorField) -> Self {
        let sig = w.sig;
        Self {
            w,
            a: SuperPoly::zero(sig),
        }
    }

    pub fn function(a: SuperPoly) -> Self {
        Self {
            w: VectorField::zero(a.sig),
            a,
        }
    }

    pub fn sig(&self) -> Signature {
        self.w.sig
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.a.is_zero()
    }

    /// `[x + a, y + b] = [x, y] + x(b) - (-1)^{|a||y|} y(a)`.
    pub fn bracket(&self, other: &TildeElement) -> Result<TildeElement> {
        self.sig().check(&other.sig())?;
        let w = self.w.bracket(&other.w)?;
        let mut a = self.w.apply(&other.a)?;
        for odd_y in [false, true] {
            let y = other.w.part(odd_y);
            for odd_a in [false, true] {
                let ya = y.apply(&self.a.part(odd_a))?;
                let s = -sign(odd_a && odd_y);
                for (m, c) in ya.terms {
                    add_term(&mut a.terms, m, c * &s);
                }
            }
        }
        Ok(TildeElement { w, a })
    }
}

impl fmt::Display for TildeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})", self.w, self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, OddSet};
    use crate::rational::q;

    #[test]
    fn examples() {
        let sig = Signature::new(2, 0);
        let d1 = TildeElement::field(VectorField::partial(sig, 0));
        let t1 = TildeElement::function(SuperPoly::var(sig, 0));
        let t2 = TildeElement::function(SuperPoly::var(sig, 1));
        assert_eq!(d1.bracket(&t1).unwrap(), TildeElement::function(SuperPoly::one(sig)));
        assert!(t1.bracket(&t2).unwrap().is_zero());
        let e = TildeElement::field(VectorField::euler(sig, 0));
        let t1sq = SuperPoly::from_monomial(sig, Monomial::new(&[2, 0], OddSet::EMPTY), q(1));
        let got = e.bracket(&TildeElement::function(t1sq.clone())).unwrap();
        assert_eq!(got, TildeElement::function(t1sq.scale(&q(2))));
    }

    #[test]
    fn antisymmetry_with_odd_function() {
        let sig = Signature::new(1, 1);
        let x = TildeElement::field(VectorField::partial(sig, 1));
        let a = TildeElement::function(SuperPoly::var(sig, 1));
        // both odd: [x, a] = [a, x] = 1
        let xa = x.bracket(&a).unwrap();
        let ax = a.bracket(&x).unwrap();
        assert_eq!(xa, ax);
        assert_eq!(xa, TildeElement::function(SuperPoly::one(sig)));
    }
}
