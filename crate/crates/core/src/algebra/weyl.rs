use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{FieldTerm, Monomial, Signature, SuperPoly, VectorField};
use crate::error::Result;
use crate::linalg::{add_term, SparseVec};
use crate::rational::{fmt_q, sign, Q};

/// A normal-ordered Weyl word `t^alpha xi_I d^beta d_J`: the creation part is
/// a monomial, the annihilation part a monomial in the derivations (even
/// powers first, then the odd derivations in ascending order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylKey {
    pub cre: Monomial,
    pub ann: Monomial,
}

impl WeylKey {
    pub fn one(m: usize) -> Self {
        Self {
            cre: Monomial::one(m),
            ann: Monomial::one(m),
        }
    }

    pub fn parity(&self) -> bool {
        self.cre.parity() ^ self.ann.parity()
    }

    /// Order of the differential operator.
    pub fn order(&self) -> i64 {
        self.ann.degree()
    }

    /// The derivations of `ann` in product order (unified indices).
    pub fn ann_letters(&self, sig: Signature) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &b) in self.ann.exps.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, b as usize));
        }
        out.extend(self.ann.odd.iter().map(|k| sig.m + k));
        out
    }
}

impl fmt::Display for WeylKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.cre.is_one() {
            parts.push(self.cre.to_string());
        }
        for (i, &b) in self.ann.exps.iter().enumerate() {
            match b {
                0 => {}
                1 => parts.push(format!("d{}", i + 1)),
                _ => parts.push(format!("d{}^{}", i + 1, b)),
            }
        }
        let m = self.ann.exps.len();
        for k in self.ann.odd.iter() {
            parts.push(format!("d{}", m + k + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Applies the single derivation `d_i` on the left of the normal word
/// `C d_D`: `d_i(C) d_D + (-1)^{|t_i||C|} C (d_i d_D)`.
fn derive_left(sig: Signature, i: usize, key: &WeylKey, c: &Q, out: &mut SparseVec<WeylKey>) {
    if let Some((d, dc)) = key.cre.derive(sig, i) {
        add_term(
            out,
            WeylKey {
                cre: dc,
                ann: key.ann.clone(),
            },
            d * c,
        );
    }
    let odd = sig.is_odd(i);
    let s = odd && key.cre.parity();
    let mut ann = key.ann.clone();
    let mut s2 = false;
    if odd {
        let k = i - sig.m;
        if ann.odd.contains(k) {
            return;
        }
        s2 = ann.odd.count_below(k) % 2 == 1;
        ann.odd = ann.odd.with(k);
    } else {
        ann.exps[i] += 1;
    }
    add_term(
        out,
        WeylKey {
            cre: key.cre.clone(),
            ann,
        },
        sign(s ^ s2) * c,
    );
}

/// An element of the Weyl superalgebra of C^{m|n}, in normal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub sig: Signature,
    pub terms: BTreeMap<WeylKey, Q>,
}

impl WeylElement {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (WeylKey, Q)>) -> Self {
        let mut w = Self::zero(sig);
        for (k, c) in terms {
            add_term(&mut w.terms, k, c);
        }
        w
    }

    pub fn one(sig: Signature) -> Self {
        Self::from_terms(sig, [(WeylKey::one(sig.m), Q::one())])
    }

    pub fn scalar(sig: Signature, c: Q) -> Self {
        Self::from_terms(sig, [(WeylKey::one(sig.m), c)])
    }

    /// Multiplication by a monomial `t^alpha xi_I`.
    pub fn monomial(sig: Signature, mono: Monomial) -> Self {
        Self::from_terms(
            sig,
            [(
                WeylKey {
                    cre: mono,
                    ann: Monomial::one(sig.m),
                },
                Q::one(),
            )],
        )
    }

    /// The coordinate `t_i`.
    pub fn t(sig: Signature, i: usize) -> Self {
        Self::monomial(sig, Monomial::var(sig, i))
    }

    /// The derivation `d_i`.
    pub fn d(sig: Signature, i: usize) -> Self {
        Self::from_terms(
            sig,
            [(
                WeylKey {
                    cre: Monomial::one(sig.m),
                    ann: Monomial::var(sig, i),
                },
                Q::one(),
            )],
        )
    }

    /// The vector field `f d_i` viewed as a first order operator.
    pub fn from_field(x: &VectorField) -> Self {
        let sig = x.sig;
        Self::from_terms(
            sig,
            x.terms.iter().map(|(t, c)| {
                (
                    WeylKey {
                        cre: t.mono.clone(),
                        ann: Monomial::var(sig, t.dir),
                    },
                    c.clone(),
                )
            }),
        )
    }

    pub fn from_field_term(sig: Signature, t: &FieldTerm) -> Self {
        Self::from_field(&VectorField::from_terms(sig, [(t.clone(), Q::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.sig.check(&other.sig)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> WeylElement {
        Self::from_terms(self.sig, self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn part(&self, odd: bool) -> WeylElement {
        Self::from_terms(
            self.sig,
            self.terms
                .iter()
                .filter(|(k, _)| k.parity() == odd)
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    /// Product of two normal words.
    pub fn mul_keys(sig: Signature, a: &WeylKey, b: &WeylKey) -> SparseVec<WeylKey> {
        // move the derivations of `a` across `b`, innermost first
        let mut cur: SparseVec<WeylKey> = SparseVec::new();
        cur.insert(b.clone(), Q::one());
        for &i in a.ann_letters(sig).iter().rev() {
            let mut next = SparseVec::new();
            for (k, c) in &cur {
                derive_left(sig, i, k, c, &mut next);
            }
            cur = next;
        }
        let mut out = SparseVec::new();
        for (k, c) in cur {
            if let Some((neg, cre)) = a.cre.mul(&k.cre) {
                add_term(&mut out, WeylKey { cre, ann: k.ann }, sign(neg) * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.sig.check(&other.sig)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (k, c) in Self::mul_keys(self.sig, a, b) {
                    add_term(&mut out.terms, k, c * &xy);
                }
            }
        }
        Ok(out)
    }

    /// Super-commutator, extended bilinearly over parity components.
    pub fn bracket(&self, other: &WeylElement) -> Result<WeylElement> {
        let mut out = Self::zero(self.sig);
        for pa in [false, true] {
            let a = self.part(pa);
            for pb in [false, true] {
                let b = other.part(pb);
                let ab = a.mul(&b)?;
                let ba = b.mul(&a)?;
                out = out.add(&ab.sub(&ba.scale(&sign(pa && pb)))?)?;
            }
        }
        Ok(out)
    }

    /// Action on polynomials.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.sig.check(&f.sig)?;
        let mut out = SuperPoly::zero(self.sig);
        out.ctx = f.ctx;
        for (k, c) in &self.terms {
            let mut g = f.clone();
            for &i in k.ann_letters(self.sig).iter().rev() {
                g = g.derive(i);
            }
            let g = SuperPoly::from_monomial(self.sig, k.cre.clone(), c.clone()).mul(&g)?;
            out = out.add(&g)?;
        }
        Ok(out)
    }

    /// The automorphism `t_i -> d_i`, `d_i -> (-1)^{|t_i|+1} t_i`.
    pub fn sigma(&self) -> Result<WeylElement> {
        let sig = self.sig;
        let mut out = Self::zero(sig);
        for (k, c) in &self.terms {
            let mut acc = Self::scalar(sig, c.clone());
            let mut letters: Vec<(usize, bool)> = Vec::new();
            for (i, &e) in k.cre.exps.iter().enumerate() {
                letters.extend(std::iter::repeat_n((i, true), e as usize));
            }
            letters.extend(k.cre.odd.iter().map(|j| (sig.m + j, true)));
            letters.extend(k.ann_letters(sig).into_iter().map(|i| (i, false)));
            for (i, creation) in letters {
                let image = if creation {
                    Self::d(sig, i)
                } else {
                    Self::t(sig, i).scale(&sign(!sig.is_odd(i)))
                };
                acc = acc.mul(&image)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    pub fn coeff(&self, k: &WeylKey) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{}*{}", fmt_q(c), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OddSet;
    use crate::rational::q;

    fn key(cre: Monomial, ann: Monomial) -> WeylKey {
        WeylKey { cre, ann }
    }

    #[test]
    fn examples() {
        let sig = Signature::new(1, 1);
        let t1 = WeylElement::t(sig, 0);
        let d1 = WeylElement::d(sig, 0);
        let one = WeylElement::one(sig);
        assert_eq!(d1.mul(&t1).unwrap(), t1.mul(&d1).unwrap().add(&one).unwrap());
        let xi = WeylElement::t(sig, 1);
        let dxi = WeylElement::d(sig, 1);
        let expected = xi.mul(&dxi).unwrap().scale(&q(-1)).add(&one).unwrap();
        assert_eq!(dxi.mul(&xi).unwrap(), expected);
        let e = t1.mul(&d1).unwrap();
        let sq = e.mul(&e).unwrap();
        let t1sq_d1sq = WeylElement::from_terms(sig, [(key(Monomial::new(&[2], OddSet::EMPTY), Monomial::new(&[2], OddSet::EMPTY)), q(1))]);
        assert_eq!(sq, t1sq_d1sq.add(&e).unwrap());
    }

    /// Every generator triple associates, and products agree with the
    /// operator composition on polynomials.
    #[test]
    fn associativity_and_faithful_action() {
        let sig = Signature::new(1, 2);
        let mut gens = Vec::new();
        for i in 0..sig.dim() {
            gens.push(WeylElement::t(sig, i));
            gens.push(WeylElement::d(sig, i));
        }
        let window = Monomial::all_up_to(sig, 3);
        for a in &gens {
            for b in &gens {
                let ab = a.mul(b).unwrap();
                for m in &window {
                    let f = SuperPoly::from_monomial(sig, m.clone(), q(1));
                    assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
                }
                for c in &gens {
                    assert_eq!(ab.mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_commutation_relations() {
        let sig = Signature::new(2, 2);
        for i in 0..sig.dim() {
            for j in 0..sig.dim() {
                let br = WeylElement::d(sig, i).bracket(&WeylElement::t(sig, j)).unwrap();
                let expected = if i == j { WeylElement::one(sig) } else { WeylElement::zero(sig) };
                assert_eq!(br, expected);
                assert!(WeylElement::t(sig, i).bracket(&WeylElement::t(sig, j)).unwrap().is_zero());
                assert!(WeylElement::d(sig, i).bracket(&WeylElement::d(sig, j)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn sigma_is_an_automorphism_with_the_expected_square() {
        let sig = Signature::new(1, 1);
        for i in 0..sig.dim() {
            let t = WeylElement::t(sig, i);
            let twice = t.sigma().unwrap().sigma().unwrap();
            assert_eq!(twice, t.scale(&sign(!sig.is_odd(i))));
            for j in 0..sig.dim() {
                let (a, b) = (WeylElement::d(sig, i), WeylElement::t(sig, j));
                let lhs = a.bracket(&b).unwrap().sigma().unwrap();
                let rhs = a.sigma().unwrap().bracket(&b.sigma().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
