use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Context, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linalg::add_term;
use crate::rational::{fmt_q, sign, Q};

/// An element of A(m|n) (or its Laurent version): a finite sum of monomials
/// with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    pub sig: Signature,
    pub ctx: Context,
    pub terms: BTreeMap<Monomial, Q>,
}

impl SuperPoly {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            ctx: Context::Polynomial,
            terms: BTreeMap::new(),
        }
    }

    pub fn laurent(sig: Signature) -> Self {
        Self {
            ctx: Context::Laurent,
            ..Self::zero(sig)
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::from_monomial(sig, Monomial::one(sig.m), Q::one())
    }

    pub fn from_monomial(sig: Signature, mono: Monomial, c: Q) -> Self {
        let mut p = Self::zero(sig);
        if !mono.is_polynomial() {
            p.ctx = Context::Laurent;
        }
        add_term(&mut p.terms, mono, c);
        p
    }

    /// The coordinate `t_i` (unified index).
    pub fn var(sig: Signature, i: usize) -> Self {
        Self::from_monomial(sig, Monomial::var(sig, i), Q::one())
    }

    /// Build from explicit terms, rejecting negative exponents in the
    /// polynomial context.
    pub fn from_terms(
        sig: Signature,
        ctx: Context,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> Result<Self> {
        let mut p = Self {
            sig,
            ctx,
            terms: BTreeMap::new(),
        };
        for (mono, c) in terms {
            if mono.exps.len() != sig.m || mono.odd.max_index().is_some_and(|k| k >= sig.n) {
                return Err(Error::IndexOutOfRange(format!("monomial {mono} in signature {sig}")));
            }
            if ctx == Context::Polynomial && !mono.is_polynomial() {
                return Err(Error::NegativeExponent);
            }
            add_term(&mut p.terms, mono, c);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn join_ctx(&self, other: &SuperPoly) -> Context {
        self.ctx.max(other.ctx)
    }

    pub fn add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.sig.check(&other.sig)?;
        let mut out = self.clone();
        out.ctx = self.join_ctx(other);
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> SuperPoly {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (m, x) in &self.terms {
            add_term(&mut out.terms, m.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.sig.check(&other.sig)?;
        let mut out = Self::zero(self.sig);
        out.ctx = self.join_ctx(other);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, ab)) = a.mul(b) {
                    add_term(&mut out.terms, ab, sign(neg) * x * y);
                }
            }
        }
        Ok(out)
    }

    /// Left partial derivative `d/dt_i`.
    pub fn derive(&self, i: usize) -> SuperPoly {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (mono, c) in &self.terms {
            if let Some((d, m)) = mono.derive(self.sig, i) {
                add_term(&mut out.terms, m, d * c);
            }
        }
        out
    }

    /// Component of the given parity.
    pub fn part(&self, odd: bool) -> SuperPoly {
        let mut out = self.clone();
        out.terms.retain(|m, _| m.parity() == odd);
        out
    }

    pub fn coeff(&self, mono: &Monomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{}", fmt_q(c), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OddSet;
    use crate::rational::q;

    #[test]
    fn products() {
        let sig = Signature::new(1, 2);
        let t1 = SuperPoly::var(sig, 0);
        let xi1 = SuperPoly::var(sig, 1);
        let xi2 = SuperPoly::var(sig, 2);
        let t1sq = t1.mul(&t1).unwrap();
        assert_eq!(t1sq.coeff(&Monomial::new(&[2], OddSet::EMPTY)), q(1));
        assert!(xi1.mul(&xi1).unwrap().is_zero());
        let p = xi2.mul(&xi1).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.coeff(&Monomial::new(&[0], OddSet::from_indices([0, 1]))), q(-1));
        assert!(t1.mul(&SuperPoly::var(Signature::new(2, 0), 0)).is_err());
    }

    #[test]
    fn derivatives() {
        let sig = Signature::new(1, 2);
        let t1 = SuperPoly::var(sig, 0);
        assert_eq!(t1.mul(&t1).unwrap().derive(0), t1.scale(&q(2)));
        let xi12 = SuperPoly::var(sig, 1).mul(&SuperPoly::var(sig, 2)).unwrap();
        assert_eq!(xi12.derive(1), SuperPoly::var(sig, 2));
    }

    #[test]
    fn polynomial_context_rejects_negative_exponents() {
        let sig = Signature::new(1, 0);
        let m = Monomial::new(&[-1], OddSet::EMPTY);
        assert_eq!(
            SuperPoly::from_terms(sig, Context::Polynomial, [(m.clone(), q(1))]),
            Err(Error::NegativeExponent)
        );
        assert!(SuperPoly::from_terms(sig, Context::Laurent, [(m, q(1))]).is_ok());
    }
}
