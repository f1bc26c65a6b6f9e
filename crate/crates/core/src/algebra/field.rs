use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Monomial, Signature, SuperPoly};
use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::rational::{fmt_q, sign, Q};

/// The basis vector field `t^alpha xi_I d_dir`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldTerm {
    pub mono: Monomial,
    pub dir: usize,
}

impl FieldTerm {
    pub fn new(mono: Monomial, dir: usize) -> Self {
        Self { mono, dir }
    }

    pub fn parity(&self, sig: Signature) -> bool {
        self.mono.parity() ^ sig.is_odd(self.dir)
    }

    /// Polynomial degree of the coefficient.
    pub fn degree(&self) -> i64 {
        self.mono.degree()
    }

    /// `[self, other]` for two basis fields, as a sparse combination.
    pub fn bracket(&self, other: &FieldTerm, sig: Signature) -> SparseVec<FieldTerm> {
        let mut out = SparseVec::new();
        // f d_i(g) d_j
        if let Some((c, dg)) = other.mono.derive(sig, self.dir) {
            if let Some((neg, prod)) = self.mono.mul(&dg) {
                add_term(&mut out, FieldTerm::new(prod, other.dir), sign(neg) * c);
            }
        }
        // - (-1)^{|x||y|} g d_j(f) d_i
        let s = self.parity(sig) && other.parity(sig);
        if let Some((c, df)) = self.mono.derive(sig, other.dir) {
            if let Some((neg, prod)) = other.mono.mul(&df) {
                add_term(&mut out, FieldTerm::new(prod, self.dir), -sign(neg ^ s) * c);
            }
        }
        out
    }

    /// `self(f)` for a monomial `f`: `g * d_dir(f)`.
    pub fn apply_monomial(&self, f: &Monomial, sig: Signature) -> Option<(Q, Monomial)> {
        let (c, df) = f.derive(sig, self.dir)?;
        let (neg, prod) = self.mono.mul(&df)?;
        Some((sign(neg) * c, prod))
    }

    /// Every basis field with coefficient degree at most `deg`.
    pub fn basis(sig: Signature, deg: i64) -> Vec<FieldTerm> {
        let monos = Monomial::all_up_to(sig, deg);
        let mut out: Vec<FieldTerm> = monos
            .iter()
            .flat_map(|m| (0..sig.dim()).map(move |d| FieldTerm::new(m.clone(), d)))
            .collect();
        out.sort();
        out
    }

    pub fn label(&self) -> String {
        let c = if self.mono.is_one() {
            String::new()
        } else {
            format!("{}*", self.mono)
        };
        format!("{c}d{}", self.dir + 1)
    }
}

impl fmt::Display for FieldTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An element of W(m|n): a finite sum of basis fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub sig: Signature,
    pub terms: BTreeMap<FieldTerm, Q>,
}

impl VectorField {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(sig: Signature, mono: Monomial, dir: usize) -> Self {
        Self::from_terms(sig, [(FieldTerm::new(mono, dir), Q::one())])
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (FieldTerm, Q)>) -> Self {
        let mut v = Self::zero(sig);
        for (t, c) in terms {
            add_term(&mut v.terms, t, c);
        }
        v
    }

    /// `d_dir`.
    pub fn partial(sig: Signature, dir: usize) -> Self {
        Self::term(sig, Monomial::one(sig.m), dir)
    }

    /// The Euler field `t_i d_i`.
    pub fn euler(sig: Signature, i: usize) -> Self {
        Self::term(sig, Monomial::var(sig, i), i)
    }

    /// Checks that every monomial and direction fits the signature.
    pub fn validate(&self) -> Result<()> {
        for t in self.terms.keys() {
            if t.dir >= self.sig.dim()
                || t.mono.exps.len() != self.sig.m
                || t.mono.odd.max_index().is_some_and(|k| k >= self.sig.n)
            {
                return Err(Error::IndexOutOfRange(format!("{t} in W({})", self.sig)));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.sig.check(&other.sig)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            add_term(&mut out.terms, t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        Self::from_terms(self.sig, self.terms.iter().map(|(t, x)| (t.clone(), x * c)))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.scale(&-Q::one()))
    }

    /// The component of the given parity.
    pub fn part(&self, odd: bool) -> VectorField {
        let sig = self.sig;
        Self::from_terms(
            sig,
            self.terms
                .iter()
                .filter(|(t, _)| t.parity(sig) == odd)
                .map(|(t, c)| (t.clone(), c.clone())),
        )
    }

    /// Parity if homogeneous (`None` for zero or mixed elements).
    pub fn parity(&self) -> Option<bool> {
        let mut ps = self.terms.keys().map(|t| t.parity(self.sig));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    /// Action on A(m|n) by super-derivations.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.sig.check(&f.sig)?;
        let mut out = SuperPoly::zero(self.sig);
        out.ctx = f.ctx;
        for (t, c) in &self.terms {
            for (m, x) in &f.terms {
                if let Some((d, p)) = t.apply_monomial(m, self.sig) {
                    add_term(&mut out.terms, p, d * c * x);
                }
            }
        }
        Ok(out)
    }

    /// Super-commutator, extended bilinearly.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.sig.check(&other.sig)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (t, c) in a.bracket(b, self.sig) {
                    add_term(&mut out.terms, t, c * &xy);
                }
            }
        }
        Ok(out)
    }

    pub fn coeff(&self, t: &FieldTerm) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| format!("{}*{}", fmt_q(c), t))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
