//! Generic PBW normal ordering for enveloping algebras presented by an
//! ordered alphabet of homogeneous basis letters.
//!
//! A word is in normal form when its letters are non-decreasing for the
//! alphabet order, no odd letter repeats, no unit letter occurs and no
//! adjacent pair can be merged. Rewriting applies, at the leftmost reducible
//! position:
//!
//! * drop a unit letter,
//! * merge an adjacent pair (used for the associative coefficient letters of
//!   the quotient algebra),
//! * swap an out-of-order pair `a b = (-1)^{|a||b|} b a + [a, b]`,
//! * replace the square of an odd letter by `[a, a] / 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::add_term;
use crate::rational::{fmt_q, qr, sign, Q};

/// Default cap on the degree of any intermediate word.
pub const DEFAULT_DEGREE_CAP: i64 = 6;

/// The degree cap in force: `WITTSUPER_MAX_DEGREE` if set, else the default.
pub fn degree_cap() -> i64 {
    std::env::var("WITTSUPER_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

/// An ordered basis of a Lie superalgebra (plus optional associative
/// relations between adjacent letters).
pub trait Alphabet {
    type Letter: Ord + Clone + fmt::Debug + fmt::Display;

    fn parity(&self, a: &Self::Letter) -> bool;

    /// `[a, b]` as a combination of letters.
    fn bracket(&self, a: &Self::Letter, b: &Self::Letter) -> Vec<(Self::Letter, Q)>;

    /// Letters equal to the identity of the algebra.
    fn is_unit(&self, _a: &Self::Letter) -> bool {
        false
    }

    /// Product of an adjacent pair when it reduces to a combination of
    /// letters; `None` when the pair is not subject to such a relation.
    fn merge(&self, _a: &Self::Letter, _b: &Self::Letter) -> Option<Vec<(Self::Letter, Q)>> {
        None
    }

    /// Degree used for the intermediate-word cap.
    fn degree(&self, _a: &Self::Letter) -> i64 {
        0
    }

    /// Rejects letters that do not belong to the algebra.
    fn check(&self, _a: &Self::Letter) -> Result<()> {
        Ok(())
    }
}

pub type Word<L> = Vec<L>;

/// A finite combination of words.
#[derive(Clone, PartialEq, Eq)]
pub struct Env<L: Ord + Clone> {
    pub terms: BTreeMap<Word<L>, Q>,
}

impl<L: Ord + Clone> Default for Env<L> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Ord + Clone + fmt::Debug> fmt::Debug for Env<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<L: Ord + Clone> Env<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Q::one())
    }

    pub fn word(w: Word<L>, c: Q) -> Self {
        let mut e = Self::zero();
        add_term(&mut e.terms, w, c);
        e
    }

    pub fn letter(l: L) -> Self {
        Self::word(vec![l], Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_word(&mut self, w: Word<L>, c: Q) {
        add_term(&mut self.terms, w, c);
    }

    pub fn add(&self, other: &Env<L>) -> Env<L> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Env<L> {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            add_term(&mut out.terms, w.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Env<L>) -> Env<L> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Concatenation product (not normal ordered).
    pub fn concat(&self, other: &Env<L>) -> Env<L> {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                add_term(&mut out.terms, w, x * y);
            }
        }
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl<L: Ord + Clone + fmt::Display> fmt::Display for Env<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w.iter().map(|l| format!("({l})")).collect();
                if letters.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{}*{}", fmt_q(c), letters.join("."))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal ordering engine for one alphabet.
pub struct Pbw<A: Alphabet> {
    pub alphabet: A,
    pub cap: i64,
}

impl<A: Alphabet> Pbw<A> {
    pub fn new(alphabet: A) -> Self {
        Self {
            alphabet,
            cap: degree_cap(),
        }
    }

    pub fn with_cap(alphabet: A, cap: i64) -> Self {
        Self { alphabet, cap }
    }

    fn word_degree(&self, w: &[A::Letter]) -> i64 {
        w.iter().map(|l| self.alphabet.degree(l)).sum()
    }

    fn check_degree(&self, w: &[A::Letter]) -> Result<()> {
        let degree = self.word_degree(w);
        if degree > self.cap {
            return Err(Error::DegreeCapExceeded { degree, cap: self.cap });
        }
        Ok(())
    }

    /// One rewriting step on a word; `None` if the word is normal.
    fn step(&self, w: &[A::Letter]) -> Option<Vec<(Word<A::Letter>, Q)>> {
        let al = &self.alphabet;
        if let Some(p) = w.iter().position(|l| al.is_unit(l)) {
            let mut v = w.to_vec();
            v.remove(p);
            return Some(vec![(v, Q::one())]);
        }
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (&w[p], &w[p + 1]);
            let splice = |mid: Vec<A::Letter>| {
                let mut v = w[..p].to_vec();
                v.extend(mid);
                v.extend(w[p + 2..].iter().cloned());
                v
            };
            if let Some(merged) = al.merge(a, b) {
                return Some(merged.into_iter().map(|(l, c)| (splice(vec![l]), c)).collect());
            }
            if a > b {
                let mut out = vec![(
                    splice(vec![b.clone(), a.clone()]),
                    sign(al.parity(a) && al.parity(b)),
                )];
                out.extend(al.bracket(a, b).into_iter().map(|(l, c)| (splice(vec![l]), c)));
                return Some(out);
            }
            if a == b && al.parity(a) {
                let half = qr(1, 2);
                return Some(
                    al.bracket(a, b)
                        .into_iter()
                        .map(|(l, c)| (splice(vec![l]), c * &half))
                        .collect(),
                );
            }
        }
        None
    }

    /// The normal form of a single word.
    pub fn normal_word(&self, w: &[A::Letter]) -> Result<Env<A::Letter>> {
        for l in w {
            self.alphabet.check(l)?;
        }
        let mut out = Env::zero();
        let mut stack: Vec<(Word<A::Letter>, Q)> = vec![(w.to_vec(), Q::one())];
        while let Some((w, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            self.check_degree(&w)?;
            match self.step(&w) {
                None => out.add_word(w, c),
                Some(items) => {
                    for (v, x) in items {
                        stack.push((v, x * &c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normal_order(&self, e: &Env<A::Letter>) -> Result<Env<A::Letter>> {
        let mut out = Env::zero();
        for (w, c) in &e.terms {
            let n = self.normal_word(w)?;
            for (v, x) in n.terms {
                out.add_word(v, x * c);
            }
        }
        Ok(out)
    }

    /// Normal-ordered product.
    pub fn mul(&self, a: &Env<A::Letter>, b: &Env<A::Letter>) -> Result<Env<A::Letter>> {
        self.normal_order(&a.concat(b))
    }

    pub fn word_parity(&self, w: &[A::Letter]) -> bool {
        w.iter().fold(false, |p, l| p ^ self.alphabet.parity(l))
    }

    /// Super-commutator of two elements, split by parity.
    pub fn bracket(&self, a: &Env<A::Letter>, b: &Env<A::Letter>) -> Result<Env<A::Letter>> {
        let mut out = Env::zero();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                let s = self.word_parity(u) && self.word_parity(v);
                let uv = Env::word(u.iter().chain(v).cloned().collect(), x * y);
                let vu = Env::word(v.iter().chain(u).cloned().collect(), sign(s) * x * y);
                out = out.add(&uv.sub(&vu));
            }
        }
        self.normal_order(&out)
    }

    /// Whether every word is normal.
    pub fn is_normal(&self, e: &Env<A::Letter>) -> bool {
        e.terms.keys().all(|w| self.step(w).is_none())
    }
}
