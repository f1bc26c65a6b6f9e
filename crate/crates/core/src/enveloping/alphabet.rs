//! Letters and alphabets for U(W), U(W + A) and the quotient algebra
//! `U / J` in which the coefficient algebra acts associatively.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use crate::algebra::{FieldTerm, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::pbw::{Alphabet, Pbw};
use crate::rational::{sign, Q};

/// The Levi data `(q, n, k)`: the even coordinates `1..q` stay in the vector
/// field part, the blocks are the gl factors of `k` (as lists of the
/// remaining even coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeviSpec {
    pub m: usize,
    pub q: usize,
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl LeviSpec {
    pub fn new(m: usize, q: usize, n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::IndexOutOfRange("empty gl block".into()));
            }
            for &i in b {
                if i < q || i >= m || seen[i] {
                    return Err(Error::IndexOutOfRange(format!(
                        "block index {} must be a distinct coordinate in {}..{}",
                        i + 1,
                        q + 1,
                        m
                    )));
                }
                seen[i] = true;
            }
        }
        Ok(Self { m, q, n, blocks })
    }

    /// `q` even coordinates, `n` odd ones and a single `gl_1` block (the
    /// coordinate `q + 1`), the desk-scale default.
    pub fn gl1(q: usize, n: usize) -> Self {
        Self {
            m: q + 1,
            q,
            n,
            blocks: vec![vec![q]],
        }
    }

    /// The signature `(q|n)` of the vector field part.
    pub fn sig(&self) -> Signature {
        Signature::new(self.q, self.n)
    }

    /// Basis of `k`: every matrix unit of every block.
    pub fn k_basis(&self) -> Vec<KLetter> {
        let mut out = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            for r in 0..block.len() {
                for c in 0..block.len() {
                    out.push(KLetter::new(b, r, c));
                }
            }
        }
        out
    }

    /// Cartan elements of `k`.
    pub fn k_cartan(&self) -> Vec<KLetter> {
        self.k_basis().into_iter().filter(|x| x.row == x.col).collect()
    }
}

/// The matrix unit `E_{row,col}` of the `block`-th gl factor of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KLetter {
    pub block: u8,
    pub row: u8,
    pub col: u8,
}

impl KLetter {
    pub fn new(block: usize, row: usize, col: usize) -> Self {
        Self {
            block: block as u8,
            row: row as u8,
            col: col as u8,
        }
    }

    /// `[x, y]` inside `k` (all of `k` is even).
    pub fn bracket(&self, other: &KLetter) -> SparseVec<KLetter> {
        let mut out = SparseVec::new();
        if self.block != other.block {
            return out;
        }
        if self.col == other.row {
            add_term(&mut out, KLetter { col: other.col, ..*self }, Q::one());
        }
        if other.col == self.row {
            add_term(&mut out, KLetter { row: other.row, ..*self }, -Q::one());
        }
        out
    }
}

impl fmt::Display for KLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{}:E{},{}", self.block + 1, self.row + 1, self.col + 1)
    }
}

/// U(k) alphabet.
#[derive(Debug, Clone, Copy)]
pub struct KAlphabet;

impl Alphabet for KAlphabet {
    type Letter = KLetter;

    fn parity(&self, _a: &KLetter) -> bool {
        false
    }

    fn bracket(&self, a: &KLetter, b: &KLetter) -> Vec<(KLetter, Q)> {
        a.bracket(b).into_iter().collect()
    }
}

pub fn uk() -> Pbw<KAlphabet> {
    Pbw::with_cap(KAlphabet, i64::MAX)
}

/// A basis letter: a coefficient function `t^alpha xi_I`, an element
/// `x (x) t^alpha xi_I` of `k (x) A`, or a vector field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Letter {
    A(Monomial),
    K(KLetter, Monomial),
    W(FieldTerm),
}

impl Letter {
    fn block(&self) -> u8 {
        match self {
            Letter::A(_) => 0,
            Letter::K(..) => 1,
            Letter::W(_) => 2,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Letter::A(m) | Letter::K(_, m) => m.degree(),
            Letter::W(t) => t.mono.degree(),
        }
    }
}

/// A-block < (k (x) A)-block < W-block; inside a block, higher total degree
/// first, then direction (or k-letter), exponents and odd set.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.block()
            .cmp(&other.block())
            .then_with(|| other.degree().cmp(&self.degree()))
            .then_with(|| match (self, other) {
                (Letter::A(a), Letter::A(b)) => a.cmp(b),
                (Letter::K(x, a), Letter::K(y, b)) => x.cmp(y).then_with(|| a.cmp(b)),
                (Letter::W(s), Letter::W(t)) => s.dir.cmp(&t.dir).then_with(|| s.mono.cmp(&t.mono)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A(m) => write!(f, "{m}"),
            Letter::K(x, m) => write!(f, "{x}*{m}"),
            Letter::W(t) => write!(f, "{t}"),
        }
    }
}

/// Which algebra the letters generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// U(W): vector field letters only.
    UW,
    /// U(W + A): coefficient letters present but not multiplied.
    UWTilde,
    /// U / J for `W(q|n) + k (x) A + A`: coefficient letters multiply and
    /// the constant function is the identity.
    UBar,
}

/// The alphabet of one of the three enveloping algebras over `sig`.
#[derive(Debug, Clone)]
pub struct LAlphabet {
    pub sig: Signature,
    pub flavor: Flavor,
    /// Number of gl blocks of `k` and their sizes (UBar only).
    pub k_blocks: Vec<usize>,
}

impl LAlphabet {
    pub fn uw(sig: Signature) -> Self {
        Self {
            sig,
            flavor: Flavor::UW,
            k_blocks: Vec::new(),
        }
    }

    pub fn uw_tilde(sig: Signature) -> Self {
        Self {
            sig,
            flavor: Flavor::UWTilde,
            k_blocks: Vec::new(),
        }
    }

    pub fn ubar(levi: &LeviSpec) -> Self {
        Self {
            sig: levi.sig(),
            flavor: Flavor::UBar,
            k_blocks: levi.blocks.iter().map(|b| b.len()).collect(),
        }
    }

    fn mono_parity(m: &Monomial) -> bool {
        m.parity()
    }

    fn w_action(&self, x: &FieldTerm, f: &Monomial) -> Option<(Q, Monomial)> {
        x.apply_monomial(f, self.sig)
    }
}

impl Alphabet for LAlphabet {
    type Letter = Letter;

    fn parity(&self, a: &Letter) -> bool {
        match a {
            Letter::A(m) | Letter::K(_, m) => Self::mono_parity(m),
            Letter::W(t) => t.parity(self.sig),
        }
    }

    fn bracket(&self, a: &Letter, b: &Letter) -> Vec<(Letter, Q)> {
        let sig = self.sig;
        match (a, b) {
            (Letter::W(x), Letter::W(y)) => x.bracket(y, sig).into_iter().map(|(t, c)| (Letter::W(t), c)).collect(),
            (Letter::W(x), Letter::A(f)) => self
                .w_action(x, f)
                .map(|(c, g)| vec![(Letter::A(g), c)])
                .unwrap_or_default(),
            (Letter::A(f), Letter::W(x)) => {
                let s = -sign(f.parity() && x.parity(sig));
                self.w_action(x, f)
                    .map(|(c, g)| vec![(Letter::A(g), c * s)])
                    .unwrap_or_default()
            }
            (Letter::W(x), Letter::K(k, f)) => self
                .w_action(x, f)
                .map(|(c, g)| vec![(Letter::K(*k, g), c)])
                .unwrap_or_default(),
            (Letter::K(k, f), Letter::W(x)) => {
                let s = -sign(f.parity() && x.parity(sig));
                self.w_action(x, f)
                    .map(|(c, g)| vec![(Letter::K(*k, g), c * s)])
                    .unwrap_or_default()
            }
            (Letter::K(x, f), Letter::K(y, g)) => {
                let Some((neg, fg)) = f.mul(g) else {
                    return Vec::new();
                };
                x.bracket(y)
                    .into_iter()
                    .map(|(z, c)| (Letter::K(z, fg.clone()), c * sign(neg)))
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    fn is_unit(&self, a: &Letter) -> bool {
        self.flavor == Flavor::UBar && matches!(a, Letter::A(m) if m.is_one())
    }

    fn merge(&self, a: &Letter, b: &Letter) -> Option<Vec<(Letter, Q)>> {
        if self.flavor != Flavor::UBar {
            return None;
        }
        match (a, b) {
            (Letter::A(f), Letter::A(g)) => Some(match f.mul(g) {
                Some((neg, fg)) => vec![(Letter::A(fg), sign(neg))],
                None => Vec::new(),
            }),
            _ => None,
        }
    }

    fn degree(&self, a: &Letter) -> i64 {
        a.degree()
    }

    fn check(&self, a: &Letter) -> Result<()> {
        let sig = self.sig;
        let fits = |m: &Monomial| {
            m.exps.len() == sig.m && m.is_polynomial() && m.odd.max_index().is_none_or(|k| k < sig.n)
        };
        let ok = match a {
            Letter::W(t) => fits(&t.mono) && t.dir < sig.dim(),
            Letter::A(m) => self.flavor != Flavor::UW && fits(m),
            Letter::K(k, m) => {
                self.flavor == Flavor::UBar
                    && fits(m)
                    && (k.block as usize) < self.k_blocks.len()
                    && (k.row.max(k.col) as usize) < self.k_blocks[k.block as usize]
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AlphabetError(format!("{a} ({:?} over {sig})", self.flavor)))
        }
    }
}
