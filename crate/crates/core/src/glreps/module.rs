use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{GlIndex, Signature};
use crate::enveloping::{KLetter, LeviSpec};
use crate::linalg::{add_scaled, add_term, Matrix, SparseVec};
use crate::rational::{q, sign, Q};

/// A basis element of a Lie superalgebra acting on finite-dimensional
/// modules: a gl(m|n) matrix unit or a matrix unit of a block of `k`.
pub trait Generator: Ord + Copy + fmt::Debug + fmt::Display {
    fn parity(&self, sig: Signature) -> bool;
    fn bracket(&self, other: &Self, sig: Signature) -> SparseVec<Self>;
    /// Position of this generator in a weight vector when it is a Cartan
    /// element.
    fn cartan(&self) -> Option<usize>;
}

impl Generator for GlIndex {
    fn parity(&self, sig: Signature) -> bool {
        GlIndex::parity(self, sig)
    }

    fn bracket(&self, other: &Self, sig: Signature) -> SparseVec<Self> {
        GlIndex::bracket(self, other, sig)
    }

    fn cartan(&self) -> Option<usize> {
        (self.row == self.col).then_some(self.row)
    }
}

impl Generator for KLetter {
    fn parity(&self, _sig: Signature) -> bool {
        false
    }

    fn bracket(&self, other: &Self, _sig: Signature) -> SparseVec<Self> {
        KLetter::bracket(self, other)
    }

    fn cartan(&self) -> Option<usize> {
        None
    }
}

/// A finite-dimensional module: basis parities and weights plus the sparse
/// action matrices (column `j` is the image of basis vector `j`).
/// Generators missing from `action` act by zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinModule<L: Generator> {
    pub sig: Signature,
    pub generators: Vec<L>,
    pub parities: Vec<bool>,
    pub weights: Vec<Vec<Q>>,
    pub action: BTreeMap<L, Vec<SparseVec<usize>>>,
}

/// A finite-dimensional gl(m|n)-module.
pub type GlModule = FinModule<GlIndex>;
/// A finite-dimensional module over the reductive part `k`.
pub type KModule = FinModule<KLetter>;

impl<L: Generator> FinModule<L> {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn act_basis(&self, l: &L, j: usize) -> SparseVec<usize> {
        self.action.get(l).map(|cols| cols[j].clone()).unwrap_or_default()
    }

    pub fn act(&self, l: &L, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        if let Some(cols) = self.action.get(l) {
            for (j, c) in v {
                add_scaled(&mut out, &cols[*j], c);
            }
        }
        out
    }

    /// Acts with the word `l_1 ... l_k` (the rightmost letter first).
    pub fn act_word(&self, word: &[L], v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut cur = v.clone();
        for l in word.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.act(l, &cur);
        }
        cur
    }

    pub fn is_trivial(&self) -> bool {
        self.action.values().all(|cols| cols.iter().all(|c| c.is_empty()))
    }

    /// Dense matrix of a generator.
    pub fn matrix(&self, l: &L) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        if let Some(cols) = self.action.get(l) {
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col {
                    m.data[*i][j] = c.clone();
                }
            }
        }
        m
    }

    /// Generator pairs `(a, b)` on which
    /// `rho(a) rho(b) - (-1)^{|a||b|} rho(b) rho(a) != rho([a, b])`.
    pub fn bracket_failures(&self) -> Vec<(L, L)> {
        let mut bad = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let s = sign(a.parity(self.sig) && b.parity(self.sig));
                let br = a.bracket(b, self.sig);
                let ok = (0..self.dim()).all(|j| {
                    let e = SparseVec::from([(j, Q::one())]);
                    let mut lhs = self.act(a, &self.act(b, &e));
                    add_scaled(&mut lhs, &self.act(b, &self.act(a, &e)), &-s.clone());
                    for (l, c) in &br {
                        add_scaled(&mut lhs, &self.act(l, &e), &-c.clone());
                    }
                    lhs.is_empty()
                });
                if !ok {
                    bad.push((*a, *b));
                }
            }
        }
        bad
    }

    /// Every generator maps each basis vector to vectors of matching parity,
    /// and Cartan generators act diagonally by the recorded weights.
    pub fn grading_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (l, cols) in &self.action {
            let p = l.parity(self.sig);
            for (j, col) in cols.iter().enumerate() {
                for i in col.keys() {
                    if self.parities[*i] != self.parities[j] ^ p {
                        bad.push(format!("{l} maps basis {j} to basis {i} of the wrong parity"));
                    }
                }
                if let Some(c) = l.cartan() {
                    let expected: SparseVec<usize> = if self.weights[j][c].is_zero() {
                        SparseVec::new()
                    } else {
                        SparseVec::from([(j, self.weights[j][c].clone())])
                    };
                    if *col != expected {
                        bad.push(format!("{l} is not diagonal with the recorded weight on basis {j}"));
                    }
                }
            }
        }
        bad
    }

    /// The parity-changed module.
    pub fn flip_parity(&self) -> Self {
        let mut out = self.clone();
        for p in out.parities.iter_mut() {
            *p = !*p;
        }
        out
    }

    /// A one-dimensional even module on which every generator acts by zero.
    pub fn trivial(sig: Signature, generators: Vec<L>, weight_len: usize) -> Self {
        Self {
            sig,
            generators,
            parities: vec![false],
            weights: vec![vec![Q::zero(); weight_len]],
            action: BTreeMap::new(),
        }
    }

    /// Inserts `c * e_i` into the column of basis `j` for generator `l`.
    pub(crate) fn set(&mut self, l: L, i: usize, j: usize, c: Q) {
        let dim = self.dim();
        let cols = self.action.entry(l).or_insert_with(|| vec![SparseVec::new(); dim]);
        add_term(&mut cols[j], i, c);
    }
}

/// The trivial gl(m|n)-module.
pub fn gl_trivial(sig: Signature) -> GlModule {
    FinModule::trivial(sig, GlIndex::all(sig), sig.dim())
}

/// The one-dimensional module `x . 1 = str(x)`.
pub fn str_module(sig: Signature) -> GlModule {
    let mut m = gl_trivial(sig);
    for i in 0..sig.dim() {
        let c = if sig.is_odd(i) { q(-1) } else { q(1) };
        m.weights[0][i] = c.clone();
        m.set(GlIndex::new(i, i), 0, 0, c);
    }
    m
}

/// The natural module `C^{m|n}`.
pub fn gl_natural(sig: Signature) -> GlModule {
    let d = sig.dim();
    let mut m = FinModule {
        sig,
        generators: GlIndex::all(sig),
        parities: (0..d).map(|k| sig.is_odd(k)).collect(),
        weights: (0..d).map(|k| (0..d).map(|i| if i == k { q(1) } else { q(0) }).collect()).collect(),
        action: BTreeMap::new(),
    };
    for i in 0..d {
        for j in 0..d {
            m.set(GlIndex::new(i, j), i, j, q(1));
        }
    }
    m
}

/// The even generators of gl(m|n), i.e. `gl^0 = gl_m + gl_n`.
pub fn gl0_generators(sig: Signature) -> Vec<GlIndex> {
    GlIndex::all(sig).into_iter().filter(|g| !g.parity(sig)).collect()
}

/// The one-dimensional `gl^0`-module of weight `lambda`: `E_ii` acts by
/// `lambda_i`, off-diagonal generators by zero (a character of
/// `gl_m + gl_n`).
pub fn gl0_character(sig: Signature, lambda: &[Q]) -> GlModule {
    let mut m = FinModule::trivial(sig, gl0_generators(sig), sig.dim());
    for (i, c) in lambda.iter().enumerate() {
        m.weights[0][i] = c.clone();
        if !c.is_zero() {
            m.set(GlIndex::new(i, i), 0, 0, c.clone());
        }
    }
    m
}

/// The `gl^0`-module `C^m (x) chi`: natural for `gl_m`, the character
/// `chi` (on the odd coordinates) for `gl_n`, placed in even parity.
pub fn gl0_natural_even(sig: Signature, chi: &[Q]) -> GlModule {
    let (m, d) = (sig.m, sig.dim());
    let mut out = FinModule {
        sig,
        generators: gl0_generators(sig),
        parities: vec![false; m],
        weights: (0..m)
            .map(|k| {
                (0..d)
                    .map(|i| if i == k { q(1) } else if i >= m { chi[i - m].clone() } else { q(0) })
                    .collect()
            })
            .collect(),
        action: BTreeMap::new(),
    };
    for i in 0..m {
        for j in 0..m {
            out.set(GlIndex::new(i, j), i, j, q(1));
        }
    }
    for (k, c) in chi.iter().enumerate() {
        if !c.is_zero() {
            for v in 0..m {
                out.set(GlIndex::new(m + k, m + k), v, v, c.clone());
            }
        }
    }
    out
}

/// The trivial `k`-module.
pub fn k_trivial(levi: &LeviSpec) -> KModule {
    FinModule::trivial(levi.sig(), levi.k_basis(), 0)
}

/// The natural module of block `b` of `k` (other blocks act by zero).
pub fn k_natural(levi: &LeviSpec, b: usize) -> KModule {
    let size = levi.blocks[b].len();
    let mut out = FinModule {
        sig: levi.sig(),
        generators: levi.k_basis(),
        parities: vec![false; size],
        weights: vec![Vec::new(); size],
        action: BTreeMap::new(),
    };
    for i in 0..size {
        for j in 0..size {
            out.set(KLetter::new(b, i, j), i, j, q(1));
        }
    }
    out
}

/// The one-dimensional `k`-module on which the Cartan element of block
/// `b`, row `i` acts by `values[b][i]`.
pub fn k_character(levi: &LeviSpec, values: &[Vec<Q>]) -> KModule {
    let mut out = k_trivial(levi);
    for (b, vals) in values.iter().enumerate() {
        for (i, c) in vals.iter().enumerate() {
            if !c.is_zero() {
                out.set(KLetter::new(b, i, i), 0, 0, c.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_modules_are_modules() {
        for sig in [Signature::new(1, 1), Signature::new(2, 1), Signature::new(1, 2)] {
            for m in [gl_trivial(sig), str_module(sig), gl_natural(sig)] {
                assert!(m.bracket_failures().is_empty());
                assert!(m.grading_failures().is_empty());
            }
            let v = gl0_natural_even(sig, &vec![q(3); sig.n]);
            assert!(v.bracket_failures().is_empty() && v.grading_failures().is_empty());
        }
        let levi = LeviSpec::new(3, 1, 1, vec![vec![1, 2]]).unwrap();
        assert!(k_natural(&levi, 0).bracket_failures().is_empty());
        assert!(k_character(&levi, &[vec![q(2), q(2)]]).bracket_failures().is_empty());
        // a non-central character of gl_2 is not a module
        assert!(!k_character(&levi, &[vec![q(1), q(0)]]).bracket_failures().is_empty());
    }

    #[test]
    fn str_values() {
        let sig = Signature::new(2, 1);
        let s = str_module(sig);
        assert_eq!(s.act_basis(&GlIndex::new(0, 0), 0), SparseVec::from([(0, q(1))]));
        assert_eq!(s.act_basis(&GlIndex::new(2, 2), 0), SparseVec::from([(0, q(-1))]));
        assert!(!s.is_trivial());
        assert!(gl_trivial(sig).is_trivial());
    }

    #[test]
    fn wrong_action_is_detected() {
        let sig = Signature::new(1, 1);
        let mut m = gl_natural(sig);
        m.set(GlIndex::new(0, 1), 0, 1, q(1));
        assert!(!m.bracket_failures().is_empty());
    }
}
