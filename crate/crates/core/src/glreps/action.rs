use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::module::{FinModule, GlModule};
use crate::algebra::{GlIndex, OddSet, Signature, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rational::{fmt_q, q, to_i64, Q};
use crate::tensor::{Factor, KDescriptor, PKey};

/// A gl(m|n)-module with a weight basis, possibly infinite-dimensional:
/// enough structure to build weight windows of tensor modules.
pub trait GlAction {
    type Key: Ord + Clone + fmt::Debug;
    fn gl_sig(&self) -> Signature;
    fn parity_of(&self, k: &Self::Key) -> bool;
    /// Eigenvalues of `E_{s,s}` for every `s`.
    fn weight_of(&self, k: &Self::Key) -> Vec<Q>;
    fn act_gl(&self, e: GlIndex, k: &Self::Key) -> SparseVec<Self::Key>;
    /// A finite set containing the restrictions of all weights to the
    /// even coordinates `0..m`.
    fn even_weights(&self) -> Vec<Vec<Q>>;
    /// All basis vectors whose weight restricts to `nu` on the even
    /// coordinates; `SymbolicOnly` if there are infinitely many.
    fn keys_of_even_weight(&self, nu: &[Q]) -> Result<Vec<Self::Key>>;
}

/// Applies a word of matrix units, rightmost letter first.
pub fn act_gl_word<M: GlAction>(m: &M, word: &[GlIndex], k: &M::Key) -> SparseVec<M::Key> {
    let mut cur: SparseVec<M::Key> = SparseVec::new();
    cur.insert(k.clone(), Q::one());
    for &g in word.iter().rev() {
        let mut next = SparseVec::new();
        for (key, c) in &cur {
            for (img, d) in m.act_gl(g, key) {
                crate::linalg::add_term(&mut next, img, c * d);
            }
        }
        if next.is_empty() {
            return next;
        }
        cur = next;
    }
    cur
}

impl GlAction for GlModule {
    type Key = usize;

    fn gl_sig(&self) -> Signature {
        self.sig
    }

    fn parity_of(&self, k: &usize) -> bool {
        self.parities[*k]
    }

    fn weight_of(&self, k: &usize) -> Vec<Q> {
        self.weights[*k].clone()
    }

    fn act_gl(&self, e: GlIndex, k: &usize) -> SparseVec<usize> {
        self.act_basis(&e, *k)
    }

    fn even_weights(&self) -> Vec<Vec<Q>> {
        let mut ws: Vec<Vec<Q>> = self.weights.iter().map(|w| w[..self.sig.m].to_vec()).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    fn keys_of_even_weight(&self, nu: &[Q]) -> Result<Vec<usize>> {
        Ok((0..self.dim()).filter(|&i| self.weights[i][..self.sig.m] == *nu).collect())
    }
}

/// A simple weight module `P'` of `K(n|m)` viewed as a gl(m|n)-module via
/// `E_{ij} -> t'_i d'_j`, `(t'_1, ..., t'_{m+n}) = (xi_1, ..., xi_m, t_1,
/// ..., t_n)`; optionally cut down to the eigenspace `E = level` of
/// `E = sum_s E_{ss}`.
#[derive(Debug, Clone)]
pub struct KAsGl {
    pub base: KDescriptor,
    pub level: Option<Q>,
    units: BTreeMap<GlIndex, WeylElement>,
}

impl KAsGl {
    pub fn new(base: KDescriptor, level: Option<Q>) -> Self {
        let ksig = base.sig;
        let sig = Signature::new(ksig.n, ksig.m);
        let mut units = BTreeMap::new();
        for g in GlIndex::all(sig) {
            let tw = WeylElement::t(ksig, Self::k_index(sig, g.row))
                .mul(&WeylElement::d(ksig, Self::k_index(sig, g.col)))
                .expect("same signature");
            units.insert(g, tw);
        }
        Self { base, level, units }
    }

    /// The coordinate of `K(n|m)` playing the role of `t'_s`.
    pub fn k_index(sig: Signature, s: usize) -> usize {
        if s < sig.m {
            sig.n + s
        } else {
            s - sig.m
        }
    }

    pub fn level_of(&self, k: &PKey) -> Q {
        self.weight_of(k).into_iter().fold(Q::zero(), |a, b| a + b)
    }

    /// `t'_s` applied to a basis vector (used by the differential).
    pub fn raise(&self, s: usize, k: &PKey) -> SparseVec<PKey> {
        let ksig = self.base.sig;
        let sig = self.gl_sig();
        self.base.apply(&WeylElement::t(ksig, Self::k_index(sig, s)), k)
    }

    /// Whether `P'` is finite-dimensional in each `E`-eigenspace, i.e. `P'`
    /// is `A` or `A^sigma` up to parity (or has no even coordinates).
    pub fn has_finite_levels(&self) -> bool {
        self.base.sig.m == 0 || self.base.is_polynomial() || self.base.is_sigma_dual_up_to_parity()
    }

    /// Basis of the eigenspace `E = level` for finite-level modules.
    pub fn level_keys(&self, level: &Q) -> Result<Vec<PKey>> {
        if !self.has_finite_levels() {
            return Err(Error::SymbolicOnly(format!("{} has infinite-dimensional levels", self.base)));
        }
        let at = KAsGl { level: Some(level.clone()), ..self.clone() };
        let mut out = Vec::new();
        for nu in at.even_weights() {
            out.extend(at.keys_of_even_weight(&nu)?);
        }
        out.sort();
        Ok(out)
    }
}

fn compositions(parts: usize, total: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for k in 0..=total {
        for mut rest in compositions(parts - 1, total - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

impl GlAction for KAsGl {
    type Key = PKey;

    fn gl_sig(&self) -> Signature {
        Signature::new(self.base.sig.n, self.base.sig.m)
    }

    fn parity_of(&self, k: &PKey) -> bool {
        self.base.key_parity(k)
    }

    fn weight_of(&self, k: &PKey) -> Vec<Q> {
        let sig = self.gl_sig();
        let kw = self.base.key_weight(k);
        (0..sig.dim()).map(|s| kw[Self::k_index(sig, s)].clone()).collect()
    }

    fn act_gl(&self, e: GlIndex, k: &PKey) -> SparseVec<PKey> {
        self.base.apply(&self.units[&e], k)
    }

    fn even_weights(&self) -> Vec<Vec<Q>> {
        let m = self.gl_sig().m;
        (0..1u32 << m)
            .map(|bits| (0..m).map(|s| q((bits >> s & 1) as i64)).collect())
            .collect()
    }

    fn keys_of_even_weight(&self, nu: &[Q]) -> Result<Vec<PKey>> {
        let sig = self.gl_sig();
        let mut odd = OddSet::EMPTY;
        for (s, x) in nu.iter().enumerate() {
            if x.is_one() {
                odd = odd.with(s);
            } else if !x.is_zero() {
                return Ok(Vec::new());
            }
        }
        let Some(level) = &self.level else {
            if sig.n == 0 {
                return Ok(vec![PKey { off: SmallVec::new(), odd }]);
            }
            return Err(Error::SymbolicOnly(format!("{} without a fixed level", self.base)));
        };
        // exponents of the even variables t'_{m+1}, ..., t'_{m+n} sum to
        let total = level - Q::from_integer((odd.len() as i64).into());
        let factors = &self.base.factors;
        let finite = sig.n <= 1
            || factors.iter().all(|f| *f == Factor::Poly)
            || factors.iter().all(|f| *f == Factor::Quot);
        if !finite {
            return Err(Error::SymbolicOnly(format!("{} has infinite-dimensional weight spaces", self.base)));
        }
        let base_sum = (0..sig.n).fold(Q::zero(), |a, j| a + self.base.base(j));
        let Some(off_sum) = to_i64(&(total - base_sum)) else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        if sig.n == 0 {
            if off_sum == 0 {
                out.push(PKey { off: SmallVec::new(), odd });
            }
            return Ok(out);
        }
        if sig.n == 1 {
            if self.base.admits(0, off_sum) {
                out.push(PKey { off: SmallVec::from_slice(&[off_sum]), odd });
            }
            return Ok(out);
        }
        let quot = factors[0] == Factor::Quot;
        let total = if quot { -off_sum - sig.n as i64 } else { off_sum };
        if total < 0 {
            return Ok(out);
        }
        for comp in compositions(sig.n, total) {
            let off: SmallVec<[i64; 4]> = comp.iter().map(|&a| if quot { -1 - a } else { a }).collect();
            out.push(PKey { off, odd });
        }
        Ok(out)
    }
}

/// A fundamental gl(m|n)-module `P'[level]`: the `E = level` eigenspace
/// of a simple weight `K(n|m)`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDescriptor {
    pub base: KDescriptor,
    pub level: Q,
}

impl FundamentalDescriptor {
    pub fn gl_sig(&self) -> Signature {
        Signature::new(self.base.sig.n, self.base.sig.m)
    }

    pub fn is_finite(&self) -> bool {
        KAsGl::new(self.base.clone(), None).has_finite_levels()
    }

    /// `A[0]` (up to parity): the trivial module.
    pub fn is_trivial(&self) -> bool {
        self.base.is_polynomial() && self.level.is_zero()
    }

    /// The top level `m - n` of `A^sigma` (up to parity): `Str` or
    /// `Pi(Str)`.
    pub fn is_str_like(&self) -> bool {
        let sig = self.gl_sig();
        self.base.is_sigma_dual_up_to_parity()
            && self.level == Q::from_integer((sig.m as i64 - sig.n as i64).into())
            && !(sig.n == 0 && self.base.is_polynomial() && self.level.is_zero())
    }

    pub fn label(&self) -> String {
        format!("{}[{}]", self.base, fmt_q(&self.level))
    }
}

/// Realizes a finite-dimensional fundamental module; infinite ones are
/// only available symbolically.
pub fn fundamental_module(d: &FundamentalDescriptor) -> Result<GlModule> {
    let real = KAsGl::new(d.base.clone(), Some(d.level.clone()));
    let keys = real.level_keys(&d.level)?;
    let sig = real.gl_sig();
    let pos: BTreeMap<PKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = FinModule {
        sig,
        generators: GlIndex::all(sig),
        parities: keys.iter().map(|k| real.parity_of(k)).collect(),
        weights: keys.iter().map(|k| real.weight_of(k)).collect(),
        action: BTreeMap::new(),
    };
    for g in GlIndex::all(sig) {
        for (j, k) in keys.iter().enumerate() {
            for (img, c) in real.act_gl(g, k) {
                let i = *pos.get(&img).expect("gl preserves the level");
                out.set(g, i, j, c);
            }
        }
    }
    Ok(out)
}
