//! Simple weight modules of the Weyl superalgebra `K(m|n)`: per even
//! coordinate one of `t^lambda C[t^{±1}]` (lambda ∉ Z), `C[t]` or
//! `C[t^{±1}]/C[t]`, and `C[xi]` in every odd coordinate, up to parity.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::{tau, OddSet, Signature, WeylElement, WeylKey};
use crate::error::{Error, Result};
use crate::linalg::{add_term, SparseVec};
use crate::rational::{fmt_q, q, sign, Q};
use crate::weights::{Cone, SupportSet, Weight};

/// The module of one even coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Factor {
    /// `t^lambda C[t^{±1}]` with non-integral `lambda` (stored as a
    /// rational string).
    Shift { lambda: String },
    /// `C[t]`.
    Poly,
    /// `C[t^{±1}] / C[t]`, spanned by the classes of `t^{-1-k}`.
    Quot,
}

impl Factor {
    pub fn shift(lambda: &Q) -> Self {
        Factor::Shift { lambda: fmt_q(lambda) }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Shift { lambda } => write!(f, "shift({lambda})"),
            Factor::Poly => write!(f, "poly"),
            Factor::Quot => write!(f, "quot"),
        }
    }
}

/// A basis vector `t^{base + off} xi_odd` of a described module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PKey {
    pub off: SmallVec<[i64; 4]>,
    pub odd: OddSet,
}

/// A simple weight `K(m|n)`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KDescriptor {
    pub sig: Signature,
    pub factors: Vec<Factor>,
    /// parity change applied to the standard grading (`1` even)
    pub parity: bool,
    bases: Vec<Q>,
}

impl KDescriptor {
    pub fn new(sig: Signature, factors: Vec<Factor>, parity: bool) -> Result<Self> {
        if factors.len() != sig.m {
            return Err(Error::InvalidDescriptor(format!(
                "{} even factors for {} even coordinates",
                factors.len(),
                sig.m
            )));
        }
        let mut bases = Vec::with_capacity(sig.m);
        for f in &factors {
            bases.push(match f {
                Factor::Shift { lambda } => {
                    let l = crate::rational::parse_q(lambda)?;
                    if l.is_integer() {
                        return Err(Error::InvalidDescriptor(format!("shift exponent {lambda} is an integer")));
                    }
                    l
                }
                _ => Q::zero(),
            });
        }
        Ok(Self { sig, factors, parity, bases })
    }

    /// `A(m|n)` itself.
    pub fn polynomial(sig: Signature) -> Self {
        Self::new(sig, vec![Factor::Poly; sig.m], false).expect("valid")
    }

    /// `A^sigma`: all even factors `C[t^{±1}]/C[t]`, parity `n`.
    pub fn sigma_dual(sig: Signature) -> Self {
        Self::new(sig, vec![Factor::Quot; sig.m], sig.n % 2 == 1).expect("valid")
    }

    pub fn base(&self, i: usize) -> &Q {
        &self.bases[i]
    }

    /// Whether the offset `off` is a basis exponent of factor `i`.
    pub fn admits(&self, i: usize, off: i64) -> bool {
        match self.factors[i] {
            Factor::Shift { .. } => true,
            Factor::Poly => off >= 0,
            Factor::Quot => off <= -1,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.iter().all(|f| *f == Factor::Poly)
    }

    /// `A` or `Pi(A)`.
    pub fn is_a_up_to_parity(&self) -> bool {
        self.is_polynomial()
    }

    pub fn is_sigma_dual_up_to_parity(&self) -> bool {
        self.factors.iter().all(|f| *f == Factor::Quot)
    }

    /// Transport along `t_i -> d_i`, `d_i -> (-1)^{|t_i|+1} t_i`: the Euler
    /// weights become `-1 - w`, so `C[t] <-> C[t^{±1}]/C[t]`,
    /// `shift(l) -> shift(-1-l)`; the generating vector moves to the top
    /// odd monomial, flipping parity by `n`.
    pub fn sigma_twist(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .zip(&self.bases)
            .map(|(f, b)| match f {
                Factor::Shift { .. } => Factor::shift(&(-Q::one() - b)),
                Factor::Poly => Factor::Quot,
                Factor::Quot => Factor::Poly,
            })
            .collect();
        Self::new(self.sig, factors, self.parity ^ (self.sig.n % 2 == 1)).expect("twist keeps shifts non-integral")
    }

    pub fn key_parity(&self, k: &PKey) -> bool {
        self.parity ^ k.odd.parity()
    }

    /// Eigenvalues of `t_s d_s` for every coordinate `s`.
    pub fn key_weight(&self, k: &PKey) -> Vec<Q> {
        let mut w: Vec<Q> = (0..self.sig.m).map(|i| &self.bases[i] + Q::from_integer(k.off[i].into())).collect();
        w.extend((0..self.sig.n).map(|j| if k.odd.contains(j) { q(1) } else { q(0) }));
        w
    }

    /// The basis vector of weight `w`, if any (weight spaces are at most
    /// one-dimensional).
    pub fn key_of_weight(&self, w: &[Q]) -> Option<PKey> {
        if w.len() != self.sig.dim() {
            return None;
        }
        let mut off = SmallVec::new();
        for i in 0..self.sig.m {
            let d = &w[i] - &self.bases[i];
            if !d.is_integer() {
                return None;
            }
            let o = crate::rational::to_i64(&d)?;
            if !self.admits(i, o) {
                return None;
            }
            off.push(o);
        }
        let mut odd = OddSet::EMPTY;
        for j in 0..self.sig.n {
            let x = &w[self.sig.m + j];
            if x.is_one() {
                odd = odd.with(j);
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(PKey { off, odd })
    }

    /// Applies the normal-ordered Weyl monomial `key` to a basis vector.
    pub fn apply_key(&self, key: &WeylKey, p: &PKey) -> Option<(Q, PKey)> {
        let sig = self.sig;
        let mut c = Q::one();
        let mut cur = p.clone();
        for &i in key.ann_letters(sig).iter().rev() {
            if i < sig.m {
                let e = &self.bases[i] + Q::from_integer(cur.off[i].into());
                if e.is_zero() || !self.admits(i, cur.off[i] - 1) {
                    return None;
                }
                c *= e;
                cur.off[i] -= 1;
            } else {
                let k = i - sig.m;
                if !cur.odd.contains(k) {
                    return None;
                }
                if cur.odd.count_below(k) % 2 == 1 {
                    c = -c;
                }
                cur.odd = cur.odd.without(k);
            }
        }
        for i in 0..sig.m {
            let e = key.cre.exps[i] as i64;
            if e != 0 {
                if !self.admits(i, cur.off[i] + e) {
                    return None;
                }
                cur.off[i] += e;
            }
        }
        if !key.cre.odd.is_disjoint(cur.odd) {
            return None;
        }
        let s = tau(key.cre.odd, cur.odd).ok()? % 2 == 1;
        cur.odd = cur.odd.union(key.cre.odd);
        Some((sign(s) * c, cur))
    }

    pub fn apply(&self, w: &WeylElement, p: &PKey) -> SparseVec<PKey> {
        let mut out = SparseVec::new();
        for (k, c) in &w.terms {
            if let Some((d, key)) = self.apply_key(k, p) {
                add_term(&mut out, key, c * d);
            }
        }
        out
    }

    /// Support in the even coordinates as a cone: `lambda + Z eps_i`,
    /// `Z_+ eps_i` or `-1 - Z_+ eps_i` per factor.
    pub fn support(&self) -> SupportSet {
        let m = self.sig.m;
        let mut base = Vec::with_capacity(m);
        let (mut free, mut plus) = (Vec::new(), Vec::new());
        for (i, f) in self.factors.iter().enumerate() {
            let mut e = vec![0i64; m];
            match f {
                Factor::Shift { .. } => {
                    base.push(self.bases[i].clone());
                    e[i] = 1;
                    free.push(e);
                }
                Factor::Poly => {
                    base.push(q(0));
                    e[i] = 1;
                    plus.push(e);
                }
                Factor::Quot => {
                    base.push(q(-1));
                    e[i] = -1;
                    plus.push(e);
                }
            }
        }
        SupportSet::single(Cone::new(Weight(base), free, plus).expect("coordinate generators are independent"))
    }

    /// A weight in the even support (all offsets at the factor's corner).
    pub fn corner_weight(&self) -> Weight {
        Weight(
            (0..self.sig.m)
                .map(|i| match self.factors[i] {
                    Factor::Quot => q(-1),
                    _ => self.bases[i].clone(),
                })
                .collect(),
        )
    }

    /// `sum_s d_s P = P`, decided from the factors: `d` is onto for the
    /// shifted Laurent factor and for `C[t]`, misses the class of `t^{-1}`
    /// on the quotient and the constants on `C[xi]`. A weight vector is a
    /// tensor product of factor vectors, so it is hit as soon as one factor
    /// is hit; every vector is hit iff some even factor is onto.
    pub fn sum_of_partials_is_everything(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, Factor::Shift { .. } | Factor::Poly))
    }

    /// Window oracle for [`Self::sum_of_partials_is_everything`]: checks
    /// every weight vector with offsets in `[-radius, radius]` against the
    /// images `d_s (weight + eps_s)`.
    pub fn sum_of_partials_window(&self, radius: i64) -> bool {
        let sig = self.sig;
        let mut all_hit = true;
        for key in self.window_keys(radius) {
            let w = self.key_weight(&key);
            let hit = (0..sig.dim()).any(|s| {
                let mut up = w.clone();
                up[s] += Q::one();
                self.key_of_weight(&up)
                    .is_some_and(|src| !self.apply(&WeylElement::d(sig, s), &src).is_empty())
            });
            all_hit &= hit;
        }
        all_hit
    }

    /// All basis vectors with offsets in `[-radius, radius]`.
    pub fn window_keys(&self, radius: i64) -> Vec<PKey> {
        let sig = self.sig;
        let mut offs: Vec<SmallVec<[i64; 4]>> = vec![SmallVec::new()];
        for i in 0..sig.m {
            offs = offs
                .into_iter()
                .flat_map(|o| {
                    (-radius..=radius).filter(|&x| self.admits(i, x)).map(move |x| {
                        let mut o = o.clone();
                        o.push(x);
                        o
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for o in offs {
            for bits in 0..(1u32 << sig.n) {
                out.push(PKey { off: o.clone(), odd: OddSet::from_bits(bits) });
            }
        }
        out
    }
}

impl fmt::Display for KDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "K({}) [{}]", self.sig, parts.join(", "))?;
        if self.parity {
            write!(f, " parity-changed")?;
        }
        Ok(())
    }
}
