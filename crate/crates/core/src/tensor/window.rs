//! Tensor modules `F(P, M) = (P (x) M)^pi` and `F(F(P, M), S)` realized on
//! weight windows. Basis vectors are triples `p (x) v (x) s`; images of the
//! action are computed symbolically, so nothing is truncated at the window
//! boundary: the window only selects which basis vectors are enumerated.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::descriptor::{KDescriptor, PKey};
use super::pi::{pi_w, TElem, TensorAlgebra};
use crate::algebra::{OddSet, Signature, VectorField, WeylElement};
use crate::error::{Error, Result};
use crate::glreps::{act_gl_word, GlAction, KAsGl, KModule};
use crate::linalg::{add_term, SparseVec};
use crate::rational::{fmt_q, sign, Q};

/// Default bound on the number of basis vectors of a window.
pub const DEFAULT_BUDGET: usize = 4096;

/// A box of weights over the even coordinates: `base + [lo, hi]` per
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSpec {
    pub base: Vec<Q>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl WindowSpec {
    pub fn new(base: Vec<Q>, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if base.len() != lo.len() || lo.len() != hi.len() {
            return Err(Error::SizeMismatch(base.len(), lo.len().max(hi.len())));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::Parse(format!("empty window interval in coordinate {}", i + 1)));
        }
        Ok(Self { base, lo, hi })
    }

    /// `base + [-radius, radius]^m`.
    pub fn cube(base: Vec<Q>, radius: i64) -> Self {
        let m = base.len();
        Self {
            base,
            lo: vec![-radius; m],
            hi: vec![radius; m],
        }
    }

    /// The window enlarged by `r` in every coordinate.
    pub fn grow(&self, r: i64) -> Self {
        Self {
            base: self.base.clone(),
            lo: self.lo.iter().map(|x| x - r).collect(),
            hi: self.hi.iter().map(|x| x + r).collect(),
        }
    }

    pub fn weights(&self) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = vec![Vec::new()];
        for i in 0..self.base.len() {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (self.lo[i]..=self.hi[i]).map(move |k| {
                        let mut w = w.clone();
                        w.push(&self.base[i] + Q::from_integer(k.into()));
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, w: &[Q]) -> bool {
        w.len() == self.base.len()
            && (0..w.len()).all(|i| {
                let d = &w[i] - &self.base[i];
                d.is_integer() && d >= Q::from_integer(self.lo[i].into()) && d <= Q::from_integer(self.hi[i].into())
            })
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.base.len())
            .map(|i| format!("{}+[{},{}]", fmt_q(&self.base[i]), self.lo[i], self.hi[i]))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A basis vector `p (x) v (x) s` (`s` is 0 without a `k`-module).
pub type BKey<K> = (PKey, K, usize);
pub type WVec<K> = SparseVec<BKey<K>>;

/// `F(P, M)` (or `F(F(P, M), S)` when `s` is present) with the weight
/// spaces of a window enumerated.
#[derive(Debug, Clone)]
pub struct TensorWindow<M: GlAction> {
    pub p: KDescriptor,
    pub m: M,
    pub s: Option<KModule>,
    pub spec: WindowSpec,
    pub spaces: BTreeMap<Vec<Q>, Vec<BKey<M::Key>>>,
}

impl<M: GlAction> TensorWindow<M> {
    pub fn new(p: KDescriptor, m: M, s: Option<KModule>, spec: WindowSpec, budget: usize) -> Result<Self> {
        if p.sig != m.gl_sig() {
            return Err(Error::SignatureMismatch(p.sig.to_string(), m.gl_sig().to_string()));
        }
        if spec.base.len() != p.sig.m {
            return Err(Error::SizeMismatch(spec.base.len(), p.sig.m));
        }
        let mut out = Self {
            p,
            m,
            s,
            spec,
            spaces: BTreeMap::new(),
        };
        let mut size = 0;
        for w in out.spec.weights() {
            let basis = out.basis_at(&w)?;
            size += basis.len();
            if size > budget {
                return Err(Error::WindowTooLarge { size, budget });
            }
            if !basis.is_empty() {
                out.spaces.insert(w, basis);
            }
        }
        Ok(out)
    }

    pub fn sig(&self) -> Signature {
        self.p.sig
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    fn s_dim(&self) -> usize {
        self.s.as_ref().map_or(1, |s| s.dim())
    }

    /// Basis of the weight space of even weight `w` (any weight, inside the
    /// window or not).
    pub fn basis_at(&self, w: &[Q]) -> Result<Vec<BKey<M::Key>>> {
        let sig = self.sig();
        let mut out = Vec::new();
        for nu in self.m.even_weights() {
            let pw: Vec<Q> = (0..sig.m).map(|i| &w[i] - &nu[i]).collect();
            let mut full = pw.clone();
            full.extend(std::iter::repeat_n(Q::zero(), sig.n));
            let Some(p0) = self.p.key_of_weight(&full) else { continue };
            let mkeys = self.m.keys_of_even_weight(&nu)?;
            for odd in OddSet::all(sig.n) {
                let pk = PKey { off: p0.off.clone(), odd };
                for mk in &mkeys {
                    for s in 0..self.s_dim() {
                        out.push((pk.clone(), mk.clone(), s));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Even weight of a basis vector.
    pub fn weight_of(&self, b: &BKey<M::Key>) -> Vec<Q> {
        let pw = self.p.key_weight(&b.0);
        let mw = self.m.weight_of(&b.1);
        (0..self.sig().m).map(|i| &pw[i] + &mw[i]).collect()
    }

    pub fn parity_of(&self, b: &BKey<M::Key>) -> bool {
        let s = self.s.as_ref().is_some_and(|s| s.parities[b.2]);
        self.p.key_parity(&b.0) ^ self.m.parity_of(&b.1) ^ s
    }

    /// Action of `w (x) g (x) k` on `p (x) v (x) s`:
    /// `(-1)^{|g||p|} wp (x) gv (x) ks` (`k` is even).
    pub fn act(&self, x: &TElem, v: &WVec<M::Key>) -> WVec<M::Key> {
        let mut out = WVec::new();
        for ((pk, mk, sk), c) in v {
            for ((w, g, k), d) in &x.terms {
                let simg: SparseVec<usize> = if k.is_empty() {
                    SparseVec::from([(*sk, Q::one())])
                } else {
                    match &self.s {
                        Some(s) => s.act_word(k, &SparseVec::from([(*sk, Q::one())])),
                        None => SparseVec::new(),
                    }
                };
                if simg.is_empty() {
                    continue;
                }
                let Some((pc, pimg)) = self.p.apply_key(w, pk) else { continue };
                let word: Vec<_> = g.iter().map(|l| l.idx).collect();
                let gl_odd = g.iter().filter(|l| l.idx.parity(self.sig())).count() % 2 == 1;
                let mimg = act_gl_word(&self.m, &word, mk);
                let base = c * d * pc * sign(gl_odd && self.p.key_parity(pk));
                for (mi, mc) in &mimg {
                    for (si, sc) in &simg {
                        add_term(&mut out, (pimg.clone(), mi.clone(), *si), &base * mc * sc);
                    }
                }
            }
        }
        out
    }

    pub fn act_field(&self, ta: &TensorAlgebra, x: &VectorField, v: &WVec<M::Key>) -> Result<WVec<M::Key>> {
        Ok(self.act(&pi_w(ta, x)?, v))
    }

    /// All window basis vectors as unit vectors.
    pub fn basis_vectors(&self) -> impl Iterator<Item = WVec<M::Key>> + '_ {
        self.spaces
            .values()
            .flatten()
            .map(|b| WVec::from([(b.clone(), Q::one())]))
    }

    /// Weight-space dimensions of the window.
    pub fn dims(&self) -> Vec<(Vec<Q>, usize)> {
        self.spaces.iter().map(|(w, b)| (w.clone(), b.len())).collect()
    }
}

/// `diff = sum_{i<=m} d_i (x) xi'_i - sum_{i<=n} d_{m+i} (x) t'_i` acting
/// on `F(P, P')`: `p (x) p' -> sum_s c_s (-1)^{|t'_s||p|} d_s p (x) t'_s p'`.
pub fn diff_apply(p: &KDescriptor, pp: &KAsGl, v: &WVec<PKey>) -> WVec<PKey> {
    let sig = p.sig;
    let mut out = WVec::new();
    for ((pk, mk, sk), c) in v {
        for s in 0..sig.dim() {
            let t_odd = s < sig.m;
            let cs = sign(s >= sig.m) * sign(t_odd && p.key_parity(pk));
            let dp = p.apply(&WeylElement::d(sig, s), pk);
            if dp.is_empty() {
                continue;
            }
            let tp = pp.raise(s, mk);
            for (pi, pc) in &dp {
                for (ti, tc) in &tp {
                    add_term(&mut out, (pi.clone(), ti.clone(), *sk), c * &cs * pc * tc);
                }
            }
        }
    }
    out
}

impl TensorWindow<KAsGl> {
    pub fn diff(&self, v: &WVec<PKey>) -> WVec<PKey> {
        diff_apply(&self.p, &self.m, v)
    }
}

/// Result of the `diff` identity checks on a window.
#[derive(Debug, Clone)]
pub struct DiffReport {
    pub window_dim: usize,
    pub fields: usize,
    pub square_failures: usize,
    pub commutation_failures: Vec<String>,
}

impl DiffReport {
    pub fn holds(&self) -> bool {
        self.square_failures == 0 && self.commutation_failures.is_empty()
    }
}

/// Checks `diff^2 = 0` and `diff pi(x) = (-1)^{|x|} pi(x) diff` on every
/// window basis vector, for every basis field `x` of degree at most
/// `degree`.
pub fn check_diff(win: &TensorWindow<KAsGl>, degree: i64) -> Result<DiffReport> {
    let sig = win.sig();
    let ta = TensorAlgebra::new(sig);
    let fields = crate::algebra::FieldTerm::basis(sig, degree);
    let images: Vec<(bool, TElem)> = fields
        .iter()
        .map(|t| (t.parity(sig), super::pi::pi_term(&ta, t, super::pi::SignRule::RESOLVED)))
        .collect();
    let mut report = DiffReport {
        window_dim: win.dim(),
        fields: fields.len(),
        square_failures: 0,
        commutation_failures: Vec::new(),
    };
    for v in win.basis_vectors() {
        let dv = win.diff(&v);
        if !win.diff(&dv).is_empty() {
            report.square_failures += 1;
        }
        for (t, (odd, x)) in fields.iter().zip(&images) {
            let lhs = win.diff(&win.act(x, &v));
            let mut rhs = win.act(x, &dv);
            if *odd {
                rhs = rhs.into_iter().map(|(k, c)| (k, -c)).collect();
            }
            if lhs != rhs {
                report.commutation_failures.push(format!("{t} on {:?}", v.keys().next()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::glreps::{gl_natural, gl_trivial};
    use crate::rational::{q, qr};
    use crate::tensor::Factor;

    #[test]
    fn dimension_formula_and_weights() {
        let sig = Signature::new(1, 1);
        let p = KDescriptor::new(sig, vec![Factor::shift(&qr(1, 3))], false).unwrap();
        let m = gl_natural(sig);
        let win = TensorWindow::new(p.clone(), m.clone(), None, WindowSpec::cube(vec![qr(1, 3)], 2), DEFAULT_BUDGET).unwrap();
        for (w, basis) in &win.spaces {
            // sum over mu + nu = gamma of dim P_mu dim M_nu (P_mu has the
            // two odd monomials)
            let expected: usize = m
                .weights
                .iter()
                .filter(|nu| p.key_of_weight(&[&w[0] - &nu[0], q(0)]).is_some())
                .count()
                * 2;
            assert_eq!(basis.len(), expected);
            for b in basis {
                assert_eq!(&win.weight_of(b), w);
            }
        }
        // d_1 acts on p (x) v by the weight
        let ta = TensorAlgebra::new(sig);
        let d1 = VectorField::euler(sig, 0);
        for v in win.basis_vectors() {
            let b = v.keys().next().unwrap().clone();
            let img = win.act_field(&ta, &d1, &v).unwrap();
            let w = win.weight_of(&b)[0].clone();
            assert_eq!(img, WVec::from([(b, w)]));
        }
    }

    #[test]
    fn polynomial_with_trivial_is_the_natural_module() {
        let sig = Signature::new(1, 1);
        let p = KDescriptor::polynomial(sig);
        let win = TensorWindow::new(p.clone(), gl_trivial(sig), None, WindowSpec::cube(vec![q(0)], 3), DEFAULT_BUDGET).unwrap();
        let ta = TensorAlgebra::new(sig);
        for t in crate::algebra::FieldTerm::basis(sig, 2) {
            let x = VectorField::term(sig, t.mono.clone(), t.dir);
            let w = WeylElement::from_field(&x);
            for v in win.basis_vectors() {
                let (b, _) = v.iter().next().unwrap();
                let expected: WVec<usize> = p.apply(&w, &b.0).into_iter().map(|(k, c)| ((k, 0, 0), c)).collect();
                assert_eq!(win.act_field(&ta, &x, &v).unwrap(), expected);
            }
        }
        let _ = Monomial::one(1);
    }

    #[test]
    fn budget_is_enforced() {
        let sig = Signature::new(1, 1);
        let p = KDescriptor::new(sig, vec![Factor::shift(&qr(1, 2))], false).unwrap();
        let r = TensorWindow::new(p, gl_natural(sig), None, WindowSpec::cube(vec![qr(1, 2)], 10), 8);
        assert!(matches!(r, Err(Error::WindowTooLarge { budget: 8, .. })));
    }

    #[test]
    fn diff_identities() {
        for (sig, factors, lvl) in [
            (Signature::new(1, 0), vec![Factor::Poly], 0),
            (Signature::new(1, 1), vec![Factor::shift(&qr(1, 2))], 1),
            (Signature::new(1, 1), vec![Factor::Poly], 1),
            (Signature::new(2, 1), vec![Factor::shift(&qr(1, 3)), Factor::Quot], 1),
            (Signature::new(1, 2), vec![Factor::Poly], 0),
        ] {
            let p = KDescriptor::new(sig, factors, false).unwrap();
            let pp = KAsGl::new(KDescriptor::polynomial(Signature::new(sig.n, sig.m)), Some(q(lvl)));
            let base = p.corner_weight().0;
            let win = TensorWindow::new(p, pp, None, WindowSpec::cube(base, 1), DEFAULT_BUDGET).unwrap();
            let report = check_diff(&win, 2).unwrap();
            assert!(win.dim() > 0);
            assert!(win.basis_vectors().any(|v| !win.diff(&v).is_empty()));
            assert!(report.holds(), "{sig}: {report:?}");
        }
    }

    #[test]
    fn diff_signs_matter() {
        // dropping the relative sign between the even and odd parts breaks
        // the commutation with pi(x)
        let sig = Signature::new(1, 1);
        let p = KDescriptor::new(sig, vec![Factor::shift(&qr(1, 2))], false).unwrap();
        let pp = KAsGl::new(KDescriptor::polynomial(sig), Some(q(1)));
        let win = TensorWindow::new(p.clone(), pp.clone(), None, WindowSpec::cube(vec![qr(1, 2)], 1), DEFAULT_BUDGET).unwrap();
        let ta = TensorAlgebra::new(sig);
        let wrong = |v: &WVec<PKey>| -> WVec<PKey> {
            let mut out = WVec::new();
            for ((pk, mk, sk), c) in v {
                for s in 0..2 {
                    let cs = sign(s < 1 && p.key_parity(pk));
                    for (pi, pc) in p.apply(&WeylElement::d(sig, s), pk) {
                        for (ti, tc) in pp.raise(s, mk) {
                            add_term(&mut out, (pi.clone(), ti, *sk), c * &cs * &pc * tc);
                        }
                    }
                }
            }
            out
        };
        let mut broken = false;
        for t in crate::algebra::FieldTerm::basis(sig, 2) {
            let x = super::super::pi::pi_term(&ta, &t, super::super::pi::SignRule::RESOLVED);
            for v in win.basis_vectors() {
                let lhs = wrong(&win.act(&x, &v));
                let mut rhs = win.act(&x, &wrong(&v));
                if t.parity(sig) {
                    rhs = rhs.into_iter().map(|(k, c)| (k, -c)).collect();
                }
                broken |= lhs != rhs;
            }
        }
        assert!(broken);
    }
}
