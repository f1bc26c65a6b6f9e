//! The homomorphisms from vector fields into the Weyl superalgebra tensored
//! with U(gl) (and U(k)), together with the sign audit that fixes their sign
//! convention.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::{FieldTerm, Monomial, Signature, VectorField, WeylElement, WeylKey};
use crate::enveloping::{KAlphabet, KLetter, Letter, LeviSpec};
use crate::error::{Error, Result};
use crate::glreps::ugl::{ugl, GlAlphabet, GlLetter, GlWord};
use crate::linalg::add_term;
use crate::pbw::Pbw;
use crate::rational::{fmt_q, sign, Q};

/// A basis element `w (x) g (x) k` of Weyl (x) U(gl) (x) U(k).
pub type TKey = (WeylKey, GlWord, Vec<KLetter>);

/// An element of Weyl (x) U(gl) (x) U(k), all factors normal ordered.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TElem {
    pub terms: BTreeMap<TKey, Q>,
}

impl TElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: TKey, c: Q) {
        add_term(&mut self.terms, k, c);
    }

    pub fn add(&self, other: &TElem) -> TElem {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> TElem {
        let mut out = TElem::default();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &TElem) -> TElem {
        self.add(&other.scale(&-Q::one()))
    }
}

impl fmt::Display for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, g, k), c)| {
                let g: Vec<String> = g.iter().map(|l| l.to_string()).collect();
                let k: Vec<String> = k.iter().map(|l| l.to_string()).collect();
                let g = if g.is_empty() { "1".to_string() } else { g.join(".") };
                let mut s = format!("{}*[{} (x) {}", fmt_q(c), w, g);
                if !k.is_empty() {
                    s.push_str(&format!(" (x) {}", k.join(".")));
                }
                s.push(']');
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The target algebra Weyl(sig) (x) U(gl(sig)) (x) U(k).
pub struct TensorAlgebra {
    pub sig: Signature,
    gl: Pbw<GlAlphabet>,
    k: Pbw<KAlphabet>,
}

impl TensorAlgebra {
    pub fn new(sig: Signature) -> Self {
        Self {
            sig,
            gl: ugl(sig),
            k: crate::enveloping::uk(),
        }
    }

    fn gl_parity(&self, g: &[GlLetter]) -> bool {
        self.gl.word_parity(g)
    }

    pub fn key_parity(&self, k: &TKey) -> bool {
        k.0.parity() ^ self.gl_parity(&k.1)
    }

    /// `(w1 g1 k1)(w2 g2 k2) = (-1)^{|g1||w2|} w1 w2 (x) g1 g2 (x) k1 k2`
    /// (k is even).
    pub fn mul(&self, a: &TElem, b: &TElem) -> Result<TElem> {
        let mut out = TElem::default();
        for ((w1, g1, k1), x) in &a.terms {
            for ((w2, g2, k2), y) in &b.terms {
                let s = sign(self.gl_parity(g1) && w2.parity());
                let ww = WeylElement::mul_keys(self.sig, w1, w2);
                let mut gw = g1.clone();
                gw.extend(g2.iter().copied());
                let gg = self.gl.normal_word(&gw)?;
                let mut kw = k1.clone();
                kw.extend(k2.iter().copied());
                let kk = self.k.normal_word(&kw)?;
                let xy = s * x * y;
                for (wk, wc) in &ww {
                    for (gk, gc) in &gg.terms {
                        for (kk_, kc) in &kk.terms {
                            out.add_term((wk.clone(), gk.clone(), kk_.clone()), &xy * wc * gc * kc);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Super-commutator, split by parity of the terms.
    pub fn bracket(&self, a: &TElem, b: &TElem) -> Result<TElem> {
        let mut out = TElem::default();
        for pa in [false, true] {
            let ap = self.part(a, pa);
            for pb in [false, true] {
                let bp = self.part(b, pb);
                if ap.is_zero() || bp.is_zero() {
                    continue;
                }
                let ab = self.mul(&ap, &bp)?;
                let ba = self.mul(&bp, &ap)?;
                out = out.add(&ab.sub(&ba.scale(&sign(pa && pb))));
            }
        }
        Ok(out)
    }

    pub fn part(&self, a: &TElem, odd: bool) -> TElem {
        TElem {
            terms: a
                .terms
                .iter()
                .filter(|(k, _)| self.key_parity(k) == odd)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weyl(&self, w: &WeylElement) -> TElem {
        let mut out = TElem::default();
        for (k, c) in &w.terms {
            out.add_term((k.clone(), Vec::new(), Vec::new()), c.clone());
        }
        out
    }

    pub fn gl_unit(&self, row: usize, col: usize) -> TElem {
        let mut out = TElem::default();
        out.add_term((WeylKey::one(self.sig.m), vec![GlLetter::unit(self.sig, row, col)], Vec::new()), Q::one());
        out
    }
}

/// A sign rule `(-1)^e(s, i, I)` for the gl-terms of the homomorphism, with
/// `e` a polynomial over Z/2 in the parities `|t_s|`, `|t_i|` and `|I|`.
/// Bit `k` of the mask switches on the monomial `FEATURES[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignRule(pub u8);

pub const FEATURES: [&str; 8] = ["1", "|t_s|", "|t_i|", "|I|", "|t_s||t_i|", "|t_s||I|", "|t_i||I|", "|t_s||t_i||I|"];

impl SignRule {
    /// The convention validated by the homomorphism audit: `(-1)^{|t_s|(|I|-1)}`,
    /// i.e. the sign appears only on the odd terms and depends on the
    /// parity of the coefficient.
    pub const RESOLVED: SignRule = SignRule(0b0010_0010);

    /// The rule as displayed in the source formula: `(-1)^{|t_i|(|I|-1)}`.
    pub const DISPLAYED: SignRule = SignRule(0b0100_0100);

    pub fn negative(&self, s_odd: bool, i_odd: bool, i_len: usize) -> bool {
        let (ps, pi, pset) = (s_odd, i_odd, i_len % 2 == 1);
        let vals = [true, ps, pi, pset, ps && pi, ps && pset, pi && pset, ps && pi && pset];
        (0..8).filter(|&k| self.0 >> k & 1 == 1 && vals[k]).count() % 2 == 1
    }

    pub fn describe(&self) -> String {
        let terms: Vec<&str> = (0..8).filter(|&k| self.0 >> k & 1 == 1).map(|k| FEATURES[k]).collect();
        if terms.is_empty() {
            "(-1)^0".into()
        } else {
            format!("(-1)^({})", terms.join(" + "))
        }
    }
}

/// `pi(t^alpha xi_I d_i) = t^alpha xi_I d_i (x) 1 + sum_s (+-) d_s(t^alpha xi_I) (x) E_{s,i}`.
pub fn pi_term(ta: &TensorAlgebra, t: &FieldTerm, rule: SignRule) -> TElem {
    let sig = ta.sig;
    let mut out = ta.weyl(&WeylElement::from_field_term(sig, t));
    for s in 0..sig.dim() {
        if let Some((c, ds)) = t.mono.derive(sig, s) {
            let neg = rule.negative(sig.is_odd(s), sig.is_odd(t.dir), t.mono.odd.len());
            let key = (
                WeylKey {
                    cre: ds,
                    ann: Monomial::one(sig.m),
                },
                vec![GlLetter::unit(sig, s, t.dir)],
                Vec::new(),
            );
            out.add_term(key, c * sign(neg));
        }
    }
    out
}

pub fn pi_w_with(ta: &TensorAlgebra, x: &VectorField, rule: SignRule) -> Result<TElem> {
    ta.sig.check(&x.sig)?;
    let mut out = TElem::default();
    for (t, c) in &x.terms {
        out = out.add(&pi_term(ta, t, rule).scale(c));
    }
    Ok(out)
}

/// The homomorphism W(m|n) -> Weyl (x) U(gl) with the resolved sign rule.
pub fn pi_w(ta: &TensorAlgebra, x: &VectorField) -> Result<TElem> {
    pi_w_with(ta, x, SignRule::RESOLVED)
}

/// The homomorphism from `W(q|n) + k (x) A + A` into
/// Weyl(q|n) (x) U(gl(q|n)) (x) U(k), on a single letter.
pub fn pi_second_letter(ta: &TensorAlgebra, levi: &LeviSpec, l: &Letter) -> Result<TElem> {
    let sig = levi.sig();
    if ta.sig != sig {
        return Err(Error::SignatureMismatch(ta.sig.to_string(), sig.to_string()));
    }
    let mut out = TElem::default();
    match l {
        Letter::A(f) => out.add_term(
            (
                WeylKey {
                    cre: f.clone(),
                    ann: Monomial::one(sig.m),
                },
                Vec::new(),
                Vec::new(),
            ),
            Q::one(),
        ),
        Letter::K(x, f) => {
            let b = x.block as usize;
            if b >= levi.blocks.len() || (x.row.max(x.col) as usize) >= levi.blocks[b].len() {
                return Err(Error::IndexOutOfRange(format!("{x}")));
            }
            out.add_term(
                (
                    WeylKey {
                        cre: f.clone(),
                        ann: Monomial::one(sig.m),
                    },
                    Vec::new(),
                    vec![*x],
                ),
                Q::one(),
            )
        }
        Letter::W(t) => {
            if t.dir >= sig.dim() {
                return Err(Error::IndexOutOfRange(format!("direction {}", t.dir + 1)));
            }
            out = pi_term(ta, t, SignRule::RESOLVED);
        }
    }
    Ok(out)
}

/// Extends [`pi_second_letter`] multiplicatively to words.
pub fn pi_second(ta: &TensorAlgebra, levi: &LeviSpec, e: &crate::pbw::Env<Letter>) -> Result<TElem> {
    let mut out = TElem::default();
    for (w, c) in &e.terms {
        let mut acc = TElem::default();
        acc.add_term((WeylKey::one(ta.sig.m), Vec::new(), Vec::new()), c.clone());
        for l in w {
            acc = ta.mul(&acc, &pi_second_letter(ta, levi, l)?)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Outcome of checking `pi([x, y]) = [pi(x), pi(y)]` on every basis pair.
#[derive(Debug, Clone)]
pub struct HomReport {
    pub sig: Signature,
    pub degree: i64,
    pub pairs: usize,
    pub failures: Vec<(FieldTerm, FieldTerm)>,
}

impl HomReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the homomorphism property on all basis pairs of coefficient degree
/// at most `degree`; stops after `max_failures` failures.
pub fn check_pi_homomorphism(sig: Signature, degree: i64, rule: SignRule, max_failures: usize) -> Result<HomReport> {
    let ta = TensorAlgebra::new(sig);
    let basis = FieldTerm::basis(sig, degree);
    let images: Vec<TElem> = basis.iter().map(|t| pi_term(&ta, t, rule)).collect();
    let mut report = HomReport {
        sig,
        degree,
        pairs: 0,
        failures: Vec::new(),
    };
    for (a, pa) in basis.iter().zip(&images) {
        for (b, pb) in basis.iter().zip(&images) {
            report.pairs += 1;
            let br = VectorField::from_terms(sig, a.bracket(b, sig));
            let lhs = pi_w_with(&ta, &br, rule)?;
            let rhs = ta.bracket(pa, pb)?;
            if lhs != rhs {
                report.failures.push((a.clone(), b.clone()));
                if report.failures.len() >= max_failures {
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Every sign rule of the family for which the homomorphism property holds
/// at all the given signatures up to `degree`.
pub fn audit_sign_rules(sigs: &[Signature], degree: i64) -> Result<Vec<SignRule>> {
    let mut out = Vec::new();
    for mask in 0..=255u8 {
        let rule = SignRule(mask);
        let mut ok = true;
        for &sig in sigs {
            if !check_pi_homomorphism(sig, degree, rule, 1)?.holds() {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(rule);
        }
    }
    Ok(out)
}

/// Letters of `W(q|n) + k (x) A + A` with coefficient degree at most
/// `degree`: the domain of [`pi_second_letter`].
pub fn second_domain_letters(levi: &LeviSpec, degree: i64) -> Vec<Letter> {
    let sig = levi.sig();
    let monos = Monomial::all_up_to(sig, degree);
    let mut out: Vec<Letter> = monos.iter().cloned().map(Letter::A).collect();
    for x in levi.k_basis() {
        out.extend(monos.iter().cloned().map(|f| Letter::K(x, f)));
    }
    out.extend(FieldTerm::basis(sig, degree).into_iter().map(Letter::W));
    out
}

/// Outcome of checking the second homomorphism on letter pairs.
#[derive(Debug, Clone)]
pub struct SecondHomReport {
    pub pairs: usize,
    pub failures: Vec<(Letter, Letter)>,
}

impl SecondHomReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `pi([a, b]) = [pi(a), pi(b)]` for all letter pairs of coefficient
/// degree at most `degree`.
pub fn check_pi_second_homomorphism(levi: &LeviSpec, degree: i64) -> Result<SecondHomReport> {
    use crate::pbw::Alphabet;
    let ta = TensorAlgebra::new(levi.sig());
    let alphabet = crate::enveloping::LAlphabet::ubar(levi);
    let letters = second_domain_letters(levi, degree);
    let images: Vec<TElem> = letters
        .iter()
        .map(|l| pi_second_letter(&ta, levi, l))
        .collect::<Result<_>>()?;
    let mut report = SecondHomReport {
        pairs: 0,
        failures: Vec::new(),
    };
    for (a, pa) in letters.iter().zip(&images) {
        for (b, pb) in letters.iter().zip(&images) {
            report.pairs += 1;
            let mut lhs = TElem::default();
            for (l, c) in alphabet.bracket(a, b) {
                lhs = lhs.add(&pi_second_letter(&ta, levi, &l)?.scale(&c));
            }
            if lhs != ta.bracket(pa, pb)? {
                report.failures.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn audit_leaves_two_rules_related_by_the_parity_automorphism() {
        let sigs = [Signature::new(1, 1), Signature::new(1, 2), Signature::new(2, 1)];
        let found = audit_sign_rules(&sigs, 2).unwrap();
        assert_eq!(found, vec![SignRule::RESOLVED, SignRule(0b0010_0100)]);
        assert!(!check_pi_homomorphism(sigs[0], 2, SignRule::DISPLAYED, 1).unwrap().holds());
    }

    #[test]
    fn formula_instances() {
        let sig = Signature::new(2, 1);
        let ta = TensorAlgebra::new(sig);
        let d1 = VectorField::partial(sig, 0);
        assert_eq!(pi_w(&ta, &d1).unwrap(), ta.weyl(&WeylElement::d(sig, 0)));
        let t1d2 = VectorField::term(sig, Monomial::var(sig, 0), 1);
        let expected = ta.weyl(&WeylElement::from_field(&t1d2)).add(&ta.gl_unit(0, 1));
        assert_eq!(pi_w(&ta, &t1d2).unwrap(), expected);
        let e1 = VectorField::euler(sig, 0);
        let expected = ta.weyl(&WeylElement::from_field(&e1)).add(&ta.gl_unit(0, 0));
        assert_eq!(pi_w(&ta, &e1).unwrap(), expected);
    }

    #[test]
    fn second_homomorphism() {
        let levi = LeviSpec::gl1(1, 1);
        let ta = TensorAlgebra::new(levi.sig());
        let d1 = Letter::W(FieldTerm::new(Monomial::var(levi.sig(), 0), 0));
        let expected = ta.weyl(&WeylElement::from_field_term(levi.sig(), &FieldTerm::new(Monomial::var(levi.sig(), 0), 0))).add(&ta.gl_unit(0, 0));
        assert_eq!(pi_second_letter(&ta, &levi, &d1).unwrap(), expected);
        let h = Letter::K(KLetter::new(0, 0, 0), Monomial::one(1));
        let mut expected = TElem::default();
        expected.add_term((WeylKey::one(1), Vec::new(), vec![KLetter::new(0, 0, 0)]), q(1));
        assert_eq!(pi_second_letter(&ta, &levi, &h).unwrap(), expected);
        let report = check_pi_second_homomorphism(&levi, 3).unwrap();
        assert!(report.holds(), "{:?}", &report.failures[..report.failures.len().min(5)]);
    }
}
