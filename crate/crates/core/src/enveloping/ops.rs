//! The operator families of the quotient algebra: the alternating sums
//! `omega`, `omega_bar`, the centered operators `X`, `Y`, the
//! reconstruction identities and the closure / homomorphism checks for the
//! subalgebra they span.

use num_traits::One;

use super::{LAlphabet, Letter, LeviSpec, KLetter};
use crate::algebra::{tau, FieldTerm, Monomial, OddSet, Signature, SuperPoly, VectorField, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::pbw::{Env, Pbw};
use crate::rational::{binomial, sign, Q};

pub type EnvElement = Env<Letter>;

pub fn uw(sig: Signature) -> Pbw<LAlphabet> {
    Pbw::new(LAlphabet::uw(sig))
}

pub fn uw_tilde(sig: Signature) -> Pbw<LAlphabet> {
    Pbw::new(LAlphabet::uw_tilde(sig))
}

pub fn ubar(levi: &LeviSpec) -> Pbw<LAlphabet> {
    Pbw::new(LAlphabet::ubar(levi))
}

fn check_row(sig: Signature, row: &[i32], what: &str) -> Result<()> {
    if row.len() != sig.m || row.iter().any(|&e| e < 0) {
        return Err(Error::IndexOutOfRange(format!("{what} must be a nonnegative row of length {}", sig.m)));
    }
    Ok(())
}

fn check_odd(sig: Signature, i: OddSet) -> Result<()> {
    if i.max_index().is_some_and(|k| k >= sig.n) {
        return Err(Error::IndexOutOfRange(format!("odd set {i} exceeds {}", sig.n)));
    }
    Ok(())
}

fn check_dir(sig: Signature, d: usize) -> Result<()> {
    if d >= sig.dim() {
        return Err(Error::IndexOutOfRange(format!("direction {}", d + 1)));
    }
    Ok(())
}

fn shifted(alpha: &[i32], j: usize, k: i32) -> Vec<i32> {
    let mut v = alpha.to_vec();
    v[j] += k;
    v
}

/// `sum_i (-1)^i C(r,i) t^{alpha+(r-i)e_j} xi_I d . t^{beta+i e_j} xi_J d'`
/// in U(W(m|n)); `j` ranges over the first `q` even coordinates.
#[allow(clippy::too_many_arguments)]
pub fn build_omega(
    sig: Signature,
    q_even: usize,
    alpha: &[i32],
    beta: &[i32],
    i_set: OddSet,
    j_set: OddSet,
    r: u32,
    j: usize,
    d: usize,
    d2: usize,
) -> Result<EnvElement> {
    check_row(sig, alpha, "alpha")?;
    check_row(sig, beta, "beta")?;
    check_odd(sig, i_set)?;
    check_odd(sig, j_set)?;
    if j >= q_even || q_even > sig.m {
        return Err(Error::IndexOutOfRange(format!("j = {} must be at most q = {q_even}", j + 1)));
    }
    for dir in [d, d2] {
        check_dir(sig, dir)?;
        if dir < sig.m && dir >= q_even {
            return Err(Error::IndexOutOfRange(format!("direction {} is not in 1..q or the odd range", dir + 1)));
        }
    }
    let mut out = EnvElement::zero();
    for i in 0..=r as i32 {
        let c = sign(i % 2 == 1) * binomial(r as i64, i as i64);
        let a = FieldTerm::new(Monomial::new(&shifted(alpha, j, r as i32 - i), i_set), d);
        let b = FieldTerm::new(Monomial::new(&shifted(beta, j, i), j_set), d2);
        out.add_word(vec![Letter::W(a), Letter::W(b)], c);
    }
    Ok(out)
}

/// `sum_i (-1)^i C(r,i) x (x) t^{alpha+(r-i)e_j} xi_I . t^{beta+i e_j} d_j`
/// in the quotient algebra.
pub fn build_omega_bar(
    levi: &LeviSpec,
    alpha: &[i32],
    beta: &[i32],
    i_set: OddSet,
    x: KLetter,
    r: u32,
    j: usize,
) -> Result<EnvElement> {
    let sig = levi.sig();
    check_row(sig, alpha, "alpha")?;
    check_row(sig, beta, "beta")?;
    check_odd(sig, i_set)?;
    check_k(levi, x)?;
    if j >= sig.m {
        return Err(Error::IndexOutOfRange(format!("j = {} must be at most q = {}", j + 1, sig.m)));
    }
    let mut out = EnvElement::zero();
    for i in 0..=r as i32 {
        let c = sign(i % 2 == 1) * binomial(r as i64, i as i64);
        let k = Letter::K(x, Monomial::new(&shifted(alpha, j, r as i32 - i), i_set));
        let w = Letter::W(FieldTerm::new(Monomial::new(&shifted(beta, j, i), OddSet::EMPTY), j));
        out.add_word(vec![k, w], c);
    }
    Ok(out)
}

fn check_k(levi: &LeviSpec, x: KLetter) -> Result<()> {
    let b = x.block as usize;
    if b >= levi.blocks.len() || (x.row.max(x.col) as usize) >= levi.blocks[b].len() {
        return Err(Error::IndexOutOfRange(format!("{x} is not in k")));
    }
    Ok(())
}

/// All `beta <= alpha` coordinatewise.
fn below(alpha: &[i32]) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=a).map(move |b| {
                    let mut w = v.clone();
                    w.push(b);
                    w
                })
            })
            .collect();
    }
    out
}

/// `prod_i C(alpha_i, beta_i)`.
fn multi_binomial(alpha: &[i32], beta: &[i32]) -> Q {
    alpha
        .iter()
        .zip(beta)
        .map(|(&a, &b)| binomial(a as i64, b as i64))
        .fold(Q::one(), |acc, x| acc * x)
}

fn minus(alpha: &[i32], beta: &[i32]) -> Vec<i32> {
    alpha.iter().zip(beta).map(|(a, b)| a - b).collect()
}

/// The coefficient of the centering sums:
/// `(-1)^{|beta|+|J|+tau(J, I\J)} C(alpha, beta)`.
fn centering_coeff(alpha: &[i32], beta: &[i32], i_set: OddSet, j_set: OddSet) -> Q {
    let rest = i_set.minus(j_set);
    let t = tau(j_set, rest).expect("disjoint by construction");
    let b: i32 = beta.iter().sum();
    sign((b as u32 + j_set.len() as u32 + t) % 2 == 1) * multi_binomial(alpha, beta)
}

/// Centered sum `sum (-1)^{...} C(alpha,beta) t^beta xi_J . tail(alpha-beta, I\J)`.
fn centered(alpha: &[i32], i_set: OddSet, tail: impl Fn(Monomial) -> Letter) -> EnvElement {
    let mut out = EnvElement::zero();
    for beta in below(alpha) {
        for j_set in i_set.subsets() {
            let c = centering_coeff(alpha, &beta, i_set, j_set);
            let head = Letter::A(Monomial::new(&beta, j_set));
            let t = tail(Monomial::new(&minus(alpha, &beta), i_set.minus(j_set)));
            out.add_word(vec![head, t], c);
        }
    }
    out
}

/// `X_{alpha,I,d}`.
pub fn build_x(levi: &LeviSpec, alpha: &[i32], i_set: OddSet, d: usize) -> Result<EnvElement> {
    let sig = levi.sig();
    check_row(sig, alpha, "alpha")?;
    check_odd(sig, i_set)?;
    check_dir(sig, d)?;
    Ok(centered(alpha, i_set, |m| Letter::W(FieldTerm::new(m, d))))
}

/// `Y_{alpha,I,x}`.
pub fn build_y(levi: &LeviSpec, alpha: &[i32], i_set: OddSet, x: KLetter) -> Result<EnvElement> {
    let sig = levi.sig();
    check_row(sig, alpha, "alpha")?;
    check_odd(sig, i_set)?;
    check_k(levi, x)?;
    Ok(centered(alpha, i_set, |m| Letter::K(x, m)))
}

/// Result of comparing two elements by normal form.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub holds: bool,
    pub residual: EnvElement,
}

pub fn check_identity(pbw: &Pbw<LAlphabet>, lhs: &EnvElement, rhs: &EnvElement) -> Result<IdentityCheck> {
    let residual = pbw.normal_order(&lhs.sub(rhs))?;
    Ok(IdentityCheck {
        holds: residual.is_zero(),
        residual,
    })
}

/// Right-hand side of the reconstruction identity
/// `t^alpha xi_I d = sum (-1)^{tau(J,I\J)} C(alpha,beta) t^beta xi_J . X_{alpha-beta, I\J, d}`.
pub fn reconstruct_w(levi: &LeviSpec, alpha: &[i32], i_set: OddSet, d: usize) -> Result<EnvElement> {
    reconstruct(levi, alpha, i_set, |a, i| build_x(levi, a, i, d))
}

/// Right-hand side of the analogous identity for `x (x) t^alpha xi_I`.
pub fn reconstruct_k(levi: &LeviSpec, alpha: &[i32], i_set: OddSet, x: KLetter) -> Result<EnvElement> {
    reconstruct(levi, alpha, i_set, |a, i| build_y(levi, a, i, x))
}

fn reconstruct(
    levi: &LeviSpec,
    alpha: &[i32],
    i_set: OddSet,
    op: impl Fn(&[i32], OddSet) -> Result<EnvElement>,
) -> Result<EnvElement> {
    check_row(levi.sig(), alpha, "alpha")?;
    let mut out = EnvElement::zero();
    for beta in below(alpha) {
        for j_set in i_set.subsets() {
            let rest = i_set.minus(j_set);
            let c = sign(tau(j_set, rest)? % 2 == 1) * multi_binomial(alpha, &beta);
            let head = EnvElement::letter(Letter::A(Monomial::new(&beta, j_set)));
            out = out.add(&head.concat(&op(&minus(alpha, &beta), rest)?).scale(&c));
        }
    }
    Ok(out)
}

/// A generator of `m nabla + k (x) A`: a vector field with coefficient in the
/// augmentation ideal (or any coefficient, for the derivations themselves),
/// or `x (x) f`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TGen {
    X(FieldTerm),
    Y(KLetter, Monomial),
}

impl TGen {
    pub fn image(&self, levi: &LeviSpec) -> Result<EnvElement> {
        match self {
            TGen::X(t) => build_x(levi, &t.mono.exps, t.mono.odd, t.dir),
            TGen::Y(x, f) => build_y(levi, &f.exps, f.odd, *x),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TGen::X(t) => format!("X[{t}]"),
            TGen::Y(x, f) => format!("Y[{x}*{f}]"),
        }
    }
}

/// Coefficient monomials `t^alpha xi_I` with `|alpha| <= max_alpha` and any
/// odd set.
pub fn coefficient_monomials(sig: Signature, max_alpha: i64) -> Vec<Monomial> {
    Monomial::all_up_to(sig, max_alpha + sig.n as i64)
        .into_iter()
        .filter(|m| m.exps.iter().map(|&e| e as i64).sum::<i64>() <= max_alpha)
        .collect()
}

/// The generators with `|alpha| <= max_alpha`; vector fields need a
/// coefficient of positive degree unless `with_derivations`.
pub fn t_generators(levi: &LeviSpec, max_alpha: i64, with_derivations: bool) -> Vec<TGen> {
    let sig = levi.sig();
    let monos = coefficient_monomials(sig, max_alpha);
    let mut out = Vec::new();
    for m in &monos {
        for d in 0..sig.dim() {
            if with_derivations || m.degree() > 0 {
                out.push(TGen::X(FieldTerm::new(m.clone(), d)));
            }
        }
    }
    for x in levi.k_basis() {
        for m in &monos {
            out.push(TGen::Y(x, m.clone()));
        }
    }
    out
}

/// `[a, b]` in `W(q|n) + k (x) A` for two generators, as generators.
pub fn t_gen_bracket(levi: &LeviSpec, a: &TGen, b: &TGen) -> Vec<(TGen, Q)> {
    let sig = levi.sig();
    match (a, b) {
        (TGen::X(x), TGen::X(y)) => x.bracket(y, sig).into_iter().map(|(t, c)| (TGen::X(t), c)).collect(),
        (TGen::X(x), TGen::Y(k, f)) => x
            .apply_monomial(f, sig)
            .map(|(c, g)| vec![(TGen::Y(*k, g), c)])
            .unwrap_or_default(),
        (TGen::Y(k, f), TGen::X(x)) => {
            let s = -sign(f.parity() && x.parity(sig));
            x.apply_monomial(f, sig)
                .map(|(c, g)| vec![(TGen::Y(*k, g), c * s)])
                .unwrap_or_default()
        }
        (TGen::Y(x, f), TGen::Y(y, g)) => match f.mul(g) {
            Some((neg, fg)) => x
                .bracket(y)
                .into_iter()
                .map(|(z, c)| (TGen::Y(z, fg.clone()), c * sign(neg)))
                .collect(),
            None => Vec::new(),
        },
    }
}

/// Outcome of the closure / homomorphism checks on the centered operators.
#[derive(Debug, Clone, Default)]
pub struct ClosureReport {
    pub pairs: usize,
    pub closure_failures: Vec<(String, String, usize)>,
    pub hom_failures: Vec<(String, String)>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.closure_failures.is_empty() && self.hom_failures.is_empty()
    }
}

/// For every pair of generators with `|alpha| <= max_alpha`: the
/// normal-ordered bracket of their images lies in the span of all images
/// (solved exactly), and equals the image of their bracket.
pub fn t_closure(levi: &LeviSpec, max_alpha: i64) -> Result<ClosureReport> {
    let pbw = ubar(levi);
    let gens = t_generators(levi, max_alpha, true);
    let span_gens = t_generators(levi, 2 * max_alpha, true);
    let mut span: Echelon<Vec<Letter>> = Echelon::new();
    for g in &span_gens {
        let img = pbw.normal_order(&g.image(levi)?)?;
        span.insert(&img.terms);
    }
    let images: Vec<EnvElement> = gens.iter().map(|g| g.image(levi)).collect::<Result<_>>()?;
    let mut report = ClosureReport::default();
    for (a, ia) in gens.iter().zip(&images) {
        for (b, ib) in gens.iter().zip(&images) {
            report.pairs += 1;
            let br = pbw.bracket(ia, ib)?;
            let (_, residual) = span.solve(&br.terms);
            if !residual.is_empty() {
                report.closure_failures.push((a.label(), b.label(), residual.len()));
            }
            let positive = |g: &TGen| !matches!(g, TGen::X(t) if t.mono.degree() == 0);
            if positive(a) && positive(b) {
                let mut expected = EnvElement::zero();
                for (g, c) in t_gen_bracket(levi, a, b) {
                    expected = expected.add(&g.image(levi)?.scale(&c));
                }
                if !pbw.normal_order(&expected.sub(&br))?.is_zero() {
                    report.hom_failures.push((a.label(), b.label()));
                }
            }
        }
    }
    Ok(report)
}

/// Checks `[X, f] = [X, d_j] = 0` and `[Y, f] = [Y, d_j] = 0` for every
/// centered operator with `|alpha| <= max_alpha` and positive degree, `f` a
/// coordinate function and `d_j` a coordinate derivation.
pub fn check_commutant(levi: &LeviSpec, max_alpha: i64) -> Result<Vec<String>> {
    let pbw = ubar(levi);
    let sig = levi.sig();
    let mut failures = Vec::new();
    let mut probes: Vec<EnvElement> = Vec::new();
    for i in 0..sig.dim() {
        probes.push(EnvElement::letter(Letter::A(Monomial::var(sig, i))));
        probes.push(EnvElement::letter(Letter::W(FieldTerm::new(Monomial::one(sig.m), i))));
    }
    for g in t_generators(levi, max_alpha, false) {
        let img = g.image(levi)?;
        for p in &probes {
            if !pbw.bracket(&img, p)?.is_zero() {
                failures.push(format!("[{}, {}]", g.label(), p));
            }
        }
    }
    Ok(failures)
}

/// Outcome of the reconstruction identities over a parameter range.
#[derive(Debug, Clone, Default)]
pub struct ReconstructionReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks both reconstruction identities for every `|alpha| <= max_alpha`,
/// every odd set, every direction and every basis element of `k`.
pub fn check_reconstruction(levi: &LeviSpec, max_alpha: i64) -> Result<ReconstructionReport> {
    let pbw = ubar(levi);
    let sig = levi.sig();
    let mut report = ReconstructionReport::default();
    for m in coefficient_monomials(sig, max_alpha) {
        for d in 0..sig.dim() {
            let lhs = EnvElement::letter(Letter::W(FieldTerm::new(m.clone(), d)));
            let rhs = reconstruct_w(levi, &m.exps, m.odd, d)?;
            report.checked += 1;
            if !check_identity(&pbw, &lhs, &rhs)?.holds {
                report.failures.push(format!("{}", FieldTerm::new(m.clone(), d)));
            }
        }
        for x in levi.k_basis() {
            let lhs = EnvElement::letter(Letter::K(x, m.clone()));
            let rhs = reconstruct_k(levi, &m.exps, m.odd, x)?;
            report.checked += 1;
            if !check_identity(&pbw, &lhs, &rhs)?.holds {
                report.failures.push(format!("{x}*{m}"));
            }
        }
    }
    Ok(report)
}

/// The differential operator of an element of U(W) (vector-field letters
/// only), as an element of the Weyl superalgebra.
pub fn uw_to_weyl(sig: Signature, e: &EnvElement) -> Result<WeylElement> {
    let mut out = WeylElement::zero(sig);
    for (w, c) in &e.terms {
        let mut acc = WeylElement::scalar(sig, c.clone());
        for l in w {
            let Letter::W(t) = l else {
                return Err(Error::AlphabetError(format!("{l} is not a vector field")));
            };
            acc = acc.mul(&WeylElement::from_field(&VectorField::from_terms(sig, [(t.clone(), Q::one())])))?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// Whether `e` annihilates every monomial of A(m|n) of degree at most `deg`.
pub fn annihilates_polynomials(sig: Signature, e: &EnvElement, deg: i64) -> Result<bool> {
    let op = uw_to_weyl(sig, e)?;
    for m in Monomial::all_up_to(sig, deg) {
        if !op.apply(&SuperPoly::from_monomial(sig, m, Q::one()))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `r <= r_max` for which `omega(r)` annihilates the polynomial
/// window.
pub fn omega_r0_on_polynomials(
    sig: Signature,
    omega: impl Fn(u32) -> Result<EnvElement>,
    deg: i64,
    r_max: u32,
) -> Result<Option<u32>> {
    for r in 0..=r_max {
        if annihilates_polynomials(sig, &omega(r)?, deg)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn w(mono: Monomial, d: usize) -> Letter {
        Letter::W(FieldTerm::new(mono, d))
    }

    #[test]
    fn normal_order_examples() {
        let sig = Signature::new(1, 0);
        let p = uw(sig);
        let d1 = w(Monomial::one(1), 0);
        let e1 = w(Monomial::var(sig, 0), 0);
        let got = p.normal_word(&[d1.clone(), e1.clone()]).unwrap();
        let mut expected = EnvElement::word(vec![e1.clone(), d1.clone()], q(1));
        expected.add_word(vec![d1.clone()], q(1));
        assert_eq!(got, expected);
        // operator oracle on C[t] up to degree 6
        let lhs = uw_to_weyl(sig, &EnvElement::word(vec![d1, e1], q(1))).unwrap();
        let rhs = uw_to_weyl(sig, &got).unwrap();
        for k in 0..=6 {
            let f = SuperPoly::from_monomial(sig, Monomial::new(&[k], OddSet::EMPTY), q(1));
            assert_eq!(lhs.apply(&f).unwrap(), rhs.apply(&f).unwrap());
        }
    }

    #[test]
    fn quotient_relations() {
        let levi = LeviSpec::gl1(1, 2);
        let p = ubar(&levi);
        let sig = levi.sig();
        assert_eq!(p.normal_word(&[Letter::A(Monomial::one(1))]).unwrap(), EnvElement::one());
        let a = Letter::A(Monomial::new(&[1], OddSet::singleton(1)));
        let b = Letter::A(Monomial::new(&[2], OddSet::singleton(0)));
        let got = p.normal_word(&[a, b]).unwrap();
        // xi2 xi1 = -xi_{12}
        assert_eq!(got, EnvElement::word(vec![Letter::A(Monomial::new(&[3], OddSet::from_indices([0, 1])))], q(-1)));
        assert!(p.normal_word(&[Letter::A(Monomial::var(sig, 1)), Letter::A(Monomial::var(sig, 1))]).unwrap().is_zero());
    }

    #[test]
    fn alphabet_errors() {
        let p = uw(Signature::new(1, 0));
        assert!(matches!(p.normal_word(&[Letter::A(Monomial::one(1))]), Err(Error::AlphabetError(_))));
    }

    #[test]
    fn degree_cap_is_a_hard_error() {
        let sig = Signature::new(1, 0);
        let p = Pbw::with_cap(LAlphabet::uw(sig), 3);
        let big = w(Monomial::new(&[4], OddSet::EMPTY), 0);
        assert_eq!(p.normal_word(&[big]), Err(Error::DegreeCapExceeded { degree: 4, cap: 3 }));
    }

    #[test]
    fn omega_instances() {
        let sig = Signature::new(1, 0);
        let d1 = w(Monomial::one(1), 0);
        let e1 = w(Monomial::var(sig, 0), 0);
        let o0 = build_omega(sig, 1, &[0], &[0], OddSet::EMPTY, OddSet::EMPTY, 0, 0, 0, 0).unwrap();
        assert_eq!(o0, EnvElement::word(vec![d1.clone(), d1.clone()], q(1)));
        let o1 = build_omega(sig, 1, &[0], &[0], OddSet::EMPTY, OddSet::EMPTY, 1, 0, 0, 0).unwrap();
        let mut expected = EnvElement::word(vec![e1.clone(), d1.clone()], q(1));
        expected.add_word(vec![d1, e1], q(-1));
        assert_eq!(o1, expected);
        let r0 = omega_r0_on_polynomials(
            sig,
            |r| build_omega(sig, 1, &[0], &[0], OddSet::EMPTY, OddSet::EMPTY, r, 0, 0, 0),
            8,
            6,
        )
        .unwrap();
        assert_eq!(r0, Some(2));
        assert!(build_omega(sig, 0, &[0], &[0], OddSet::EMPTY, OddSet::EMPTY, 1, 0, 0, 0).is_err());
    }

    #[test]
    fn omega_bar_instances() {
        let levi = LeviSpec::gl1(1, 1);
        let x = KLetter::new(0, 0, 0);
        let one = Monomial::one(1);
        let t1 = Monomial::new(&[1], OddSet::EMPTY);
        let o = build_omega_bar(&levi, &[0], &[0], OddSet::EMPTY, x, 1, 0).unwrap();
        let mut expected = EnvElement::word(vec![Letter::K(x, t1.clone()), w(one.clone(), 0)], q(1));
        expected.add_word(vec![Letter::K(x, one), w(t1, 0)], q(-1));
        assert_eq!(o, expected);
    }

    #[test]
    fn x_and_y_instances() {
        let levi = LeviSpec::gl1(1, 1);
        let p = ubar(&levi);
        let one = Monomial::one(1);
        let t1 = Monomial::new(&[1], OddSet::EMPTY);
        let x0 = p.normal_order(&build_x(&levi, &[0], OddSet::EMPTY, 0).unwrap()).unwrap();
        assert_eq!(x0, EnvElement::letter(w(one.clone(), 0)));
        let x1 = p.normal_order(&build_x(&levi, &[1], OddSet::EMPTY, 0).unwrap()).unwrap();
        let mut expected = EnvElement::word(vec![w(t1.clone(), 0)], q(1));
        expected.add_word(vec![Letter::A(t1), w(one.clone(), 0)], q(-1));
        assert_eq!(x1, expected);
        let k = KLetter::new(0, 0, 0);
        let y0 = p.normal_order(&build_y(&levi, &[0], OddSet::EMPTY, k).unwrap()).unwrap();
        assert_eq!(y0, EnvElement::letter(Letter::K(k, one)));
    }

    #[test]
    fn reconstruction_small_cases() {
        let levi = LeviSpec::gl1(1, 1);
        let p = ubar(&levi);
        for alpha in [[0], [1]] {
            let lhs = EnvElement::letter(w(Monomial::new(&alpha, OddSet::EMPTY), 0));
            let rhs = reconstruct_w(&levi, &alpha, OddSet::EMPTY, 0).unwrap();
            assert!(check_identity(&p, &lhs, &rhs).unwrap().holds);
        }
    }

    #[test]
    fn full_ranges() {
        for levi in [LeviSpec::gl1(1, 1), LeviSpec::gl1(2, 1)] {
            let t = std::time::Instant::now();
            let r = check_reconstruction(&levi, 3).unwrap();
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            let c = check_commutant(&levi, 3).unwrap();
            assert!(c.is_empty(), "{c:?}");
            let cl = t_closure(&levi, 2).unwrap();
            assert!(cl.holds(), "{cl:?}");
            eprintln!("{:?} {} {} {:?}", levi, r.checked, cl.pairs, t.elapsed());
        }
    }

    #[test]
    fn closure_examples() {
        let levi = LeviSpec::gl1(1, 1);
        let p = ubar(&levi);
        let d = build_x(&levi, &[0], OddSet::EMPTY, 0).unwrap();
        assert!(p.bracket(&d, &d).unwrap().is_zero());
        let report = t_closure(&levi, 1).unwrap();
        assert!(report.holds(), "{report:?}");
    }
}
