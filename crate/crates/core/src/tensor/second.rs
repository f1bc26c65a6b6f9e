//! Modules `F(P, M, S) = F(P, M) (x) S` over `W(q|n) + k (x) A + A`, where
//! `S` is a simple `k`-module: the annihilation order of the operators
//! `omega-bar`, the simplicity rule and window generation evidence.

use serde::Serialize;

use super::classify::{generation_evidence, simplicity_classify, GenerationEvidence, MInput, SimplicityCase};
use super::descriptor::KDescriptor;
use super::pi::{pi_second, pi_second_letter, TElem, TensorAlgebra};
use super::window::TensorWindow;
use crate::algebra::{Monomial, OddSet};
use crate::enveloping::{build_omega_bar, Letter, LeviSpec};
use crate::error::Result;
use crate::glreps::{GlAction, KModule};

/// Outcome of applying `omega-bar_r` for `r = 0, 1, ...` to a window of
/// `F(P, M, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub window_dim: usize,
    /// Number of operators tried for each `r`.
    pub operators: usize,
    /// For each `r`, the number of (operator, basis vector) pairs with a
    /// nonzero image.
    pub nonzero: Vec<usize>,
    /// The least `r` from which every tried `omega-bar_r` annihilates the
    /// window, if reached within the tried range.
    pub r0: Option<u32>,
}

/// Applies `omega-bar_r(alpha, beta, I, x, j)` for all `alpha, beta` with
/// `|alpha|, |beta| <= degree`, all odd sets `I`, all basis elements `x` of
/// `k` and all even directions `j`, for `r = 0..=r_max`.
pub fn omega_bar_r0<M: GlAction>(
    win: &TensorWindow<M>,
    levi: &LeviSpec,
    degree: i32,
    r_max: u32,
) -> Result<OmegaReport> {
    let sig = levi.sig();
    let ta = TensorAlgebra::new(sig);
    let rows: Vec<Vec<i32>> = Monomial::all_up_to(crate::algebra::Signature::new(sig.m, 0), degree as i64)
        .into_iter()
        .map(|mono| mono.exps.to_vec())
        .collect();
    let odd_sets: Vec<OddSet> = OddSet::all(sig.n).collect();
    let basis: Vec<_> = win.basis_vectors().collect();
    let mut report = OmegaReport {
        window_dim: basis.len(),
        operators: 0,
        nonzero: Vec::new(),
        r0: None,
    };
    for r in 0..=r_max {
        let mut ops = 0;
        let mut nonzero = 0;
        for alpha in &rows {
            for beta in &rows {
                for &i_set in &odd_sets {
                    for x in levi.k_basis() {
                        for j in 0..sig.m {
                            let op = pi_second(&ta, levi, &build_omega_bar(levi, alpha, beta, i_set, x, r, j)?)?;
                            ops += 1;
                            nonzero += basis.iter().filter(|v| !win.act(&op, v).is_empty()).count();
                        }
                    }
                }
            }
        }
        report.operators = ops;
        report.nonzero.push(nonzero);
        if nonzero == 0 && report.r0.is_none() {
            report.r0 = Some(r);
        } else if nonzero != 0 {
            report.r0 = None;
        }
    }
    Ok(report)
}

/// Simplicity of `F(P, M, S)`: simple when `S` is nontrivial, and when `S`
/// is trivial exactly when `F(P, M)` is simple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondVerdict {
    pub simple: bool,
    pub reason: String,
}

pub fn f2_simplicity(p: &KDescriptor, m: &MInput, s: &KModule) -> Result<SecondVerdict> {
    if !s.is_trivial() {
        return Ok(SecondVerdict {
            simple: true,
            reason: "S is a nontrivial simple k-module".into(),
        });
    }
    let v = simplicity_classify(p, m)?;
    Ok(SecondVerdict {
        simple: v.case == SimplicityCase::Simple,
        reason: format!("S is trivial; F(P, M): {} (clause {})", v.reason, v.clause),
    })
}

/// The images of the letters of `W(q|n) + k (x) A + A` of coefficient
/// degree at most `degree`.
pub fn second_generators(levi: &LeviSpec, degree: i64) -> Result<Vec<TElem>> {
    let ta = TensorAlgebra::new(levi.sig());
    super::pi::second_domain_letters(levi, degree)
        .iter()
        .filter(|l| !matches!(l, Letter::A(f) if f.is_one()))
        .map(|l| pi_second_letter(&ta, levi, l))
        .collect()
}

/// Generation evidence on a window of `F(P, M, S)` under the full algebra.
pub fn second_generation_evidence<M: GlAction>(
    win: &TensorWindow<M>,
    levi: &LeviSpec,
    degree: i64,
    seeds: usize,
    rng_seed: u64,
) -> Result<GenerationEvidence> {
    generation_evidence(win, &second_generators(levi, degree)?, seeds, rng_seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::glreps::{gl_natural, gl_trivial, k_character, k_trivial};
    use crate::rational::{q, qr};
    use crate::tensor::{Factor, WindowSpec, DEFAULT_BUDGET};

    fn fixture(m: crate::glreps::GlModule, s: KModule) -> TensorWindow<crate::glreps::GlModule> {
        let sig = Signature::new(1, 1);
        let p = KDescriptor::new(sig, vec![Factor::shift(&qr(1, 2))], false).unwrap();
        TensorWindow::new(p, m, Some(s), WindowSpec::cube(vec![qr(1, 2)], 2), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn omega_orders() {
        let levi = LeviSpec::gl1(1, 1);
        let sig = levi.sig();
        let chi = k_character(&levi, &[vec![q(3)]]);
        let r0 = |m, s| omega_bar_r0(&fixture(m, s), &levi, 1, 3).unwrap().r0;
        assert_eq!(r0(gl_natural(sig), k_trivial(&levi)), Some(0));
        assert_eq!(r0(gl_trivial(sig), chi.clone()), Some(1));
        assert_eq!(r0(gl_natural(sig), chi), Some(2));
    }

    #[test]
    fn simplicity_rule_and_generation() {
        let levi = LeviSpec::gl1(1, 1);
        let sig = levi.sig();
        let a = KDescriptor::polynomial(sig);
        let triv = MInput::from_tag(sig, "trivial").unwrap();
        let chi = k_character(&levi, &[vec![q(3)]]);
        assert!(f2_simplicity(&a, &triv, &chi).unwrap().simple);
        assert!(!f2_simplicity(&a, &triv, &k_trivial(&levi)).unwrap().simple);
        let g = second_generation_evidence(&fixture(gl_natural(sig), chi), &levi, 2, 3, 11).unwrap();
        assert!(g.all_filled(), "{g:?}");
    }
}
