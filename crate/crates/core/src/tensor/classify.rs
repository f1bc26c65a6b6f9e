//! The simplicity decision table for tensor modules `F(P, M)`, the
//! classification of their simple submodules, the finiteness condition on
//! weight spaces, and the window evidence backing each verdict.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::descriptor::{KDescriptor, PKey};
use super::pi::{pi_term, SignRule, TElem, TensorAlgebra};
use super::window::{diff_apply, TensorWindow, WVec, WindowSpec};
use crate::algebra::{FieldTerm, Signature};
use crate::error::{Error, Result};
use crate::glreps::{
    fundamental_module, gl0_character, kac_module, simple_top, FundamentalDescriptor, GlAction, GlModule, KAsGl,
};
use crate::linalg::Echelon;
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::weights::{delta_double_prime, root_label, shadow, Cone, Root, ShadowPartition, SupportSet, Weight};

/// The gl-module of a tensor module, as far as the classification needs
/// to know it.
#[derive(Debug, Clone)]
pub enum MInput {
    /// A fundamental module `P'[lambda]`.
    Fundamental(FundamentalDescriptor),
    /// A finite-dimensional simple module given by its matrices.
    Finite { label: String, module: GlModule },
    /// An infinite-dimensional simple weight module known through its
    /// support in the even coordinates (assumed not fundamental).
    Infinite { label: String, support: SupportSet },
}

impl MInput {
    pub fn label(&self) -> String {
        match self {
            MInput::Fundamental(fd) => fd.label(),
            MInput::Finite { label, .. } | MInput::Infinite { label, .. } => label.clone(),
        }
    }

    /// Parses a module tag over gl(m|n):
    /// `trivial`, `str`, `natural` (`C^{m|n}`), `A[k]`, `Asigma[k]` (each optionally
    /// prefixed by `pi-` for the parity change) and `kac:l1,...,l_{m+n}`
    /// (the simple top of the Kac module of a `gl^0` character).
    pub fn from_tag(sig: Signature, tag: &str) -> Result<MInput> {
        let (flip, body) = match tag.strip_prefix("pi-") {
            Some(rest) => (true, rest),
            None => (false, tag),
        };
        let ksig = Signature::new(sig.n, sig.m);
        let with_parity = |d: KDescriptor| -> KDescriptor {
            let parity = d.parity ^ flip;
            KDescriptor::new(d.sig, d.factors, parity).expect("valid factors")
        };
        let fund = |d: KDescriptor, level: i64| MInput::Fundamental(FundamentalDescriptor { base: with_parity(d), level: q(level) });
        let level_of = |s: &str, prefix: &str| -> Option<i64> {
            s.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')?.trim().parse().ok()
        };
        if body == "trivial" {
            return Ok(fund(KDescriptor::polynomial(ksig), 0));
        }
        if body == "str" {
            return Ok(fund(KDescriptor::sigma_dual(ksig), sig.m as i64 - sig.n as i64));
        }
        if body == "natural" {
            // C^{m|n} with its standard grading is A[1] with the parity changed
            let a = KDescriptor::polynomial(ksig);
            return Ok(fund(KDescriptor::new(ksig, a.factors, !a.parity)?, 1));
        }
        if let Some(k) = level_of(body, "Asigma") {
            return Ok(fund(KDescriptor::sigma_dual(ksig), k));
        }
        if let Some(k) = level_of(body, "A") {
            return Ok(fund(KDescriptor::polynomial(ksig), k));
        }
        if let Some(rest) = body.strip_prefix("kac:") {
            let lambda: Vec<Q> = rest.split(',').map(|s| parse_q(s.trim())).collect::<Result<_>>()?;
            if lambda.len() != sig.dim() {
                return Err(Error::SizeMismatch(lambda.len(), sig.dim()));
            }
            let top = simple_top(&kac_module(&gl0_character(sig, &lambda))?)?;
            let module = if flip { top.flip_parity() } else { top };
            return Ok(MInput::Finite {
                label: tag.to_string(),
                module,
            });
        }
        Err(Error::UnknownTag(tag.to_string()))
    }
}

/// Recognizes a finite-dimensional simple module as fundamental by its
/// character: `E` must act by a scalar `k`, and the multiset of (weight,
/// parity) pairs must agree with `A[k]` or `A^sigma[k]` up to parity.
pub fn detect_fundamental(module: &GlModule) -> Option<FundamentalDescriptor> {
    if module.dim() == 0 {
        return None;
    }
    let sig = module.sig;
    let level = |w: &Vec<Q>| w.iter().fold(Q::zero(), |a, b| a + b);
    let k = level(&module.weights[0]);
    if module.weights.iter().any(|w| level(w) != k) || !k.is_integer() {
        return None;
    }
    let character = |m: &GlModule| {
        let mut c: Vec<(Vec<Q>, bool)> = m.weights.iter().cloned().zip(m.parities.iter().copied()).collect();
        c.sort();
        c
    };
    let target = character(module);
    let ksig = Signature::new(sig.n, sig.m);
    for base in [KDescriptor::polynomial(ksig), KDescriptor::sigma_dual(ksig)] {
        for parity in [false, true] {
            let fd = FundamentalDescriptor {
                base: KDescriptor::new(ksig, base.factors.clone(), parity).expect("valid factors"),
                level: k.clone(),
            };
            if let Ok(fm) = fundamental_module(&fd) {
                if character(&fm) == target {
                    return Some(fd);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicityCase {
    Simple,
    UniqueSimpleSubmodule,
    NotSimpleTrivialPair,
}

/// The decision for `F(P, M)` with the clause of the decision table that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub case: SimplicityCase,
    pub clause: String,
    pub reason: String,
    /// The unique simple submodule, when `F(P, M)` is not simple.
    pub submodule: Option<String>,
    /// `lambda'(E)` of the module `P'[lambda']` whose `diff`-image is the
    /// simple submodule.
    pub source_level: Option<String>,
}

fn fundamental_of(m: &MInput) -> Option<FundamentalDescriptor> {
    match m {
        MInput::Fundamental(fd) => Some(fd.clone()),
        MInput::Finite { module, .. } => detect_fundamental(module),
        MInput::Infinite { .. } => None,
    }
}

fn check_sig(p: &KDescriptor, m: &MInput) -> Result<()> {
    let sig = match m {
        MInput::Fundamental(fd) => fd.gl_sig(),
        MInput::Finite { module, .. } => module.sig,
        MInput::Infinite { support, .. } => {
            if support.m != p.sig.m {
                return Err(Error::SizeMismatch(support.m, p.sig.m));
            }
            return Ok(());
        }
    };
    if sig != p.sig {
        return Err(Error::SignatureMismatch(p.sig.to_string(), sig.to_string()));
    }
    Ok(())
}

fn check_level(fd: &FundamentalDescriptor) -> Result<()> {
    if fd.is_finite() && KAsGl::new(fd.base.clone(), None).level_keys(&fd.level)?.is_empty() {
        return Err(Error::InvalidDescriptor(format!("{} is zero", fd.label())));
    }
    Ok(())
}

/// The simplicity decision table for `F(P, M)`:
/// non-fundamental `M` gives a simple module; for `M = P'[lambda]`, a
/// trivial `M` gives a non-simple module iff `P` is `A` up to parity, `Str`
/// (up to parity) gives a simple module iff `P = sum_s d_s P`, and in all
/// other cases the unique simple submodule is `diff(F(P, P'[lambda']))`
/// with `lambda'(E) = lambda(E) - 1`.
pub fn simplicity_classify(p: &KDescriptor, m: &MInput) -> Result<SimplicityVerdict> {
    check_sig(p, m)?;
    let Some(fd) = fundamental_of(m) else {
        return Ok(SimplicityVerdict {
            case: SimplicityCase::Simple,
            clause: "1".into(),
            reason: format!("{} is not a fundamental gl-module", m.label()),
            submodule: None,
            source_level: None,
        });
    };
    check_level(&fd)?;
    let below = &fd.level - Q::one();
    let diff_sub = |clause: &str, reason: String| SimplicityVerdict {
        case: SimplicityCase::UniqueSimpleSubmodule,
        clause: clause.into(),
        reason,
        submodule: Some(format!("diff(F({}, {}[{}]))", p, fd.base, fmt_q(&below))),
        source_level: Some(fmt_q(&below)),
    };
    if fd.is_trivial() {
        return Ok(if p.is_a_up_to_parity() {
            SimplicityVerdict {
                case: SimplicityCase::NotSimpleTrivialPair,
                clause: "2d".into(),
                reason: "M is trivial and P is A up to parity".into(),
                submodule: Some("the trivial module of constants".into()),
                source_level: None,
            }
        } else {
            SimplicityVerdict {
                case: SimplicityCase::Simple,
                clause: "2d".into(),
                reason: "M is trivial and P is not A up to parity".into(),
                submodule: None,
                source_level: None,
            }
        });
    }
    if fd.is_str_like() {
        return Ok(if p.sum_of_partials_is_everything() {
            SimplicityVerdict {
                case: SimplicityCase::Simple,
                clause: "2e".into(),
                reason: "M is Str up to parity and P = sum_s d_s P".into(),
                submodule: None,
                source_level: None,
            }
        } else {
            diff_sub("2e,2c", "M is Str up to parity and sum_s d_s P is proper".into())
        });
    }
    Ok(diff_sub("2a,2b,2c", format!("M = {} is fundamental, neither trivial nor Str", fd.label())))
}

/// The cases of the classification of simple modules with
/// finite-dimensional weight spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MainCase {
    /// `V = F(P, M)` is simple.
    I,
    /// `V = diff(F(P, M'))` for a finite-dimensional fundamental `M'`
    /// other than `Str`.
    II,
    /// `V` is trivial.
    III,
    /// `F(P, M)` has an infinite-dimensional weight space.
    NotHarishChandra,
}

impl MainCase {
    pub fn label(&self) -> &'static str {
        match self {
            MainCase::I => "i",
            MainCase::II => "ii",
            MainCase::III => "iii",
            MainCase::NotHarishChandra => "not-harish-chandra",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainVerdict {
    pub case: MainCase,
    /// The simple submodule `V` of `F(P, M)`.
    pub simple_submodule: String,
    /// Whether the weight-space finiteness condition holds.
    pub finite_weight_spaces: bool,
    /// For case (ii): the fundamental module `M'` with `V = diff(F(P, M'))`.
    pub source: Option<String>,
    pub lemma: SimplicityVerdict,
}

/// Classifies the simple submodule of `F(P, M)`.
pub fn main_theorem_classify(p: &KDescriptor, m: &MInput) -> Result<MainVerdict> {
    let lemma = simplicity_classify(p, m)?;
    let fd = fundamental_of(m);
    if let Some(fd) = &fd {
        if !fd.is_finite() {
            return Err(Error::NotClassifiable(format!(
                "{} is an infinite-dimensional fundamental module",
                fd.label()
            )));
        }
    }
    let hc = match m {
        MInput::Infinite { support, .. } => {
            let lam = support_point(support)?;
            let sh = shadow(support, &lam).map_err(undecided)?;
            hc_condition(p, &sh)?
        }
        // finite-dimensional modules have Delta''^F = Delta''
        _ => true,
    };
    let fp = format!("F({}, {})", p, m.label());
    let verdict = |case, simple_submodule: String, source| MainVerdict {
        case,
        simple_submodule,
        finite_weight_spaces: hc,
        source,
        lemma: lemma.clone(),
    };
    if !hc {
        return Ok(verdict(MainCase::NotHarishChandra, fp, None));
    }
    Ok(match (&fd, lemma.case) {
        (_, SimplicityCase::Simple) => verdict(MainCase::I, fp, None),
        (_, SimplicityCase::NotSimpleTrivialPair) => verdict(MainCase::III, "trivial".into(), None),
        (Some(fd), SimplicityCase::UniqueSimpleSubmodule) => {
            let src = FundamentalDescriptor {
                base: fd.base.clone(),
                level: &fd.level - Q::one(),
            };
            verdict(
                MainCase::II,
                format!("diff(F({}, {}))", p, src.label()),
                Some(src.label()),
            )
        }
        (None, SimplicityCase::UniqueSimpleSubmodule) => unreachable!("non-fundamental modules give simple tensor modules"),
    })
}

fn undecided(e: Error) -> Error {
    match e {
        Error::UndecidedWithinWindow(s) => Error::NotClassifiable(s),
        e => e,
    }
}

fn support_point(s: &SupportSet) -> Result<Weight> {
    s.components
        .first()
        .map(|c| c.base.clone())
        .ok_or_else(|| Error::InvalidDescriptor("empty support".into()))
}

/// The shadow of `supp(P)` in the even coordinates.
pub fn descriptor_shadow(p: &KDescriptor) -> Result<ShadowPartition> {
    shadow(&p.support(), &p.corner_weight()).map_err(undecided)
}

/// The support of a finite-dimensional module in the even coordinates.
pub fn module_support(m: &GlModule) -> SupportSet {
    let mut pts: Vec<Vec<Q>> = m.weights.iter().map(|w| w[..m.sig.m].to_vec()).collect();
    pts.sort();
    pts.dedup();
    SupportSet {
        m: m.sig.m,
        components: pts.into_iter().map(|w| Cone::point(Weight(w))).collect(),
    }
}

/// `(Delta''^I_P ⊔ Delta''^-_P) ⊆ (Delta''^F_V ⊔ Delta''^-_V)`.
pub fn hc_condition(p: &KDescriptor, v1: &ShadowPartition) -> Result<bool> {
    Ok(hc_violations(p, v1)?.is_empty())
}

/// The roots of `Delta''^I_P ⊔ Delta''^-_P` outside `Delta''^F_V ⊔
/// Delta''^-_V`.
pub fn hc_violations(p: &KDescriptor, v1: &ShadowPartition) -> Result<Vec<Root>> {
    if v1.m != p.sig.m {
        return Err(Error::SizeMismatch(v1.m, p.sig.m));
    }
    let ps = descriptor_shadow(p)?;
    let mut out = Vec::new();
    for a in delta_double_prime(p.sig.m) {
        let lhs = ps.infinite.contains(&a) || ps.minus.contains(&a);
        let rhs = v1.finite.contains(&a) || v1.minus.contains(&a);
        if lhs && !rhs {
            out.push(a);
        }
    }
    Ok(out)
}

/// Counts of pairs `(mu, beta)` with `mu ∈ supp(P)`, `beta ∈ supp(V)`
/// inside `v_base + [-r, r]^m` and `mu + beta = gamma`, for growing `r`:
/// the dimension of `F(P, V)_gamma` when all weight spaces of `P` and `V`
/// are one-dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub gamma: String,
    pub radii: Vec<i64>,
    pub counts: Vec<usize>,
}

impl PairCounts {
    pub fn strictly_increasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] < w[1])
    }

    pub fn stable(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn pair_counts(p: &KDescriptor, v: &SupportSet, v_base: &Weight, gamma: &Weight, radii: &[i64]) -> PairCounts {
    let ps = p.support();
    let counts = radii
        .iter()
        .map(|&r| {
            v.window(v_base, r)
                .into_iter()
                .filter(|beta| ps.contains(&Weight(gamma.0.iter().zip(&beta.0).map(|(g, b)| g - b).collect())))
                .count()
        })
        .collect();
    PairCounts {
        gamma: gamma.to_string(),
        radii: radii.to_vec(),
        counts,
    }
}

/// Weight-space dimensions of `F(P, L)` for `L = L(V)` the simple top of
/// the Kac module of a `gl^0`-module `V`, on nested windows, against the
/// uniform bound `2^n dim Lambda(gl^{-1}) dim V max dim P_mu` obtained by
/// summing the product bound over the weights of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEvidence {
    pub radii: Vec<i64>,
    pub max_dims: Vec<usize>,
    pub bound: usize,
}

impl BoundEvidence {
    pub fn holds(&self) -> bool {
        self.max_dims.iter().all(|&d| d <= self.bound)
    }
}

pub fn condfdim_bound_evidence(p: &KDescriptor, v: &GlModule, radii: &[i64], budget: usize) -> Result<BoundEvidence> {
    let sig = p.sig;
    let l = simple_top(&kac_module(v)?)?;
    let bound = (1usize << sig.n) * (1usize << (sig.m * sig.n)) * v.dim();
    let mut max_dims = Vec::new();
    for &r in radii {
        let win = TensorWindow::new(p.clone(), l.clone(), None, WindowSpec::cube(p.corner_weight().0, r), budget)?;
        max_dims.push(win.spaces.values().map(Vec::len).max().unwrap_or(0));
    }
    Ok(BoundEvidence {
        radii: radii.to_vec(),
        max_dims,
        bound,
    })
}

/// The images under `pi` of all basis fields of degree at most `degree`.
pub fn field_generators(sig: Signature, degree: i64) -> Vec<(FieldTerm, TElem)> {
    let ta = TensorAlgebra::new(sig);
    FieldTerm::basis(sig, degree)
        .into_iter()
        .map(|t| {
            let x = pi_term(&ta, &t, SignRule::RESOLVED);
            (t, x)
        })
        .collect()
}

/// Evidence that `diff(F(P, P'[lambda - 1]))` is a proper nonzero
/// submodule of `F(P, P'[lambda])` on a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageEvidence {
    pub window: String,
    pub window_dim: usize,
    pub image_rank: usize,
    pub invariance_checks: usize,
    pub invariance_failures: usize,
}

impl ImageEvidence {
    pub fn proper_nonzero(&self) -> bool {
        self.image_rank > 0 && self.image_rank < self.window_dim
    }

    pub fn holds(&self) -> bool {
        self.proper_nonzero() && self.invariance_failures == 0
    }
}

struct DiffImage<'a> {
    p: &'a KDescriptor,
    source: KAsGl,
    cache: BTreeMap<Vec<Q>, Echelon<(PKey, PKey, usize)>>,
}

impl DiffImage<'_> {
    fn at(&mut self, w: &[Q]) -> Result<&Echelon<(PKey, PKey, usize)>> {
        if !self.cache.contains_key(w) {
            let mut ech = Echelon::new();
            let src = TensorWindow::<KAsGl>::basis_of(self.p, &self.source, w)?;
            for b in src {
                ech.insert(&diff_apply(self.p, &self.source, &WVec::from([(b, Q::one())])));
            }
            self.cache.insert(w.to_vec(), ech);
        }
        Ok(&self.cache[w])
    }
}

pub fn diff_image_evidence(
    p: &KDescriptor,
    fd: &FundamentalDescriptor,
    spec: &WindowSpec,
    degree: i64,
    budget: usize,
) -> Result<ImageEvidence> {
    let target = TensorWindow::new(p.clone(), KAsGl::new(fd.base.clone(), Some(fd.level.clone())), None, spec.clone(), budget)?;
    let mut image = DiffImage {
        p,
        source: KAsGl::new(fd.base.clone(), Some(&fd.level - Q::one())),
        cache: BTreeMap::new(),
    };
    let gens = field_generators(p.sig, degree);
    let mut ev = ImageEvidence {
        window: spec.to_string(),
        window_dim: target.dim(),
        image_rank: 0,
        invariance_checks: 0,
        invariance_failures: 0,
    };
    for w in target.spaces.keys() {
        let rows: Vec<WVec<PKey>> = image.at(w)?.basis().cloned().collect();
        ev.image_rank += rows.len();
        for u in &rows {
            for (_, x) in &gens {
                let y = target.act(x, u);
                let Some(k) = y.keys().next() else { continue };
                let wy = target.weight_of(k);
                ev.invariance_checks += 1;
                if !image.at(&wy)?.contains(&y) {
                    ev.invariance_failures += 1;
                }
            }
        }
    }
    Ok(ev)
}

impl TensorWindow<KAsGl> {
    /// Weight-space basis of `F(P, M)` at `w` without building a window.
    pub fn basis_of(p: &KDescriptor, m: &KAsGl, w: &[Q]) -> Result<Vec<(PKey, PKey, usize)>> {
        let empty = WindowSpec::new(Vec::new(), Vec::new(), Vec::new())?;
        let probe = TensorWindow {
            p: p.clone(),
            m: m.clone(),
            s: None,
            spec: empty,
            spaces: BTreeMap::new(),
        };
        probe.basis_at(w)
    }
}

/// Evidence that the module generated by a random window vector reaches
/// every weight space of the window (generation is followed through the
/// window enlarged by one step in every direction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationEvidence {
    pub seeds: usize,
    pub window_weights: usize,
    /// Per seed: window weight spaces met by the generated submodule.
    pub reached: Vec<usize>,
    /// Per seed: window weight spaces filled by the generated submodule.
    pub filled: Vec<usize>,
}

impl GenerationEvidence {
    pub fn all_reached(&self) -> bool {
        self.reached.iter().all(|&r| r == self.window_weights)
    }

    pub fn all_filled(&self) -> bool {
        self.filled.iter().all(|&r| r == self.window_weights)
    }
}

pub fn generation_evidence<M: GlAction>(
    win: &TensorWindow<M>,
    gens: &[TElem],
    seeds: usize,
    rng_seed: u64,
) -> Result<GenerationEvidence> {
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let weights: Vec<&Vec<Q>> = win.spaces.keys().collect();
    let outer = win.spec.grow(1);
    let mut ev = GenerationEvidence {
        seeds,
        window_weights: weights.len(),
        reached: Vec::new(),
        filled: Vec::new(),
    };
    if weights.is_empty() {
        return Ok(ev);
    }
    for _ in 0..seeds {
        let w = weights[rng.random_range(0..weights.len())];
        let mut v = WVec::new();
        for b in &win.spaces[w] {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                v.insert(b.clone(), q(c));
            }
        }
        if v.is_empty() {
            v.insert(win.spaces[w][0].clone(), Q::one());
        }
        let spans = generate(win, gens, &outer, v);
        let (mut reached, mut filled) = (0, 0);
        for (w, basis) in &win.spaces {
            let r = spans.get(w).map_or(0, |e| e.rank());
            reached += usize::from(r > 0);
            filled += usize::from(r == basis.len());
        }
        ev.reached.push(reached);
        ev.filled.push(filled);
    }
    Ok(ev)
}

/// The submodule generated by `v` under `gens`, followed through the
/// weights of `outer`, as one echelon basis per weight.
fn generate<M: GlAction>(
    win: &TensorWindow<M>,
    gens: &[TElem],
    outer: &WindowSpec,
    v: WVec<M::Key>,
) -> BTreeMap<Vec<Q>, Echelon<(PKey, M::Key, usize)>> {
    let mut spans: BTreeMap<Vec<Q>, Echelon<(PKey, M::Key, usize)>> = BTreeMap::new();
    let Some(k) = v.keys().next() else { return spans };
    spans.entry(win.weight_of(k)).or_default().insert(&v);
    let mut queue = vec![v];
    while let Some(u) = queue.pop() {
        for x in gens {
            let y = win.act(x, &u);
            let mut parts: BTreeMap<Vec<Q>, WVec<M::Key>> = BTreeMap::new();
            for (k, c) in y {
                parts.entry(win.weight_of(&k)).or_default().insert(k, c);
            }
            for (wy, part) in parts {
                if !outer.contains(&wy) {
                    continue;
                }
                let ech = spans.entry(wy).or_default();
                let red = ech.reduce(&part);
                if !red.is_empty() {
                    ech.insert(&red);
                    queue.push(red);
                }
            }
        }
    }
    spans
}

/// Evidence that `diff(F(P, P'[lambda - 1]))` is simple: the submodule
/// generated by a random vector of the image fills the image at every
/// window weight where the image is nonzero.
pub fn image_generation_evidence(
    p: &KDescriptor,
    fd: &FundamentalDescriptor,
    spec: &WindowSpec,
    degree: i64,
    seeds: usize,
    rng_seed: u64,
    budget: usize,
) -> Result<GenerationEvidence> {
    let target = TensorWindow::new(p.clone(), KAsGl::new(fd.base.clone(), Some(fd.level.clone())), None, spec.clone(), budget)?;
    let mut image = DiffImage {
        p,
        source: KAsGl::new(fd.base.clone(), Some(&fd.level - Q::one())),
        cache: BTreeMap::new(),
    };
    let mut ranks = BTreeMap::new();
    for w in target.spaces.keys() {
        let r = image.at(w)?.rank();
        if r > 0 {
            ranks.insert(w.clone(), r);
        }
    }
    let gens: Vec<TElem> = field_generators(p.sig, degree).into_iter().map(|(_, x)| x).collect();
    let outer = spec.grow(1);
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let weights: Vec<&Vec<Q>> = ranks.keys().collect();
    let mut ev = GenerationEvidence {
        seeds,
        window_weights: weights.len(),
        reached: Vec::new(),
        filled: Vec::new(),
    };
    if weights.is_empty() {
        return Ok(ev);
    }
    for _ in 0..seeds {
        let w = weights[rng.random_range(0..weights.len())];
        let mut v = WVec::new();
        for row in image.at(w)?.basis() {
            let c = q(rng.random_range(1..=5));
            crate::linalg::add_scaled(&mut v, row, &c);
        }
        let spans = generate(&target, &gens, &outer, v);
        let (mut reached, mut filled) = (0, 0);
        for (w, r) in &ranks {
            let g = spans.get(w).map_or(0, |e| e.rank());
            reached += usize::from(g > 0);
            filled += usize::from(g == *r);
        }
        ev.reached.push(reached);
        ev.filled.push(filled);
    }
    Ok(ev)
}

/// Labels for a list of roots.
pub fn root_labels(roots: &[Root]) -> Vec<String> {
    roots.iter().map(|r| root_label(r)).collect()
}
