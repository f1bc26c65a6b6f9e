//! Structured text forms: term lists for polynomials and vector fields,
//! support sets, finite-dimensional module fixtures and module
//! descriptors. Rationals are `"p/q"` strings; every index in text is
//! one-based.

use serde::{Deserialize, Serialize};

use crate::algebra::{Context, FieldTerm, GlIndex, Monomial, OddSet, Signature, SuperPoly, VectorField};
use crate::enveloping::{KLetter, LeviSpec};
use crate::error::{Error, Result};
use crate::glreps::{gl_natural, k_character, k_natural, k_trivial, FinModule, Generator, GlModule, KModule};
use crate::rational::{fmt_q, parse_q, Q};
use crate::tensor::{Factor, KDescriptor};
use crate::weights::{Cone, SupportSet, Weight};

/// One term `coeff * t^alpha xi_odd (d_dir)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermText {
    pub coeff: String,
    pub alpha: Vec<i32>,
    pub odd: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<usize>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn field_path(path: &str, k: usize, what: String) -> Error {
    Error::Parse(format!("{path}[{k}]: {what}"))
}

fn mono_text(m: &Monomial) -> (Vec<i32>, Vec<usize>) {
    (m.exps.to_vec(), m.odd.iter().map(|i| i + 1).collect())
}

fn mono_of(sig: Signature, t: &TermText, path: &str, k: usize) -> Result<Monomial> {
    if t.alpha.len() != sig.m {
        return Err(field_path(path, k, format!("alpha has {} entries, expected {}", t.alpha.len(), sig.m)));
    }
    let mut odd = OddSet::EMPTY;
    let mut last = 0;
    for &i in &t.odd {
        if i == 0 || i > sig.n {
            return Err(field_path(path, k, format!("odd index {i} outside 1..{}", sig.n)));
        }
        if i <= last {
            return Err(field_path(path, k, "odd indices must be strictly increasing".into()));
        }
        last = i;
        odd = odd.with(i - 1);
    }
    Ok(Monomial::new(&t.alpha, odd))
}

fn coeff_of(t: &TermText, path: &str, k: usize) -> Result<Q> {
    parse_q(&t.coeff).map_err(|e| field_path(path, k, format!("coeff: {e}")))
}

pub fn poly_to_text(p: &SuperPoly) -> String {
    let terms: Vec<TermText> = p
        .terms
        .iter()
        .map(|(m, c)| {
            let (alpha, odd) = mono_text(m);
            TermText { coeff: fmt_q(c), alpha, odd, dir: None }
        })
        .collect();
    to_json(&terms)
}

pub fn poly_from_text(sig: Signature, ctx: Context, text: &str) -> Result<SuperPoly> {
    let terms: Vec<TermText> = parse_json(text)?;
    let mut out = Vec::new();
    for (k, t) in terms.iter().enumerate() {
        if t.dir.is_some() {
            return Err(field_path("terms", k, "a polynomial term has no dir".into()));
        }
        out.push((mono_of(sig, t, "terms", k)?, coeff_of(t, "terms", k)?));
    }
    SuperPoly::from_terms(sig, ctx, out)
}

pub fn field_to_text(x: &VectorField) -> String {
    let terms: Vec<TermText> = x
        .terms
        .iter()
        .map(|(t, c)| {
            let (alpha, odd) = mono_text(&t.mono);
            TermText {
                coeff: fmt_q(c),
                alpha,
                odd,
                dir: Some(t.dir + 1),
            }
        })
        .collect();
    to_json(&terms)
}

pub fn field_from_text(sig: Signature, text: &str) -> Result<VectorField> {
    let terms: Vec<TermText> = parse_json(text)?;
    let mut out = Vec::new();
    for (k, t) in terms.iter().enumerate() {
        let dir = match t.dir {
            Some(d) if d >= 1 && d <= sig.dim() => d - 1,
            Some(d) => return Err(field_path("terms", k, format!("dir {d} outside 1..{}", sig.dim()))),
            None => return Err(field_path("terms", k, "missing dir".into())),
        };
        let mono = mono_of(sig, t, "terms", k)?;
        if !mono.is_polynomial() {
            return Err(field_path("terms", k, "negative exponent".into()));
        }
        out.push((FieldTerm::new(mono, dir), coeff_of(t, "terms", k)?));
    }
    let x = VectorField::from_terms(sig, out);
    x.validate()?;
    Ok(x)
}

/// One cone `base + Z free + Z_+ plus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeText {
    pub base: Vec<String>,
    #[serde(default)]
    pub free: Vec<Vec<i64>>,
    #[serde(default)]
    pub plus: Vec<Vec<i64>>,
}

pub fn support_to_text(s: &SupportSet) -> String {
    let cones: Vec<ConeText> = s
        .components
        .iter()
        .map(|c| ConeText {
            base: c.base.0.iter().map(fmt_q).collect(),
            free: c.free.clone(),
            plus: c.plus.clone(),
        })
        .collect();
    to_json(&cones)
}

pub fn support_from_text(text: &str) -> Result<SupportSet> {
    let cones: Vec<ConeText> = parse_json(text)?;
    let Some(first) = cones.first() else {
        return Err(Error::Parse("a support set needs at least one cone".into()));
    };
    let m = first.base.len();
    let mut out = Vec::new();
    for (k, c) in cones.iter().enumerate() {
        let base = c
            .base
            .iter()
            .map(|x| parse_q(x))
            .collect::<Result<Vec<Q>>>()
            .map_err(|e| Error::Parse(format!("cones[{k}].base: {e}")))?;
        if base.len() != m {
            return Err(Error::Parse(format!("cones[{k}].base: {} coordinates, expected {m}", base.len())));
        }
        out.push(Cone::new(Weight(base), c.free.clone(), c.plus.clone()).map_err(|e| Error::Parse(format!("cones[{k}]: {e}")))?);
    }
    SupportSet::new(m, out)
}

/// A matrix entry: generator `gen` sends basis vector `col` to `coeff`
/// times basis vector `row`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryText {
    pub gen: Vec<usize>,
    pub row: usize,
    pub col: usize,
    pub coeff: String,
}

/// A finite-dimensional gl(m|n)-module: `kind = "gl"`, generators are
/// `[i, j]` for `E_ij`; or a `k`-module: `kind = "k"`, generators are
/// `[block, i, j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleText {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    pub parities: Vec<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<String>>,
    pub entries: Vec<EntryText>,
}

fn entries_of<L: Generator>(module: &FinModule<L>, gen: impl Fn(&L) -> Vec<usize>) -> Vec<EntryText> {
    let mut out = Vec::new();
    for (l, cols) in &module.action {
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                out.push(EntryText {
                    gen: gen(l),
                    row: i + 1,
                    col: j + 1,
                    coeff: fmt_q(c),
                });
            }
        }
    }
    out
}

pub fn gl_module_to_text(module: &GlModule) -> String {
    to_json(&ModuleText {
        kind: "gl".into(),
        m: module.sig.m,
        n: module.sig.n,
        blocks: None,
        parities: module.parities.iter().map(|&p| u8::from(p)).collect(),
        weights: module.weights.iter().map(|w| w.iter().map(fmt_q).collect()).collect(),
        entries: entries_of(module, |g| vec![g.row + 1, g.col + 1]),
    })
}

pub fn k_module_to_text(levi: &LeviSpec, module: &KModule) -> String {
    to_json(&ModuleText {
        kind: "k".into(),
        m: levi.q,
        n: levi.n,
        blocks: Some(levi.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()),
        parities: module.parities.iter().map(|&p| u8::from(p)).collect(),
        weights: Vec::new(),
        entries: entries_of(module, |x| vec![x.block as usize + 1, x.row as usize + 1, x.col as usize + 1]),
    })
}

fn fill_entries<L: Generator>(
    module: &mut FinModule<L>,
    entries: &[EntryText],
    gen: impl Fn(&[usize]) -> Option<L>,
) -> Result<()> {
    let dim = module.dim();
    for (k, e) in entries.iter().enumerate() {
        let l = gen(&e.gen).ok_or_else(|| field_path("entries", k, format!("unknown generator {:?}", e.gen)))?;
        if e.row == 0 || e.row > dim || e.col == 0 || e.col > dim {
            return Err(field_path("entries", k, format!("row/col outside 1..{dim}")));
        }
        let c = parse_q(&e.coeff).map_err(|err| field_path("entries", k, format!("coeff: {err}")))?;
        module.set(l, e.row - 1, e.col - 1, c);
    }
    Ok(())
}

fn check_module<L: Generator>(module: &FinModule<L>) -> Result<()> {
    if let Some((a, b)) = module.bracket_failures().first() {
        return Err(Error::GradationError(format!("the matrices do not respect [{a}, {b}]")));
    }
    if let Some(g) = module.grading_failures().first() {
        return Err(Error::GradationError(g.clone()));
    }
    Ok(())
}

fn parities_of(t: &ModuleText) -> Result<Vec<bool>> {
    t.parities
        .iter()
        .enumerate()
        .map(|(k, &p)| match p {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(field_path("parities", k, format!("{p} is not 0 or 1"))),
        })
        .collect()
}

pub fn gl_module_from_text(text: &str) -> Result<GlModule> {
    let t: ModuleText = parse_json(text)?;
    if t.kind != "gl" {
        return Err(Error::Parse(format!("kind: expected \"gl\", found {:?}", t.kind)));
    }
    let sig = Signature::new(t.m, t.n);
    let parities = parities_of(&t)?;
    if t.weights.len() != parities.len() {
        return Err(Error::Parse(format!("weights: {} rows for {} basis vectors", t.weights.len(), parities.len())));
    }
    let mut weights = Vec::new();
    for (k, w) in t.weights.iter().enumerate() {
        if w.len() != sig.dim() {
            return Err(field_path("weights", k, format!("{} coordinates, expected {}", w.len(), sig.dim())));
        }
        weights.push(w.iter().map(|x| parse_q(x)).collect::<Result<Vec<Q>>>().map_err(|e| field_path("weights", k, e.to_string()))?);
    }
    let mut module = FinModule {
        sig,
        generators: GlIndex::all(sig),
        parities,
        weights,
        action: Default::default(),
    };
    fill_entries(&mut module, &t.entries, |g| match g {
        [i, j] if (1..=sig.dim()).contains(i) && (1..=sig.dim()).contains(j) => Some(GlIndex::new(i - 1, j - 1)),
        _ => None,
    })?;
    check_module(&module)?;
    Ok(module)
}

pub fn k_module_from_text(levi: &LeviSpec, text: &str) -> Result<KModule> {
    let t: ModuleText = parse_json(text)?;
    if t.kind != "k" {
        return Err(Error::Parse(format!("kind: expected \"k\", found {:?}", t.kind)));
    }
    let blocks: Vec<Vec<usize>> = t.blocks.clone().unwrap_or_default().iter().map(|b| b.iter().map(|i| i - 1).collect()).collect();
    if t.m != levi.q || t.n != levi.n || blocks != levi.blocks {
        return Err(Error::Parse("m, n, blocks: the module is over a different Levi datum".into()));
    }
    let parities = parities_of(&t)?;
    let dim = parities.len();
    let mut module = FinModule {
        sig: levi.sig(),
        generators: levi.k_basis(),
        parities,
        weights: vec![Vec::new(); dim],
        action: Default::default(),
    };
    fill_entries(&mut module, &t.entries, |g| match g {
        [b, i, j] if *b >= 1 && *b <= levi.blocks.len() => {
            let size = levi.blocks[b - 1].len();
            ((1..=size).contains(i) && (1..=size).contains(j)).then(|| KLetter::new(b - 1, i - 1, j - 1))
        }
        _ => None,
    })?;
    check_module(&module)?;
    Ok(module)
}

/// `k`-module tags: `trivial`, `chi:c1,...` (a character with the given
/// values on the Cartan elements, in block order) and `natural:b`.
pub fn k_module_from_tag(levi: &LeviSpec, tag: &str) -> Result<KModule> {
    if tag == "trivial" {
        return Ok(k_trivial(levi));
    }
    if let Some(rest) = tag.strip_prefix("chi:") {
        let vals: Vec<Q> = rest.split(',').map(parse_q).collect::<Result<_>>()?;
        let total: usize = levi.blocks.iter().map(Vec::len).sum();
        if vals.len() != total {
            return Err(Error::SizeMismatch(vals.len(), total));
        }
        let mut it = vals.into_iter();
        let values: Vec<Vec<Q>> = levi.blocks.iter().map(|b| it.by_ref().take(b.len()).collect()).collect();
        return Ok(k_character(levi, &values));
    }
    if let Some(b) = tag.strip_prefix("natural:") {
        let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("block {b:?}")))?;
        if b == 0 || b > levi.blocks.len() {
            return Err(Error::IndexOutOfRange(format!("block {b}")));
        }
        return Ok(k_natural(levi, b - 1));
    }
    Err(Error::UnknownTag(tag.to_string()))
}

/// The gl-module behind a tag, when it is finite-dimensional.
pub fn gl_module_from_tag(sig: Signature, tag: &str) -> Result<GlModule> {
    if tag == "gl-natural" {
        return Ok(gl_natural(sig));
    }
    Err(Error::UnknownTag(tag.to_string()))
}

/// Descriptor text for a simple `K(m|n)`-module: `A`, `Asigma`, or a
/// comma-separated list of even factors `shift:p/q`, `poly`, `quot`; each
/// optionally prefixed by `pi-` for the parity change.
pub fn descriptor_from_text(sig: Signature, text: &str) -> Result<KDescriptor> {
    let text = text.trim();
    let (flip, body) = match text.strip_prefix("pi-") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let base = match body {
        "A" => KDescriptor::polynomial(sig),
        "Asigma" => KDescriptor::sigma_dual(sig),
        _ => {
            let factors = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .enumerate()
                    .map(|(k, f)| match f.trim() {
                        "poly" => Ok(Factor::Poly),
                        "quot" => Ok(Factor::Quot),
                        s => match s.strip_prefix("shift:") {
                            Some(l) => Ok(Factor::shift(&parse_q(l).map_err(|e| Error::Parse(format!("factors[{}]: {e}", k + 1)))?)),
                            None => Err(Error::Parse(format!("factors[{}]: unknown factor {s:?}", k + 1))),
                        },
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            KDescriptor::new(sig, factors, false)?
        }
    };
    let parity = base.parity ^ flip;
    KDescriptor::new(sig, base.factors, parity)
}

/// Inverse of [`descriptor_from_text`]; `A` and `Asigma` are named.
pub fn descriptor_to_text(p: &KDescriptor) -> String {
    if p.factors.iter().all(|f| *f == Factor::Poly) {
        return format!("{}A", if p.parity { "pi-" } else { "" });
    }
    if p.factors.iter().all(|f| *f == Factor::Quot) {
        return format!("{}Asigma", if p.parity != (p.sig.n % 2 == 1) { "pi-" } else { "" });
    }
    let factors: Vec<String> = p
        .factors
        .iter()
        .map(|f| match f {
            Factor::Shift { lambda } => format!("shift:{lambda}"),
            Factor::Poly => "poly".into(),
            Factor::Quot => "quot".into(),
        })
        .collect();
    format!("{}{}", if p.parity { "pi-" } else { "" }, factors.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glreps::{gl0_character, kac_module, simple_top, str_module};
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    #[test]
    fn field_round_trip() {
        let sig = Signature::new(2, 2);
        for t in FieldTerm::basis(sig, 2) {
            let x = VectorField::from_terms(sig, [(t, qr(-7, 3))]);
            let text = field_to_text(&x);
            assert_eq!(field_from_text(sig, &text).unwrap(), x);
            assert_eq!(field_to_text(&field_from_text(sig, &text).unwrap()), text);
        }
        let bad = r#"[{"coeff":"1","alpha":[0,0],"odd":[2,1],"dir":1}]"#;
        assert!(matches!(field_from_text(sig, bad), Err(Error::Parse(s)) if s.contains("terms[0]")));
    }

    proptest! {
        #[test]
        fn poly_round_trip(terms in prop::collection::vec((-3i32..4, -3i32..4, 0u32..4, -20i64..20, 1i64..9), 0..6)) {
            let sig = Signature::new(2, 2);
            let p = SuperPoly::from_terms(
                sig,
                Context::Laurent,
                terms.into_iter().map(|(a, b, o, n, d)| (Monomial::new(&[a, b], OddSet::from_bits(o)), qr(n, d))),
            ).unwrap();
            let text = poly_to_text(&p);
            prop_assert_eq!(poly_from_text(sig, Context::Laurent, &text).unwrap(), p);
        }
    }

    #[test]
    fn support_round_trip() {
        let text = r#"[{"base":["1/2","0"],"free":[[1,0]],"plus":[[0,-1]]}]"#;
        let s = support_from_text(text).unwrap();
        assert_eq!(support_from_text(&support_to_text(&s)).unwrap(), s);
        assert!(support_from_text(r#"[{"base":["0"],"free":[[1]],"plus":[[2]]}]"#).is_err());
    }

    #[test]
    fn module_round_trip() {
        let sig = Signature::new(1, 1);
        for m in [str_module(sig), gl_natural(sig), simple_top(&kac_module(&gl0_character(sig, &[q(2), q(1)])).unwrap()).unwrap()] {
            let text = gl_module_to_text(&m);
            let back = gl_module_from_text(&text).unwrap();
            assert_eq!(gl_module_to_text(&back), text);
        }
        let levi = LeviSpec::gl1(1, 1);
        let chi = k_module_from_tag(&levi, "chi:5/2").unwrap();
        let text = k_module_to_text(&levi, &chi);
        assert_eq!(k_module_to_text(&levi, &k_module_from_text(&levi, &text).unwrap()), text);
        // a non-module is rejected
        let broken = r#"{"kind":"gl","m":1,"n":1,"parities":[0,0],"weights":[["1","0"],["0","1"]],"entries":[{"gen":[1,2],"row":1,"col":2,"coeff":"1"}]}"#;
        assert!(gl_module_from_text(broken).is_err());
    }

    #[test]
    fn descriptors() {
        let sig = Signature::new(2, 1);
        let p = descriptor_from_text(sig, "pi-shift:1/2,quot").unwrap();
        assert_eq!(descriptor_from_text(sig, &descriptor_to_text(&p)).unwrap(), p);
        assert_eq!(descriptor_from_text(sig, "A").unwrap(), KDescriptor::polynomial(sig));
        assert!(descriptor_from_text(sig, "shift:1,poly").is_err());
        assert!(descriptor_from_text(sig, "poly").is_err());
    }
}
