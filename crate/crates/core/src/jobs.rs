//! Report builders for the single-computation commands: brackets, shadow,
//! parabolic and Levi data of a support, classification of `F(P, M)` /
//! `F(P, M, S)` and the annihilation order of `omega-bar`.

use std::path::Path;

use serde_json::{json, Value};

use crate::algebra::Signature;
use crate::enveloping::LeviSpec;
use crate::error::{Error, Result};
use crate::format::{
    descriptor_to_text, field_from_text, field_to_text, gl_module_from_text, k_module_from_tag, k_module_from_text,
    support_from_text,
};
use crate::glreps::{GlModule, KModule};
use crate::rational::{parse_q, Q};
use crate::report::{params, Item, Params, Report};
use crate::suites::{default_window, fmt_weight, shadow_checks, shadow_json, verdict_evidence};
use crate::tensor::classify::{detect_fundamental, main_theorem_classify, root_labels, MInput};
use crate::tensor::second::{f2_simplicity, omega_bar_r0, second_generation_evidence};
use crate::tensor::{KDescriptor, TensorWindow, WindowSpec};
use crate::weights::{
    default_triangular_split, find_extremal, levi_shape, parabolic_decomposition, shadow, SupportSet, Weight,
    DEFAULT_WINDOW,
};

/// Window text relative to a base weight: a radius `R` (the cube
/// `[-R, R]` in every coordinate) or per-coordinate offsets `a:b,c:d,...`.
pub fn window_from_text(base: Vec<Q>, text: &str) -> Result<WindowSpec> {
    let text = text.trim();
    if !text.contains(':') {
        let r: i64 = text.parse().map_err(|_| Error::Parse(format!("window: expected a radius or a:b,... got {text:?}")))?;
        if r < 0 {
            return Err(Error::Parse(format!("window: negative radius {r}")));
        }
        return Ok(WindowSpec::cube(base, r));
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for (k, part) in text.split(',').enumerate() {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window[{}]: expected a:b, got {part:?}", k + 1)))?;
        let parse = |s: &str| -> Result<i64> {
            s.trim().parse().map_err(|_| Error::Parse(format!("window[{}]: not an integer: {s:?}", k + 1)))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(Error::Parse(format!("window[{}]: empty interval {a}:{b}", k + 1)));
        }
        lo.push(a);
        hi.push(b);
    }
    if lo.len() != base.len() {
        return Err(Error::Parse(format!("window: {} intervals for {} even coordinates", lo.len(), base.len())));
    }
    WindowSpec::new(base, lo, hi)
}

/// Reads `arg` as a file when such a file exists, otherwise returns it as
/// inline text.
fn file_or_inline(arg: &str) -> Result<(String, bool)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        Ok((text, true))
    } else {
        Ok((arg.to_string(), false))
    }
}

fn in_file(arg: &str, e: Error) -> Error {
    Error::Parse(format!("{arg}: {e}"))
}

pub fn read_support(arg: &str) -> Result<SupportSet> {
    let (text, from_file) = file_or_inline(arg)?;
    support_from_text(&text).map_err(|e| if from_file { in_file(arg, e) } else { e })
}

/// `M` given by a tag or a module file.
pub fn read_m(sig: Signature, arg: &str) -> Result<MInput> {
    let path = Path::new(arg);
    if !path.is_file() {
        return MInput::from_tag(sig, arg);
    }
    let (text, _) = file_or_inline(arg)?;
    let module: GlModule = gl_module_from_text(&text).map_err(|e| in_file(arg, e))?;
    if module.sig != sig {
        return Err(in_file(arg, Error::SignatureMismatch(sig.to_string(), module.sig.to_string())));
    }
    Ok(match detect_fundamental(&module) {
        Some(fd) => MInput::Fundamental(fd),
        None => MInput::Finite { label: arg.to_string(), module },
    })
}

/// `S` given by a tag or a module file.
pub fn read_s(levi: &LeviSpec, arg: &str) -> Result<KModule> {
    if Path::new(arg).is_file() {
        let (text, _) = file_or_inline(arg)?;
        k_module_from_text(levi, &text).map_err(|e| in_file(arg, e))
    } else {
        k_module_from_tag(levi, arg)
    }
}

/// The finite-dimensional module behind `M`, for window computations.
fn m_module(m: &MInput) -> Option<Result<GlModule>> {
    match m {
        MInput::Fundamental(fd) if fd.is_finite() => Some(crate::glreps::fundamental_module(fd)),
        MInput::Finite { module, .. } => Some(Ok(module.clone())),
        _ => None,
    }
}

/// The bracket of two vector fields given as term lists.
pub fn bracket_job(sig: Signature, x_arg: &str, y_arg: &str) -> Result<Report> {
    let read = |arg: &str| -> Result<_> {
        let (text, from_file) = file_or_inline(arg)?;
        field_from_text(sig, &text).map_err(|e| if from_file { in_file(arg, e) } else { e })
    };
    let (x, y) = (read(x_arg)?, read(y_arg)?);
    let xy = x.bracket(&y)?;
    let yx = y.bracket(&x)?;
    let x_par = x.parity();
    let y_par = y.parity();
    let ps = params([("m", sig.m.to_string()), ("n", sig.n.to_string())]);
    let mut items = Vec::new();
    if let (Some(px), Some(py)) = (x_par, y_par) {
        // [x, y] + (-1)^{|x||y|} [y, x] = 0
        let sum = xy.add(&yx.scale(&crate::rational::sign(px && py)))?;
        items.push(Item::new("antisymmetry", ps.clone(), sum.is_zero(), sum.terms.len(), json!({ "residual": terms_json(&sum) })));
    } else {
        items.push(Item::new("antisymmetry", ps.clone(), true, 0, json!("skipped: an argument is not homogeneous")));
    }
    let result = terms_json(&xy);
    let headline = format!("[{x}, {y}] = {xy}");
    Ok(Report::new("bracket", ps, items, json!({ "bracket": result, "terms": xy.terms.len() })).with_headline(headline))
}

fn terms_json(x: &crate::algebra::VectorField) -> Value {
    serde_json::from_str(&field_to_text(x)).expect("term list json")
}

/// A base point of a support: the base of its first cone.
fn base_point(s: &SupportSet) -> Weight {
    s.components[0].base.clone()
}

/// The shadow partition of a support with the shadow-machinery checks.
pub fn shadow_job(arg: &str, cap: i64) -> Result<Report> {
    let s = read_support(arg)?;
    let lam = base_point(&s);
    let sh = shadow(&s, &lam)?;
    let ps = params([("support", arg.to_string()), ("base", lam.to_string())]);
    let (ok, failed, ev) = shadow_checks(&s, &lam, cap)?;
    let items = vec![Item::new("shadow-machinery", ps.clone(), ok, failed, ev)];
    let headline = format!(
        "plus: {}; minus: {}; finite: {}; infinite: {}",
        list(&root_labels(&sh.plus)),
        list(&root_labels(&sh.minus)),
        list(&root_labels(&sh.finite)),
        list(&root_labels(&sh.infinite))
    );
    let mut result = shadow_json(&sh);
    result["gamma-generators"] = json!(root_labels(&sh.gamma_generators));
    Ok(Report::new("shadow", ps, items, result).with_headline(headline))
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", v.join(", "))
    }
}

/// The parabolic decomposition at an extremal weight of a support, with
/// the default triangular split of the finite roots orthogonal to it.
pub fn parabolic_job(arg: &str, cap: i64) -> Result<Report> {
    let s = read_support(arg)?;
    let ext = find_extremal(&s, &base_point(&s), DEFAULT_WINDOW)?;
    let sh = shadow(&s, &ext)?;
    let f0: Vec<_> = sh.finite.iter().filter(|a| num_traits::Zero::is_zero(&ext.pair(a))).cloned().collect();
    let tri = default_triangular_split(&f0);
    let para = parabolic_decomposition(&sh, &ext, &tri, cap)?;
    let ps = params([("support", arg.to_string()), ("extremal", ext.to_string()), ("cap", cap.to_string())]);
    let checks = json!({ "partition": para.is_partition(), "splits": para.splits() });
    let ok = para.is_partition() && para.splits();
    let items = vec![Item::new("parabolic-decomposition", ps.clone(), ok, usize::from(!ok), checks)];
    let result = json!({
        "triangular-split": { "plus": root_labels(&tri.plus), "minus": root_labels(&tri.minus) },
        "plus": root_labels(&para.plus),
        "zero": root_labels(&para.zero),
        "minus": root_labels(&para.minus),
    });
    let headline = format!(
        "plus: {}; zero: {}; minus: {}",
        list(&root_labels(&para.plus)),
        list(&root_labels(&para.zero)),
        list(&root_labels(&para.minus))
    );
    Ok(Report::new("parabolic", ps, items, result).with_headline(headline))
}

/// The Levi data `(q, n, k)` read off from the shadow of a support.
pub fn levi_job(arg: &str, n: usize) -> Result<Report> {
    let s = read_support(arg)?;
    let lam = base_point(&s);
    let sh = shadow(&s, &lam)?;
    let ls = levi_shape(&sh, n)?;
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let blocks: Vec<Vec<usize>> = ls.blocks.iter().map(|b| one_based(b)).collect();
    let ps = params([("support", arg.to_string()), ("n", n.to_string())]);
    let result = json!({
        "vector-field-coordinates": one_based(&ls.w_coords),
        "blocks": blocks,
        "q": ls.levi.q,
        "n": ls.levi.n,
    });
    let sizes: Vec<String> = ls.blocks.iter().map(|b| format!("gl_{}", b.len())).collect();
    let headline = format!(
        "W({}|{}) + k (x) A + A with k = {}",
        ls.levi.q,
        n,
        if sizes.is_empty() { "0".to_string() } else { sizes.join(" + ") }
    );
    let items = vec![Item::new("levi-shape", ps.clone(), true, 0, result.clone())];
    Ok(Report::new("levi", ps, items, result).with_headline(headline))
}

/// Everything a tensor-module job needs.
#[derive(Debug, Clone)]
pub struct TensorJob {
    pub sig: Signature,
    pub p: KDescriptor,
    pub m: MInput,
    /// `S` with its text, over `LeviSpec::gl1(sig.m, sig.n)`
    pub s: Option<(String, KModule)>,
    pub window: WindowSpec,
    pub degree: i64,
    pub budget: usize,
}

impl TensorJob {
    pub fn levi(&self) -> LeviSpec {
        LeviSpec::gl1(self.sig.m, self.sig.n)
    }

    fn params(&self) -> Params {
        let mut ps = params([
            ("m", self.sig.m.to_string()),
            ("n", self.sig.n.to_string()),
            ("P", descriptor_to_text(&self.p)),
            ("M", self.m.label()),
            ("window", self.window.to_string()),
            ("deg", self.degree.to_string()),
        ]);
        if let Some((text, _)) = &self.s {
            ps.insert("S".into(), text.clone());
        }
        ps
    }
}

/// Parses the window text (default radius 2) about the corner weight of `P`.
pub fn tensor_window(p: &KDescriptor, text: Option<&str>) -> Result<WindowSpec> {
    match text {
        None => Ok(default_window(p)),
        Some(t) => window_from_text(p.corner_weight().0, t),
    }
}

/// Classifies `F(P, M)` (or decides the simplicity of `F(P, M, S)` when
/// `S` is given) with window evidence.
pub fn classify_job(job: &TensorJob) -> Result<Report> {
    let ps = job.params();
    if let Some((_, s)) = &job.s {
        return classify_second(job, s, ps);
    }
    let v = match main_theorem_classify(&job.p, &job.m) {
        Ok(v) => v,
        Err(e @ (Error::NotClassifiable(_) | Error::UndecidedWithinWindow(_))) => {
            let item = Item::undecided("classification", ps.clone(), e.to_string());
            return Ok(Report::new("classify", ps, vec![item], Value::Null).with_headline(format!("undecided: {e}")));
        }
        Err(e) => return Err(e),
    };
    let simple = v.lemma.case == crate::tensor::classify::SimplicityCase::Simple;
    let headline = format!(
        "F(P, M) is {} (clause {}); case ({}): V = {}",
        if simple { "simple" } else { "not simple" },
        v.lemma.clause,
        v.case.label(),
        v.simple_submodule
    );
    let item = match verdict_evidence(&job.p, &job.m, &v, &job.window, job.degree, job.budget) {
        Ok((ok, ev)) => Item::new("classification", ps.clone(), ok, usize::from(!ok), ev),
        Err(e) => Item::undecided("classification", ps.clone(), e.to_string()),
    };
    let result = json!({ "simple": simple, "verdict": v });
    Ok(Report::new("classify", ps, vec![item], result).with_headline(headline))
}

fn classify_second(job: &TensorJob, s: &KModule, ps: Params) -> Result<Report> {
    let levi = job.levi();
    let verdict = match f2_simplicity(&job.p, &job.m, s) {
        Ok(v) => v,
        Err(e @ (Error::NotClassifiable(_) | Error::UndecidedWithinWindow(_))) => {
            let item = Item::undecided("second-simplicity", ps.clone(), e.to_string());
            return Ok(Report::new("classify", ps, vec![item], Value::Null).with_headline(format!("undecided: {e}")));
        }
        Err(e) => return Err(e),
    };
    let headline = format!("F(P, M, S) is {}: {}", if verdict.simple { "simple" } else { "not simple" }, verdict.reason);
    let item = match m_module(&job.m) {
        None => Item::new("second-simplicity", ps.clone(), true, 0, json!("no window evidence for infinite-dimensional M")),
        Some(module) => {
            let win = TensorWindow::new(job.p.clone(), module?, Some(s.clone()), job.window.clone(), job.budget);
            match win.and_then(|w| second_generation_evidence(&w, &levi, job.degree, 3, 29)) {
                Ok(g) => {
                    let ok = !verdict.simple || g.all_filled();
                    Item::new("second-simplicity", ps.clone(), ok, usize::from(!ok), json!({ "generation": g }))
                }
                Err(e) => Item::undecided("second-simplicity", ps.clone(), e.to_string()),
            }
        }
    };
    let result = json!({ "simple": verdict.simple, "verdict": verdict });
    Ok(Report::new("classify", ps, vec![item], result).with_headline(headline))
}

/// The least `r` from which every `omega-bar_r` of coefficient degree at
/// most `job.degree` annihilates the window of `F(P, M, S)`.
pub fn omega_job(job: &TensorJob, r_max: u32) -> Result<Report> {
    let mut ps = job.params();
    ps.insert("r-max".into(), r_max.to_string());
    let levi = job.levi();
    let Some((_, s)) = &job.s else {
        return Err(Error::Parse("omega: S is required".into()));
    };
    let module = match m_module(&job.m) {
        Some(m) => m?,
        None => return Err(Error::SymbolicOnly(job.m.label())),
    };
    let win = TensorWindow::new(job.p.clone(), module, Some(s.clone()), job.window.clone(), job.budget)?;
    let rep = omega_bar_r0(&win, &levi, job.degree as i32, r_max)?;
    let item = match rep.r0 {
        Some(_) => Item::new("omega-bar-annihilation", ps.clone(), true, 0, &rep),
        None => Item::undecided(
            "omega-bar-annihilation",
            ps.clone(),
            format!("no annihilating r up to {r_max}; nonzero counts {:?}", rep.nonzero),
        ),
    };
    let headline = match rep.r0 {
        Some(r) => format!("r0 = {r} on a window of dimension {}", rep.window_dim),
        None => format!("r0 not reached up to {r_max}"),
    };
    Ok(Report::new("omega", ps, vec![item], json!(rep)).with_headline(headline))
}

/// `fmt_weight` as a comma-separated string.
pub fn weight_text(w: &[Q]) -> String {
    fmt_weight(w).join(",")
}

/// Parses a comma-separated rational weight.
pub fn weight_from_text(text: &str) -> Result<Vec<Q>> {
    text.split(',').map(|x| parse_q(x.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    #[test]
    fn windows_from_text() {
        let w = window_from_text(vec![qr(1, 2), q(0)], "0:1,-1:0").unwrap();
        assert_eq!(w.weights().len(), 4);
        assert_eq!(window_from_text(vec![q(0)], "2").unwrap().weights().len(), 5);
        assert!(window_from_text(vec![q(0)], "1:0").is_err());
        assert!(window_from_text(vec![q(0), q(0)], "0:1").is_err());
        assert!(window_from_text(vec![q(0)], "x").is_err());
    }

    #[test]
    fn classify_trivial_over_a() {
        let sig = Signature::new(1, 1);
        let p = KDescriptor::polynomial(sig);
        let job = TensorJob {
            sig,
            m: read_m(sig, "trivial").unwrap(),
            window: tensor_window(&p, None).unwrap(),
            p,
            s: None,
            degree: 2,
            budget: crate::tensor::DEFAULT_BUDGET,
        };
        let r = classify_job(&job).unwrap();
        assert!(r.headline.contains("not simple (clause 2d)"), "{}", r.headline);
        assert_eq!(r.exit_code(), 0, "{}", r.summary());
    }

    #[test]
    fn omega_fixture() {
        let sig = Signature::new(1, 1);
        let p = crate::format::descriptor_from_text(sig, "shift:1/2").unwrap();
        let levi = LeviSpec::gl1(1, 1);
        let job = TensorJob {
            sig,
            m: read_m(sig, "natural").unwrap(),
            window: tensor_window(&p, Some("2")).unwrap(),
            p,
            s: Some(("chi:3".into(), read_s(&levi, "chi:3").unwrap())),
            degree: 1,
            budget: crate::tensor::DEFAULT_BUDGET,
        };
        let r = omega_job(&job, 3).unwrap();
        assert_eq!(r.result["r0"], json!(2));
    }

    #[test]
    fn support_jobs() {
        let text = r#"[{"base":["1/2","0"],"free":[[1,0]],"plus":[[0,-1]]}]"#;
        let r = shadow_job(text, 3).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.summary());
        assert_eq!(parabolic_job(text, 3).unwrap().exit_code(), 0);
        assert_eq!(levi_job(text, 1).unwrap().exit_code(), 0);
    }
}
