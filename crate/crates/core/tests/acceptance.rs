//! Acceptance criteria 1-9, one PASS/FAIL line each. Every check is exact;
//! the process exits nonzero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::Value;
use wittsuper::report::{Report, Verdict};
use wittsuper::suites::{run_suite, SuiteParams};

type Check = fn() -> Outcome;

const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suite(name: &str, p: SuiteParams) -> (Report, Duration) {
    let start = Instant::now();
    let r = run_suite(name, &p, jobs()).expect("suite runs");
    (r, start.elapsed())
}

fn sp(m: usize, n: usize, deg: i64) -> SuiteParams {
    SuiteParams { m: Some(m), n: Some(n), q: None, deg: Some(deg) }
}

fn evidence_sum(r: &Report, identity: &str, key: &str) -> u64 {
    r.items.iter().filter(|i| i.identity == identity).filter_map(|i| i.evidence[key].as_u64()).sum()
}

fn all_pass(r: &Report) -> bool {
    !r.items.is_empty() && r.verdict == Verdict::Pass
}

fn jacobi() -> Outcome {
    let (r, t) = suite("jacobi", sp(2, 2, 3));
    let pairs = evidence_sum(&r, "antisymmetry", "pairs");
    let triples = evidence_sum(&r, "super-jacobi", "triples");
    outcome(
        all_pass(&r) && t < TIME_LIMIT,
        format!("W(2|2) deg<=3: {pairs} pairs, {triples} triples, {:.2}s", t.as_secs_f64()),
    )
}

fn pi_hom() -> Outcome {
    let (audit, _) = suite("pi-sign-audit", SuiteParams::default());
    let mut ok = all_pass(&audit);
    let mut parts = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let (r, t) = suite("pi-hom", sp(m, n, 3));
        ok &= all_pass(&r) && t < TIME_LIMIT;
        parts.push(format!("W({m}|{n}) {} pairs {:.2}s", evidence_sum(&r, "pi-homomorphism", "pairs"), t.as_secs_f64()));
    }
    outcome(ok, format!("sign audit {}; {}", audit.verdict.label(), parts.join(", ")))
}

fn diff() -> Outcome {
    let (r, _) = suite("diff", SuiteParams { deg: Some(3), ..Default::default() });
    let dims: Vec<u64> = r.items.iter().filter_map(|i| i.evidence["window-dim"].as_u64()).collect();
    let ok = all_pass(&r) && dims.len() == r.items.len() && dims.iter().all(|&d| d > 0 && d <= 2000);
    outcome(ok, format!("{} windows of dimensions {dims:?}, basis fields of degree <= 3", dims.len()))
}

fn omega() -> Outcome {
    let (r, _) = suite("omega", SuiteParams::default());
    let natural = r.items.iter().any(|i| i.identity == "omega-natural-module" && i.verdict == Verdict::Pass);
    let r0: Vec<String> = r
        .items
        .iter()
        .filter(|i| i.identity == "omega-bar-r0" && i.verdict == Verdict::Pass)
        .filter_map(|i| i.evidence["r0"].as_u64().map(|r| format!("{}: r0={r}", i.parameters["fixture"])))
        .collect();
    outcome(all_pass(&r) && natural && r0.len() >= 3, format!("omega kills C[t] (deg<=8); {}", r0.join("; ")))
}

fn reconstruction() -> Outcome {
    let (r, _) = suite("reconstruction", SuiteParams { deg: Some(3), ..Default::default() });
    let levis: BTreeSet<String> = r.items.iter().map(|i| format!("(q,n)=({},{})", i.parameters["q"], i.parameters["n"])).collect();
    let identities: BTreeSet<&str> = r.items.iter().map(|i| i.identity.as_str()).collect();
    let ok = all_pass(&r) && levis.len() == 2 && identities.len() == 3;
    outcome(ok, format!("{} over {}", identities.into_iter().collect::<Vec<_>>().join(", "), levis.into_iter().collect::<Vec<_>>().join(" and ")))
}

fn shadow() -> Outcome {
    let (r, _) = suite("shadow", SuiteParams::default());
    let names: Vec<&str> = r.items.iter().map(|i| i.parameters["fixture"].as_str()).collect();
    outcome(all_pass(&r) && names.len() >= 6, format!("{} cone fixtures: {}", names.len(), names.join(", ")))
}

fn classify() -> Outcome {
    let (r, _) = suite("classify", SuiteParams::default());
    let cases: BTreeSet<&str> = r.items.iter().map(|i| i.parameters["expected"].as_str()).collect();
    let mut clauses = BTreeSet::new();
    let mut case_ii_windows = 0;
    for item in &r.items {
        let v = &item.evidence["verdict"];
        if let Some(c) = v["lemma"]["clause"].as_str() {
            clauses.extend(c.split(',').map(str::to_string));
        }
        let img = &item.evidence["evidence"]["diff-image"];
        if img != &Value::Null {
            let proper = img["image_rank"].as_u64().is_some_and(|k| k > 0 && Some(k) < img["window_dim"].as_u64());
            let invariant = img["invariance_failures"].as_u64() == Some(0);
            case_ii_windows += usize::from(item.verdict == Verdict::Pass && proper && invariant);
        }
    }
    let needed = ["i", "ii", "iii"].iter().all(|c| cases.contains(c))
        && ["2a", "2b", "2c", "2d", "2e"].iter().all(|c| clauses.contains(*c));
    let case_ii = r.items.iter().filter(|i| i.parameters["expected"] == "ii").count();
    outcome(
        all_pass(&r) && r.items.len() >= 9 && needed && case_ii_windows == case_ii,
        format!(
            "{} fixtures, cases {:?}, clauses {:?}, {case_ii_windows}/{case_ii} case-(ii) images proper, nonzero and invariant",
            r.items.len(),
            cases,
            clauses
        ),
    )
}

fn hc() -> Outcome {
    let (r, _) = suite("hc", SuiteParams::default());
    let item = |name: &str| r.items.iter().find(|i| i.identity == name);
    let t = item("hc-true");
    let f = item("hc-false");
    let ok = all_pass(&r) && t.is_some() && f.is_some();
    let detail = match (t, f) {
        (Some(t), Some(f)) => format!(
            "bound {} vs window maxima {}; tracked counts {}",
            t.evidence["bound"]["bound"],
            t.evidence["bound"]["max_dims"],
            f.evidence["pair-counts"]["counts"]
        ),
        _ => "fixtures missing".into(),
    };
    outcome(ok, detail)
}

fn cli() -> Outcome {
    let mut errors = Vec::new();
    for (stem, args) in common::GOLDEN_JOBS {
        let a = common::run(args, Some(&format!("{stem}-a")));
        let b = common::run(args, Some(&format!("{stem}-b")));
        if a.report != b.report || a.stdout != b.stdout {
            errors.push(format!("{stem}: repeated runs differ"));
        }
        if let Err(e) = common::check_golden(stem, args) {
            errors.push(e);
        }
    }
    let n = common::GOLDEN_JOBS.len();
    if errors.is_empty() {
        outcome(true, format!("{n} golden jobs byte-identical across runs and against golden files"))
    } else {
        outcome(false, errors.join("; "))
    }
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("super-Jacobi and antisymmetry on W(2|2), degree <= 3", jacobi),
        ("pi is a homomorphism on W(1|1), W(2|1), W(1|2), degree <= 3", pi_hom),
        ("diff^2 = 0 and [diff, pi(x)] = 0 on tensor-module windows", diff),
        ("omega annihilation and the order r0 of omega-bar", omega),
        ("reconstruction identities, commutant laws, closure", reconstruction),
        ("shadow machinery on cone fixtures", shadow),
        ("classification decision table", classify),
        ("weight-space finiteness condition", hc),
        ("CLI determinism and golden files", cli),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.ok);
        println!("criterion {} {}: {name} -- {}", k + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
