//! End-to-end runs of the binary: documented examples, exit codes, usage
//! and schema errors, and thread-count independence of reports.

mod common;

use common::run;

#[test]
fn jacobi_example_exits_zero() {
    let r = run(&["verify", "--suite", "jacobi", "--m", "2", "--n", "2", "--deg", "3"], None);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.starts_with("wittsuper-report/1 verify\n"));
    assert!(r.stdout.ends_with("PASS: 5 items, 0 failed, 0 undecided\n"), "{}", r.stdout);
}

#[test]
fn shadow_example_lists_the_partition() {
    let r = run(&["shadow", "--support", "fixtures/zline.cone"], None);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // S = (1/2, 0) + Z eps1 + Z_- eps2
    assert!(
        r.stdout.contains("plus: {-eps1+eps2, eps2}; minus: {-eps2, eps1-eps2}; finite: {}; infinite: {-eps1, eps1}"),
        "{}",
        r.stdout
    );
}

#[test]
fn classify_example_is_not_simple() {
    let r = run(&["classify", "--P", "A", "--M", "trivial"], None);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("F(P, M) is not simple (clause 2d); case (iii): V = trivial"), "{}", r.stdout);
    let r = run(&["classify", "--P", "shift:1/2", "--M", "trivial"], None);
    assert!(r.stdout.contains("F(P, M) is simple"), "{}", r.stdout);
}

#[test]
fn second_module_and_levi() {
    let r = run(&["classify", "--P", "shift:1/2", "--M", "natural", "--S", "chi:3"], None);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("F(P, M, S) is simple"), "{}", r.stdout);
    let r = run(&["levi", "--support", "fixtures/zline.cone", "--n", "1"], None);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("W(1|1) + k (x) A + A with k = gl_1"), "{}", r.stdout);
}

#[test]
fn bracket_of_term_lists() {
    let x = r#"[{"coeff":"1","alpha":[1],"odd":[],"dir":1}]"#;
    let y = r#"[{"coeff":"1","alpha":[2],"odd":[],"dir":1}]"#;
    let r = run(&["bracket", "--m", "1", "--n", "0", x, y], Some("bracket"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: serde_json::Value = serde_json::from_str(&r.report.unwrap()).unwrap();
    assert_eq!(report["result"]["bracket"], serde_json::json!([{"coeff": "1", "alpha": [2], "odd": [], "dir": 1}]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--P", "A"][..],
        &["classify", "--P", "A", "--M", "nope"],
        &["classify", "--P", "A", "--M", "trivial", "--window", "1:0"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "jacobi", "--deg", "0"],
        &["shadow"],
        &["bracket", "[]"],
        &["frobnicate"],
    ] {
        let r = run(args, None);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_degree_cap_is_a_usage_error() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_wittsuper"))
        .current_dir(common::workspace_root())
        .args(["verify", "--suite", "hc"])
        .env("WITTSUPER_MAX_DEGREE", "-3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WITTSUPER_MAX_DEGREE"));
}

#[test]
fn schema_errors_name_the_field() {
    let dir = std::env::temp_dir().join(format!("wittsuper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let support = dir.join("bad.cone");
    std::fs::write(&support, r#"[{"base":["1/2","0"]},{"base":["x","0"]}]"#).unwrap();
    let r = run(&["shadow", "--support", support.to_str().unwrap()], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cones[1].base"), "{}", r.stderr);
    let module = dir.join("bad.module");
    std::fs::write(&module, r#"{"kind":"gl","m":1,"n":1,"parities":[0],"weights":[["0","0"]],"entries":[{"gen":[1,1],"row":1,"col":9,"coeff":"1"}]}"#).unwrap();
    let r = run(&["classify", "--P", "A", "--M", module.to_str().unwrap()], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("entries[0]"), "{}", r.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oversized_window_is_undecided() {
    let r = run(&["classify", "--P", "shift:1/2,shift:1/3", "--M", "natural", "--m", "2", "--n", "2", "--window", "40"], Some("undecided"));
    assert_eq!(r.code, 2, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("UNDECIDED"), "{}", r.stdout);
    assert!(r.report.unwrap().contains("\"verdict\": \"undecided\""));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let a = run(&["verify", "--suite", "classify", "--jobs", "1"], Some("jobs1"));
    let b = run(&["verify", "--suite", "classify", "--jobs", "4"], Some("jobs4"));
    assert_eq!(a.code, 0);
    assert_eq!(a.report, b.report);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_reports() {
    for (stem, args) in common::GOLDEN_JOBS {
        common::check_golden(stem, args).unwrap();
    }
}
