//! Helpers shared by the integration tests: running the binary from the
//! workspace root and the golden-file jobs.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().expect("workspace root")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// contents of the `--out` report, when one was written
    pub report: Option<String>,
}

/// Runs the binary from the workspace root; `out` names a scratch report.
pub fn run(args: &[&str], out: Option<&str>) -> Run {
    let out_path = out.map(|name| std::env::temp_dir().join(format!("wittsuper-{}-{name}", std::process::id())));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wittsuper"));
    cmd.current_dir(workspace_root()).args(args).env_remove("WITTSUPER_MAX_DEGREE");
    if let Some(p) = &out_path {
        cmd.arg("--out").arg(p);
    }
    let output = cmd.output().expect("run wittsuper");
    let report = out_path.map(|p| {
        let text = std::fs::read_to_string(&p).expect("report written");
        let _ = std::fs::remove_file(&p);
        text
    });
    Run {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        report,
    }
}

/// The golden jobs: file stem and arguments.
pub const GOLDEN_JOBS: &[(&str, &[&str])] = &[
    ("verify-jacobi", &["verify", "--suite", "jacobi", "--m", "1", "--n", "1", "--deg", "2", "--jobs", "2"]),
    ("shadow-zline", &["shadow", "--support", "fixtures/zline.cone"]),
    ("parabolic-zline", &["parabolic", "--support", "fixtures/zline.cone"]),
    ("classify-a-trivial", &["classify", "--P", "A", "--M", "trivial"]),
    (
        "omega-natural-chi3",
        &["omega", "--q", "1", "--n", "1", "--P", "shift:1/2", "--M", "natural", "--S", "chi:3", "--window", "2", "--deg", "1", "--r-max", "3"],
    ),
];

/// Runs a golden job and compares the report with its golden file;
/// `WITTSUPER_BLESS=1` rewrites the file instead.
pub fn check_golden(stem: &str, args: &[&str]) -> Result<(), String> {
    let r = run(args, Some(stem));
    if r.code != 0 {
        return Err(format!("{stem}: exit {} ({})", r.code, r.stderr.trim()));
    }
    let report = r.report.expect("report");
    let path = golden_dir().join(format!("{stem}.json"));
    if std::env::var("WITTSUPER_BLESS").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &report).expect("write golden");
        return Ok(());
    }
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if golden != report {
        return Err(format!("{stem}: report differs from {}", path.display()));
    }
    Ok(())
}
