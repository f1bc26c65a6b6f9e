use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};

use wittsuper::algebra::Signature;
use wittsuper::enveloping::LeviSpec;
use wittsuper::format::descriptor_from_text;
use wittsuper::jobs::{
    bracket_job, classify_job, levi_job, omega_job, parabolic_job, read_m, read_s, read_support, shadow_job,
    tensor_window, TensorJob,
};
use wittsuper::report::Report;
use wittsuper::suites::{run_suite, SuiteParams, SUITES};
use wittsuper::tensor::classify::MInput;
use wittsuper::tensor::DEFAULT_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Run a named verification suite.
    Verify,
    /// Bracket two vector fields given as term lists (files or inline).
    Bracket,
    /// Shadow partition of a support set.
    Shadow,
    /// Parabolic decomposition at an extremal weight of a support set.
    Parabolic,
    /// Levi data read off from the shadow of a support set.
    Levi,
    /// Classify F(P, M), or decide the simplicity of F(P, M, S).
    Classify,
    /// Least r from which omega-bar_r annihilates a window of F(P, M, S).
    Omega,
}

#[derive(Debug, Parser)]
#[command(name = "wittsuper", version, about = "Exact computations for W(m|n), its tensor modules and support cones")]
struct Cli {
    command: Command,
    /// Operands of `bracket`: two term lists (file paths or inline text).
    operands: Vec<String>,
    /// Number of even variables.
    #[arg(long)]
    m: Option<usize>,
    /// Number of odd variables.
    #[arg(long)]
    n: Option<usize>,
    /// Number of even vector-field coordinates of the Levi data.
    #[arg(long)]
    q: Option<usize>,
    /// Degree cap (suite degree, root-set cap, or generator degree).
    #[arg(long)]
    deg: Option<i64>,
    /// Window about the corner weight of P: a radius `R` or offsets `a:b,c:d,...`.
    #[arg(long)]
    window: Option<String>,
    /// Support set: a file or inline text.
    #[arg(long)]
    support: Option<String>,
    /// Descriptor of the K(m|n)-module P.
    #[arg(long = "P")]
    p: Option<String>,
    /// The gl(m|n)-module M: a tag or a module file.
    #[arg(long = "M")]
    m_module: Option<String>,
    /// The simple k-module S: a tag or a module file.
    #[arg(long = "S")]
    s_module: Option<String>,
    /// Suite name for `verify` (`list` prints the suites).
    #[arg(long)]
    suite: Option<String>,
    /// Largest r tried by `omega`.
    #[arg(long, default_value_t = 4)]
    r_max: u32,
    /// Write the full report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Threads for independent suite items.
    #[arg(long)]
    jobs: Option<usize>,
}

fn check_env() -> Result<()> {
    if let Ok(v) = std::env::var("WITTSUPER_MAX_DEGREE") {
        match v.trim().parse::<i64>() {
            Ok(d) if d > 0 => {}
            _ => bail!("WITTSUPER_MAX_DEGREE must be a positive integer, got {v:?}"),
        }
    }
    Ok(())
}

fn deg_or(cli: &Cli, default: i64) -> i64 {
    cli.deg.unwrap_or(default)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().with_context(|| format!("missing --{flag}"))
}

fn tensor_job(cli: &Cli, sig: Signature, degree: i64) -> Result<TensorJob> {
    let p = descriptor_from_text(sig, need(&cli.p, "P")?).context("--P")?;
    let m = match (&cli.m_module, &cli.support) {
        (Some(m), _) => read_m(sig, m).context("--M")?,
        (None, Some(s)) => MInput::Infinite { label: s.clone(), support: read_support(s).context("--support")? },
        (None, None) => bail!("missing --M (or --support for an infinite-dimensional M)"),
    };
    let s = match &cli.s_module {
        Some(text) => Some((text.clone(), read_s(&LeviSpec::gl1(sig.m, sig.n), text).context("--S")?)),
        None => None,
    };
    let window = tensor_window(&p, cli.window.as_deref()).context("--window")?;
    Ok(TensorJob { sig, p, m, s, window, degree, budget: DEFAULT_BUDGET })
}

fn run(cli: &Cli) -> Result<Report> {
    check_env()?;
    if let Some(d) = cli.deg {
        if d < 1 {
            bail!("--deg must be positive, got {d}");
        }
    }
    if cli.command != Command::Bracket && !cli.operands.is_empty() {
        bail!("unexpected operands {:?}", cli.operands);
    }
    let sig = Signature::new(cli.m.unwrap_or(1), cli.n.unwrap_or(1));
    Ok(match cli.command {
        Command::Verify => {
            let name = need(&cli.suite, "suite")?;
            let params = SuiteParams { m: cli.m, n: cli.n, q: cli.q, deg: cli.deg };
            let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            run_suite(name, &params, jobs)?
        }
        Command::Bracket => {
            let [x, y] = cli.operands.as_slice() else {
                bail!("bracket takes two operands, got {}", cli.operands.len());
            };
            bracket_job(sig, x, y)?
        }
        Command::Shadow => shadow_job(need(&cli.support, "support")?, deg_or(cli, 3))?,
        Command::Parabolic => parabolic_job(need(&cli.support, "support")?, deg_or(cli, 3))?,
        Command::Levi => levi_job(need(&cli.support, "support")?, cli.n.unwrap_or(0))?,
        Command::Classify => classify_job(&tensor_job(cli, sig, deg_or(cli, 2))?)?,
        Command::Omega => {
            let sig = Signature::new(cli.q.or(cli.m).unwrap_or(1), cli.n.unwrap_or(1));
            let job = tensor_job(cli, sig, deg_or(cli, 1))?;
            if job.s.is_none() {
                bail!("missing --S");
            }
            omega_job(&job, cli.r_max)?
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if cli.command == Command::Verify && cli.suite.as_deref() == Some("list") {
        for (name, what) in SUITES {
            println!("{name:<15} {what}");
        }
        return ExitCode::SUCCESS;
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.summary());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_text()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
