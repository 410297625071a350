//! Subcommands of the `rieszlab` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rieszlab::fouriertransforms::{ft_riesz, FtForm};
use rieszlab::interpolation_constants::{
    budget_quotients, default_bounds, stein_constant, stein_limit, BUDGET_CAVEAT,
};
use rieszlab::oscquad::QuadConfig;
use rieszlab::restriction_lab::{default_eps_grid, necessity_scan, ExponentPair, NecessityScan};
use rieszlab::rieszkernel::FracParam;

use crate::config::{load_config, RunConfig, Suite};
use crate::error::{CliError, ConfigError};
use crate::report::emit;
use crate::suites::run_suites;

/// Overrides `output_dir` of the configuration.
pub const OUTPUT_DIR_ENV: &str = "RIESZLAB_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "rieszlab", version, about = "Verification reports for Riesz mean kernels and their transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write the report files.
    Verify {
        /// TOML configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Suites to run, replacing those of the configuration.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
    },
    /// Tabulate the kernel transform on `0, step, 2 step, ..., xi_max` as CSV.
    FtTable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long = "xi-max")]
        xi_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Knapp quotient scan over the default ε grid, as JSON.
    KnappScan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
    },
    /// Endpoint fits, M_s, its s → 1 limit and the budget margins, as JSON.
    SteinConstant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
    },
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn param(n: usize, s: f64) -> Result<FracParam, CliError> {
    FracParam::new(n, s).map_err(|e| ConfigError::invalid("n/s", e.to_string()).into())
}

fn io_out(e: std::io::Error) -> CliError {
    CliError::Io { path: PathBuf::from("<stdout>"), source: e }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    match cmd {
        Command::Verify { config, suites } => verify(config, suites, out),
        Command::FtTable { n, s, xi_max, step } => {
            let p = param(n, s)?;
            if !(xi_max > 0.0 && xi_max.is_finite() && step > 0.0 && xi_max / step <= 1e6) {
                return Err(ConfigError::invalid("xi-max/step", "need 0 < step, 0 < xi-max <= 1e6 step").into());
            }
            let cfg = QuadConfig::default();
            let m = (xi_max / step + 1e-9).floor() as usize;
            writeln!(out, "xi,transform").map_err(io_out)?;
            for k in 0..=m {
                let xi = k as f64 * step;
                writeln!(out, "{xi:e},{:e}", ft_riesz(&p, xi, FtForm::PrimaryIntegral, &cfg)?).map_err(io_out)?;
            }
            Ok(0)
        }
        Command::KnappScan { n, s, p, q } => {
            let frac = param(n, s)?;
            let ep = ExponentPair::new(p, q).map_err(|e| ConfigError::invalid("p/q", e.to_string()))?;
            let scan = necessity_scan(&frac, &ep, &default_eps_grid(), &QuadConfig::default())?;
            serde_json::to_writer_pretty(&mut *out, &KnappOutput { n, s, p, q, scan })?;
            writeln!(out).map_err(io_out)?;
            Ok(0)
        }
        Command::SteinConstant { n, s } => {
            let p = param(n, s)?;
            let _ = writeln!(err, "computing endpoint bounds for n = {n}");
            let json = stein_report(&p)?;
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out).map_err(io_out)?;
            Ok(0)
        }
    }
}

fn verify(config: Option<PathBuf>, suites: Vec<Suite>, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut cfg = match &config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if !suites.is_empty() {
        cfg.suites = suites;
    }
    if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV).filter(|d| !d.is_empty()) {
        cfg.output_dir = PathBuf::from(dir);
    }
    cfg.validate()?;
    let report = run_suites(&cfg);
    let files = emit(&report, &cfg.formats, &cfg.output_dir)?;
    for r in report.records().filter(|r| !r.pass) {
        writeln!(out, "FAIL {} [{}]: {}", r.name, r.paper_anchor, r.note.as_deref().unwrap_or("")).map_err(io_out)?;
    }
    writeln!(
        out,
        "{} passed, {} failed; config {}; wrote {} file(s) to {}",
        report.pass_count(),
        report.fail_count(),
        &report.config_hash[..12],
        files.len(),
        cfg.output_dir.display()
    )
    .map_err(io_out)?;
    Ok(if report.fail_count() == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct KnappOutput {
    n: usize,
    s: f64,
    p: f64,
    q: f64,
    #[serde(flatten)]
    scan: NecessityScan,
}

#[derive(Serialize)]
struct GrowthOutput {
    log_intercept: f64,
    rate: f64,
}

#[derive(Serialize)]
struct Margin {
    dilation: f64,
    quotient: f64,
    budget: f64,
    margin: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct SteinOutput {
    n: usize,
    s: f64,
    theta: f64,
    M0_fit: GrowthOutput,
    M1_rate: f64,
    M_s: f64,
    M_limit_estimate: f64,
    margins: Vec<Margin>,
    caveat: &'static str,
}

fn stein_report(p: &FracParam) -> Result<SteinOutput, CliError> {
    let cfg = QuadConfig::default();
    let (m0, m1) = default_bounds(p.n, &cfg)?;
    let ms = stein_constant(p, &m0, &m1, &cfg)?;
    let limit = stein_limit(p.n, &[0.9, 0.99, 0.999], &m0, &m1, &cfg)?;
    let budget = ms.value.sqrt();
    let margins = budget_quotients(p, &cfg)?
        .into_iter()
        .map(|(dilation, quotient)| Margin { dilation, quotient, budget, margin: budget - quotient })
        .collect();
    Ok(SteinOutput {
        n: p.n,
        s: p.s,
        theta: ms.theta,
        M0_fit: GrowthOutput { log_intercept: m0.growth_fit.log_intercept, rate: m0.growth_fit.rate },
        M1_rate: m1.growth_fit.rate,
        M_s: ms.value,
        M_limit_estimate: limit.limit,
        margins,
        caveat: BUDGET_CAVEAT,
    })
}
