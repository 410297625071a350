//! The TOML run configuration.
//!
//! ```toml
//! suites = ["specfun", "kernels"]   # specfun | kernels | transforms | knapp | interpolation | all
//! dims = [2, 3]
//! s_values = [0.25, 0.5, 0.75]
//! output_dir = "rieszlab-report"
//! formats = ["json", "csv"]
//!
//! [quad]
//! abs_tol = 1e-10
//! rel_tol = 1e-9
//! max_subdiv = 1000
//! tail_zero_blocks = 24
//! accel_order = 6
//! ```
//!
//! Every key is optional; unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use rieszlab::oscquad::QuadConfig;

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Kernels,
    Transforms,
    Knapp,
    Interpolation,
    All,
}

impl Suite {
    /// Concrete suites in run order.
    pub const CONCRETE: [Suite; 5] = [Suite::Specfun, Suite::Kernels, Suite::Transforms, Suite::Knapp, Suite::Interpolation];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Kernels => "kernels",
            Suite::Transforms => "transforms",
            Suite::Knapp => "knapp",
            Suite::Interpolation => "interpolation",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Quadrature tolerances passed to every check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdiv: usize,
    pub tail_zero_blocks: usize,
    pub accel_order: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        let q = QuadConfig::<f64>::default();
        Self {
            abs_tol: q.abs_tol,
            rel_tol: q.rel_tol,
            max_subdiv: q.max_subdiv,
            tail_zero_blocks: q.tail_zero_blocks,
            accel_order: q.accel_order,
        }
    }
}

impl QuadSettings {
    pub fn to_quad(self) -> QuadConfig<f64> {
        QuadConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdiv: self.max_subdiv,
            tail_zero_blocks: self.tail_zero_blocks,
            accel_order: self.accel_order,
        }
    }
}

/// A validated run description. `quad` is last so the TOML form keeps its
/// table after the scalar keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub dims: Vec<usize>,
    pub s_values: Vec<f64>,
    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
    pub quad: QuadSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: vec![Suite::All],
            dims: vec![2, 3],
            s_values: vec![0.25, 0.5, 0.75],
            output_dir: PathBuf::from("rieszlab-report"),
            formats: vec![Format::Json, Format::Csv],
            quad: QuadSettings::default(),
        }
    }
}

/// The part of a configuration that determines the computed values.
#[derive(Serialize)]
struct Canonical<'a> {
    suites: Vec<Suite>,
    dims: &'a [usize],
    s_values: &'a [f64],
    quad: &'a QuadSettings,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.suites.is_empty() {
            return Err(ConfigError::invalid("suites", "must not be empty"));
        }
        if self.dims.is_empty() {
            return Err(ConfigError::invalid("dims", "must not be empty"));
        }
        if let Some(n) = self.dims.iter().find(|&&n| n < 2) {
            return Err(ConfigError::invalid("dims", format!("n = {n} must be >= 2")));
        }
        if self.s_values.is_empty() {
            return Err(ConfigError::invalid("s_values", "must not be empty"));
        }
        if let Some(s) = self.s_values.iter().find(|&&s| !(s > 0.0 && s < 1.0)) {
            return Err(ConfigError::invalid("s_values", format!("s out of (0,1): {s}")));
        }
        if self.formats.is_empty() {
            return Err(ConfigError::invalid("formats", "must not be empty"));
        }
        self.quad.to_quad().validate().map_err(|e| ConfigError::invalid("quad", e.to_string()))
    }

    /// Concrete suites to run, deduplicated, in run order.
    pub fn selected_suites(&self) -> Vec<Suite> {
        let all = self.suites.contains(&Suite::All);
        Suite::CONCRETE.into_iter().filter(|s| all || self.suites.contains(s)).collect()
    }

    /// SHA-256 of the canonical JSON of the computational settings. Output
    /// location and formats do not enter.
    pub fn config_hash(&self) -> String {
        let canon = Canonical {
            suites: self.selected_suites(),
            dims: &self.dims,
            s_values: &self.s_values,
            quad: &self.quad,
        };
        let json = serde_json::to_vec(&canon).expect("plain data serializes");
        hex::encode(Sha256::digest(json))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

/// Parses and validates a TOML configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map(|r| line_col(text, r.start)).unwrap_or((1, 1));
        ConfigError::Parse { line, col, msg: e.message().to_string() }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Read { path: path.to_path_buf(), msg: e.to_string() })?;
    parse_config(&text)
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}
