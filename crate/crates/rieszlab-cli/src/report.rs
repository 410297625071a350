//! Report types and the files written for them.
//!
//! * `summary.json`: `{config_hash, pass_count, fail_count, started_unix_ms,
//!   finished_unix_ms, records}`; each record carries its `suite`.
//! * `<suite>.csv`: `name,anchor,computed,reference,abs_err,rel_err,tol,pass`.
//! * `plots/<series>.csv`: log–log columns named in the header.
//!
//! Only the two timestamps differ between runs of the same configuration.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use rieszlab::VerificationRecord;

use crate::config::{Format, Suite};
use crate::error::CliError;

/// Fixed column order of the per-suite record tables.
pub const RECORD_COLUMNS: [&str; 8] = ["name", "anchor", "computed", "reference", "abs_err", "rel_err", "tol", "pass"];

/// A table of plot-ready samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl PlotSeries {
    pub fn new(name: String, columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self { name, columns: columns.iter().map(|c| c.to_string()).collect(), rows }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSection {
    pub suite: Suite,
    pub records: Vec<VerificationRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config_hash: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub sections: Vec<SuiteSection>,
    pub plots: Vec<PlotSeries>,
}

#[derive(Serialize)]
struct Entry<'a> {
    suite: Suite,
    #[serde(flatten)]
    record: &'a VerificationRecord,
}

#[derive(Serialize)]
struct Summary<'a> {
    config_hash: &'a str,
    pass_count: usize,
    fail_count: usize,
    started_unix_ms: u128,
    finished_unix_ms: u128,
    records: Vec<Entry<'a>>,
}

impl SuiteReport {
    pub fn records(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.sections.iter().flat_map(|s| s.records.iter())
    }

    pub fn pass_count(&self) -> usize {
        self.records().filter(|r| r.pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.records().filter(|r| !r.pass).count()
    }

    pub fn summary_json(&self) -> Result<String, CliError> {
        let summary = Summary {
            config_hash: &self.config_hash,
            pass_count: self.pass_count(),
            fail_count: self.fail_count(),
            started_unix_ms: self.started_unix_ms,
            finished_unix_ms: self.finished_unix_ms,
            records: self
                .sections
                .iter()
                .flat_map(|s| s.records.iter().map(move |record| Entry { suite: s.suite, record }))
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&summary)? + "\n")
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    CliError::Io { path: path.to_path_buf(), source: e.into() }
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(io(path))
}

fn record_row(r: &VerificationRecord) -> Vec<String> {
    vec![
        r.name.clone(),
        r.paper_anchor.clone(),
        r.computed.to_string(),
        r.reference.to_string(),
        format!("{:e}", r.abs_err),
        format!("{:e}", r.rel_err),
        format!("{:e}", r.tol),
        r.pass.to_string(),
    ]
}

/// Writes the selected formats into `dir` and returns the paths written.
pub fn emit(report: &SuiteReport, formats: &[Format], dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    if formats.contains(&Format::Json) {
        let path = dir.join("summary.json");
        fs::write(&path, report.summary_json()?).map_err(io(&path))?;
        written.push(path);
    }
    if formats.contains(&Format::Csv) {
        for section in &report.sections {
            let path = dir.join(format!("{}.csv", section.suite.name()));
            write_csv(&path, &RECORD_COLUMNS, section.records.iter().map(record_row))?;
            written.push(path);
        }
        if !report.plots.is_empty() {
            let plots = dir.join("plots");
            fs::create_dir_all(&plots).map_err(io(&plots))?;
            for p in &report.plots {
                let path = plots.join(format!("{}.csv", p.name));
                let header: Vec<&str> = p.columns.iter().map(String::as_str).collect();
                write_csv(&path, &header, p.rows.iter().map(|r| r.iter().map(|v| format!("{v:e}")).collect()))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
