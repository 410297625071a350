//! Registry of checks. Every check belongs to one suite and one anchor and
//! yields one or more records; checks run sequentially in registry order so
//! reports are reproducible bit for bit.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::rc::Rc;
use std::time::{SystemTime, UNIX_EPOCH};

use rieszlab::interpolation_constants::{default_bounds, EndpointBound};
use rieszlab::oscquad::QuadConfig;
use rieszlab::record::anchors;
use rieszlab::{LabResult, VerificationRecord};

use crate::config::{RunConfig, Suite};
use crate::report::{PlotSeries, SuiteReport, SuiteSection};

mod interpolation;
mod kernels;
mod knapp;
mod oracles;
mod specfun;
mod transforms;

/// One registered check.
pub struct Check {
    pub suite: Suite,
    pub anchor: &'static str,
    pub name: &'static str,
    run: fn(&Context) -> Vec<VerificationRecord>,
}

const fn check(
    suite: Suite,
    anchor: &'static str,
    name: &'static str,
    run: fn(&Context) -> Vec<VerificationRecord>,
) -> Check {
    Check { suite, anchor, name, run }
}

/// All checks in run order.
pub fn registry() -> Vec<Check> {
    let mut all = specfun::checks();
    all.extend(kernels::checks());
    all.extend(transforms::checks());
    all.extend(knapp::checks());
    all.extend(interpolation::checks());
    all
}

type Bounds = Rc<(EndpointBound, EndpointBound)>;

/// Parameters and shared state of one run.
pub struct Context {
    pub dims: Vec<usize>,
    pub s_values: Vec<f64>,
    pub quad: QuadConfig<f64>,
    bounds: RefCell<BTreeMap<usize, Result<Bounds, String>>>,
    plots: RefCell<Vec<PlotSeries>>,
}

impl Context {
    pub fn new(cfg: &RunConfig) -> Self {
        Self {
            dims: cfg.dims.clone(),
            s_values: cfg.s_values.clone(),
            quad: cfg.quad.to_quad(),
            bounds: RefCell::new(BTreeMap::new()),
            plots: RefCell::new(Vec::new()),
        }
    }

    /// `(n, s)` pairs, dimension-major.
    pub fn grid(&self) -> Vec<(usize, f64)> {
        self.dims.iter().flat_map(|&n| self.s_values.iter().map(move |&s| (n, s))).collect()
    }

    /// `(M_0, M_1)` for dimension `n`, computed once per run.
    pub fn bounds(&self, n: usize) -> Result<Bounds, String> {
        self.bounds
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| default_bounds(n, &self.quad).map(Rc::new).map_err(|e| e.to_string()))
            .clone()
    }

    pub fn plot(&self, series: PlotSeries) {
        self.plots.borrow_mut().push(series);
    }
}

/// Runs `f`, turning an error into a failed record.
pub(crate) fn attempt(
    name: impl Into<String>,
    anchor: &str,
    f: impl FnOnce() -> LabResult<VerificationRecord>,
) -> VerificationRecord {
    let name = name.into();
    f().unwrap_or_else(|e| VerificationRecord::failed(name, anchor, e))
}

/// Like [`attempt`] for computations yielding several records.
pub(crate) fn attempt_many(
    name: impl Into<String>,
    anchor: &str,
    f: impl FnOnce() -> LabResult<Vec<VerificationRecord>>,
) -> Vec<VerificationRecord> {
    let name = name.into();
    f().unwrap_or_else(|e| vec![VerificationRecord::failed(name, anchor, e)])
}

pub(crate) fn tag(name: &str, n: usize, s: f64) -> String {
    format!("{name}[n={n},s={s}]")
}

fn run_check(c: &Check, ctx: &Context) -> Vec<VerificationRecord> {
    let records = catch_unwind(AssertUnwindSafe(|| (c.run)(ctx))).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        vec![VerificationRecord::failed(c.name, c.anchor, format!("panic: {msg}"))]
    });
    if records.is_empty() {
        return vec![VerificationRecord::failed(c.name, c.anchor, "check produced no records")];
    }
    records
        .into_iter()
        .map(|r| {
            if anchors::is_registered(&r.paper_anchor) {
                r
            } else {
                VerificationRecord::failed(r.name, c.anchor, format!("unregistered anchor `{}`", r.paper_anchor))
            }
        })
        .collect()
}

pub fn unix_millis() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

/// Runs the selected suites of a validated configuration.
pub fn run_suites(cfg: &RunConfig) -> SuiteReport {
    let started = unix_millis();
    let ctx = Context::new(cfg);
    let registry = registry();
    let sections = cfg
        .selected_suites()
        .into_iter()
        .map(|suite| SuiteSection {
            suite,
            records: registry.iter().filter(|c| c.suite == suite).flat_map(|c| run_check(c, &ctx)).collect(),
        })
        .collect();
    SuiteReport {
        config_hash: cfg.config_hash(),
        started_unix_ms: started,
        finished_unix_ms: unix_millis(),
        sections,
        plots: ctx.plots.into_inner(),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn every_anchor_has_a_registered_check() {
        let reg = registry();
        let covered: BTreeSet<&str> = reg.iter().map(|c| c.anchor).collect();
        let missing: Vec<&&str> = anchors::ALL.iter().filter(|a| !covered.contains(**a)).collect();
        assert!(missing.is_empty(), "anchors without a check: {missing:?}");
        for c in &reg {
            assert!(anchors::is_registered(c.anchor), "{} uses unregistered {}", c.name, c.anchor);
            assert_ne!(c.suite, Suite::All);
        }
    }

    #[test]
    fn check_names_are_unique() {
        let reg = registry();
        let names: BTreeSet<&str> = reg.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), reg.len());
    }

    #[test]
    fn panics_and_foreign_anchors_become_failed_records() {
        let ctx = Context::new(&RunConfig::default());
        let boom = check(Suite::Specfun, anchors::POCHHAMMER, "boom", |_| panic!("kaput"));
        let r = run_check(&boom, &ctx);
        assert_eq!(r.len(), 1);
        assert!(!r[0].pass && r[0].note.as_deref() == Some("panic: kaput"));
        assert_eq!(r[0].paper_anchor, anchors::POCHHAMMER);

        let stray = check(Suite::Specfun, anchors::POCHHAMMER, "stray", |_| {
            vec![VerificationRecord::compare("x", "nowhere", 1.0, 1.0, 0.0, rieszlab::record::TolRule::Absolute)]
        });
        let r = run_check(&stray, &ctx);
        assert!(!r[0].pass && r[0].paper_anchor == anchors::POCHHAMMER);

        let empty = check(Suite::Specfun, anchors::POCHHAMMER, "empty", |_| Vec::new());
        assert!(!run_check(&empty, &ctx)[0].pass);
    }
}
