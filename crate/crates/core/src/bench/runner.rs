//! Runs a descriptor: build, parameter check, error scans, baselines.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::registry::{BaselineSpec, CaseDescriptor, Mode, PadeChoice};
use super::BenchError;
use crate::approximant::{solve_small_only, solve_two_point, solve_with_amplitude, ApproxError, RootApproximant};
use crate::oracles::{error_scan, ErrorReport, ScanGrid};
use crate::pade::{self, PadeApproximant, PadeOrder};
use crate::rational::{self, Rational};

pub const DEFAULT_PARAM_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub param_tol: f64,
    /// Replaces the scan grid of every case that has an oracle.
    pub grid: Option<ScanGrid>,
    /// Keep per-point scan data in the result.
    pub keep_points: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { param_tol: DEFAULT_PARAM_TOL, grid: None, keep_points: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub name: String,
    /// `ok`, `no-oracle`, `pole` or `inapplicable`.
    pub status: String,
    pub order: Option<String>,
    pub detail: Option<String>,
    pub pade: Option<PadeApproximant>,
    pub scan: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub k: usize,
    pub mode: String,
    pub params: Vec<f64>,
    pub expected_params: Option<Vec<f64>>,
    pub param_max_dev: Option<f64>,
    pub build_error: Option<String>,
    pub scan: Option<ErrorReport>,
    pub baselines: Vec<BaselineResult>,
    /// `ok`, `param-mismatch` or `open-question`.
    pub status: String,
}

/// Builds the root approximant a descriptor describes.
pub fn build_root(d: &CaseDescriptor) -> Result<RootApproximant, ApproxError> {
    let spec = d.nest_spec()?;
    match &d.mode {
        Mode::SmallOnly => solve_small_only(&d.case, &spec),
        Mode::Amplitude => solve_with_amplitude(&d.case, &spec),
        Mode::TwoPoint(conds) => solve_two_point(&spec, conds),
    }
}

/// Value of a built approximant at the physical argument `x`.
pub fn eval_root(root: &RootApproximant, var_power: Rational, x: f64) -> Result<f64, ApproxError> {
    root.evaluate(x.powf(rational::to_f64(var_power)))
}

fn variant_name(e: &ApproxError) -> &'static str {
    match e {
        ApproxError::Series(_) => "Series",
        ApproxError::ZeroOuter => "ZeroOuter",
        ApproxError::DegeneratePivot { .. } => "DegeneratePivot",
        ApproxError::NoConvergence { .. } => "NoConvergence",
        ApproxError::NegativeBase { .. } => "NegativeBase",
        ApproxError::PowerMismatch { .. } => "PowerMismatch",
        ApproxError::InvalidSpec(_) => "InvalidSpec",
        ApproxError::InvalidConditions(_) => "InvalidConditions",
    }
}

/// Largest relative deviation `|got - want| / |want|`.
pub fn max_rel_dev(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(g, w)| (g - w).abs() / w.abs().max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
}

fn strip(mut r: ErrorReport, keep: bool) -> ErrorReport {
    if !keep {
        r.per_point.clear();
    }
    r
}

pub fn run_case(d: &CaseDescriptor, opts: &RunOptions) -> Result<CaseResult, BenchError> {
    let grid = d.scan.map(|g| opts.grid.unwrap_or(g));
    let (params, build_error, scan) = match build_root(d) {
        Ok(root) => {
            let scan = match (d.oracle, grid) {
                (Some(oracle), Some(grid)) => Some(strip(
                    error_scan(|x| eval_root(&root, d.var_power, x), |x| oracle.eval(x), grid),
                    opts.keep_points,
                )),
                _ => None,
            };
            (root.params, None, scan)
        }
        Err(e) if d.expected_failure.as_deref() == Some(variant_name(&e)) => (Vec::new(), Some(e.to_string()), None),
        Err(e) => return Err(BenchError::Build { case: d.name.clone(), source: e }),
    };
    let param_max_dev = match (&d.expected_params, build_error.is_none()) {
        (Some(want), true) => Some(max_rel_dev(&params, want)),
        _ => None,
    };
    let status = if build_error.is_some() {
        "open-question"
    } else if param_max_dev.is_some_and(|dev| dev > opts.param_tol) {
        "param-mismatch"
    } else {
        "ok"
    };
    let baselines = d.baselines.iter().map(|b| run_baseline(d, b, grid, opts.keep_points)).collect();
    Ok(CaseResult {
        name: d.name.clone(),
        k: d.k(),
        mode: d.mode.label().into(),
        params,
        expected_params: d.expected_params.clone(),
        param_max_dev,
        build_error,
        scan,
        baselines,
        status: status.into(),
    })
}

/// `g(x) * x^pre_pow` for the Padé `g`.
pub fn eval_baseline(p: &PadeApproximant, pre_pow: Rational, x: f64) -> Result<f64, pade::PadeError> {
    Ok(p.evaluate(x)? * x.powf(rational::to_f64(pre_pow)))
}

fn run_baseline(d: &CaseDescriptor, b: &BaselineSpec, grid: Option<ScanGrid>, keep: bool) -> BaselineResult {
    let mut out = BaselineResult {
        name: b.name.clone(),
        status: String::new(),
        order: None,
        detail: None,
        pade: None,
        scan: None,
    };
    let oracle_grid = d.oracle.zip(grid);
    let scan_of = |p: &PadeApproximant| {
        oracle_grid.map(|(oracle, grid)| error_scan(|x| eval_baseline(p, b.pre_pow, x), |x| oracle.eval(x), grid))
    };
    let built: Result<(PadeOrder, PadeApproximant), String> = match b.choice {
        PadeChoice::Fixed(order) => {
            pade::two_point_pade(&b.small, &b.large, order, b.var_pow).map(|p| (order, p)).map_err(|e| e.to_string())
        }
        PadeChoice::Best(n) => {
            let xmax = grid.map_or(1e3, |g| g.hi);
            let score = |p: &PadeApproximant| {
                scan_of(p).filter(|r| r.failures.is_empty()).map(|r| r.max_rel_err)
            };
            pade::best_of(&pade::table(n), &b.small, &b.large, b.var_pow, xmax, score)
                .map(|(o, p, _)| (o, p))
                .ok_or_else(|| format!("no pole-free entry of order {n} builds"))
        }
    };
    let (order, p) = match built {
        Ok(v) => v,
        Err(e) => {
            out.status = "inapplicable".into();
            out.detail = Some(e);
            return out;
        }
    };
    out.order = Some(order.label());
    let poles = grid.map(|g| p.poles_on_ray(g.hi)).unwrap_or_default();
    out.status = match (oracle_grid, poles.is_empty()) {
        (_, false) => {
            out.detail = Some(format!("poles at {poles:?}"));
            "pole"
        }
        (None, true) => "no-oracle",
        (Some(_), true) => "ok",
    }
    .into();
    out.scan = scan_of(&p).map(|r| strip(r, keep));
    out.pade = Some(p);
    out
}

/// Runs every descriptor in parallel; results keep the input order.
pub fn run_all(ds: &[CaseDescriptor], opts: &RunOptions) -> Vec<Result<CaseResult, BenchError>> {
    ds.par_iter().map(|d| run_case(d, opts)).collect()
}
