//! Maximum-relative-error scans of an approximant against a reference.

use std::fmt::Display;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Floor on `|oracle|` in the relative error.
pub const REL_FLOOR: f64 = 1e-300;
pub const DEFAULT_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl ScanGrid {
    pub fn log(lo: f64, hi: f64, n: usize) -> Self {
        ScanGrid { lo, hi, n, spacing: Spacing::Log }
    }

    pub fn linear(lo: f64, hi: f64, n: usize) -> Self {
        ScanGrid { lo, hi, n, spacing: Spacing::Linear }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n <= 1 {
            return vec![self.lo];
        }
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Log => self.lo * (self.hi / self.lo).powf(f),
                    Spacing::Linear => self.lo + (self.hi - self.lo) * f,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub x: f64,
    pub approx: f64,
    pub oracle: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFailure {
    pub x: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// NaN when no grid point could be evaluated.
    #[serde(with = "nan_as_null")]
    pub max_rel_err: f64,
    #[serde(with = "nan_as_null")]
    pub argmax_x: f64,
    pub grid: ScanGrid,
    pub per_point: Vec<ScanPoint>,
    pub failures: Vec<ScanFailure>,
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_nan() {
            s.serialize_none()
        } else {
            s.serialize_some(v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

/// Evaluates both functions on every grid point. Points where either side
/// fails are collected in `failures` and excluded from the maximum.
pub fn error_scan<A, O, E1, E2>(approx: A, oracle: O, grid: ScanGrid) -> ErrorReport
where
    A: Fn(f64) -> Result<f64, E1> + Sync,
    O: Fn(f64) -> Result<f64, E2> + Sync,
    E1: Display,
    E2: Display,
{
    let results: Vec<Result<ScanPoint, ScanFailure>> = grid
        .points()
        .into_par_iter()
        .map(|x| {
            let fail = |m: String| ScanFailure { x, message: m };
            let a = approx(x).map_err(|e| fail(format!("approximant: {e}")))?;
            let o = oracle(x).map_err(|e| fail(format!("oracle: {e}")))?;
            if !a.is_finite() || !o.is_finite() {
                return Err(fail(format!("non-finite value: approximant {a}, oracle {o}")));
            }
            Ok(ScanPoint { x, approx: a, oracle: o, rel_err: (a - o).abs() / o.abs().max(REL_FLOOR) })
        })
        .collect();
    let mut per_point = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(p) => per_point.push(p),
            Err(f) => failures.push(f),
        }
    }
    let (max_rel_err, argmax_x) = per_point
        .iter()
        .fold((f64::NAN, f64::NAN), |(m, ax), p| if ax.is_nan() || p.rel_err > m { (p.rel_err, p.x) } else { (m, ax) });
    ErrorReport { max_rel_err, argmax_x, grid, per_point, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(v: f64) -> Result<f64, Infallible> {
        Ok(v)
    }

    #[test]
    fn identical_functions() {
        let r = error_scan(|x| ok(x.sin() + 2.0), |x| ok(x.sin() + 2.0), ScanGrid::log(0.01, 100.0, 400));
        assert_eq!(r.max_rel_err, 0.0);
        assert_eq!(r.per_point.len(), 400);
    }

    #[test]
    fn locates_maximum() {
        let r = error_scan(|x| ok(1.0 + 0.1 * (-(x - 3.0).powi(2)).exp()), |_| ok(1.0), ScanGrid::linear(0.0, 6.0, 61));
        assert!((r.max_rel_err - 0.1).abs() < 1e-12);
        assert!((r.argmax_x - 3.0).abs() < 1e-12);
    }

    #[test]
    fn collects_failures() {
        let r = error_scan(
            |x| if x > 1.0 { Err("domain") } else { Ok(x) },
            |x| ok(x),
            ScanGrid::linear(0.5, 2.0, 4),
        );
        assert_eq!(r.failures.len(), 2);
        assert_eq!(r.per_point.len(), 2);
    }

    #[test]
    fn grid_endpoints() {
        let p = ScanGrid::log(0.01, 100.0, 5).points();
        assert!((p[0] - 0.01).abs() < 1e-15 && (p[4] - 100.0).abs() < 1e-12);
        assert!((p[2] - 1.0).abs() < 1e-12);
    }
}
