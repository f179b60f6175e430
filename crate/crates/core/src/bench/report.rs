//! CSV and JSON reports, and plot-ready scan files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::runner::CaseResult;
use super::BenchError;
use crate::oracles::ErrorReport;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 9] = [
    "case",
    "k",
    "mode",
    "param_max_dev",
    "scan_max_rel_err",
    "scan_argmax",
    "baseline_name",
    "baseline_max_rel_err",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub results: Vec<CaseResult>,
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.6e}"),
        Some(x) => x.to_string(),
        None => String::new(),
    }
}

/// One row per case; the baseline columns describe the first baseline.
pub fn render_csv(results: &[CaseResult]) -> String {
    let mut out = format!("# schema_version = {SCHEMA_VERSION}\n{}\n", CSV_COLUMNS.join(","));
    for r in results {
        let baseline = r.baselines.first();
        let fields = [
            r.name.clone(),
            r.k.to_string(),
            r.mode.clone(),
            num(r.param_max_dev),
            num(r.scan.as_ref().map(|s| s.max_rel_err)),
            num(r.scan.as_ref().map(|s| s.argmax_x)),
            baseline.map(|b| b.name.clone()).unwrap_or_default(),
            num(baseline.and_then(|b| b.scan.as_ref()).map(|s| s.max_rel_err)),
            r.status.clone(),
        ];
        let escaped: Vec<String> = fields.iter().map(|f| escape(f)).collect();
        let _ = writeln!(out, "{}", escaped.join(","));
    }
    out
}

fn escape(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

pub fn render_json(results: &[CaseResult]) -> Result<String, BenchError> {
    let doc = ReportDocument { schema_version: SCHEMA_VERSION, results: results.to_vec() };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn parse_json(text: &str) -> Result<ReportDocument, BenchError> {
    Ok(serde_json::from_str(text)?)
}

fn write(path: &Path, text: &str) -> Result<(), BenchError> {
    fs::write(path, text).map_err(|source| BenchError::Io { path: path.to_path_buf(), source })
}

/// Writes the report; an empty result list is refused before touching `path`.
pub fn emit_report(results: &[CaseResult], format: Format, path: &Path) -> Result<(), BenchError> {
    if results.is_empty() {
        return Err(BenchError::EmptyReport);
    }
    let text = match format {
        Format::Csv => render_csv(results),
        Format::Json => render_json(results)?,
    };
    write(path, &text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanColumns {
    /// `x approx`
    Two,
    /// `x approx oracle rel_err`
    Four,
}

pub fn render_scan(report: &ErrorReport, columns: ScanColumns) -> String {
    let mut out = String::new();
    match columns {
        ScanColumns::Two => out.push_str("# x value\n"),
        ScanColumns::Four => out.push_str("# x approx oracle rel_err\n"),
    }
    for p in &report.per_point {
        let _ = match columns {
            ScanColumns::Two => writeln!(out, "{:.10e} {:.10e}", p.x, p.approx),
            ScanColumns::Four => {
                writeln!(out, "{:.10e} {:.10e} {:.10e} {:.10e}", p.x, p.approx, p.oracle, p.rel_err)
            }
        };
    }
    out
}

pub fn emit_scan(report: &ErrorReport, columns: ScanColumns, path: &Path) -> Result<(), BenchError> {
    write(path, &render_scan(report, columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{ScanGrid, ScanPoint};

    fn sample() -> CaseResult {
        CaseResult {
            name: "demo".into(),
            k: 2,
            mode: "amplitude".into(),
            params: vec![0.5, 1.25],
            expected_params: None,
            param_max_dev: None,
            build_error: None,
            scan: Some(ErrorReport {
                max_rel_err: 0.1,
                argmax_x: 2.0,
                grid: ScanGrid::log(1.0, 4.0, 2),
                per_point: vec![ScanPoint { x: 1.0, approx: 1.1, oracle: 1.0, rel_err: 0.1 }],
                failures: vec![],
            }),
            baselines: vec![],
            status: "ok".into(),
        }
    }

    #[test]
    fn csv_header_and_row() {
        let csv = render_csv(&[sample()]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "# schema_version = 1");
        assert_eq!(lines[1], CSV_COLUMNS.join(","));
        assert!(lines[2].starts_with("demo,2,amplitude,,1.000000e-1,2.000000e0,,,ok"));
    }

    #[test]
    fn json_round_trip() {
        let r = vec![sample()];
        let doc = parse_json(&render_json(&r).unwrap()).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.results, r);
    }

    #[test]
    fn empty_results_write_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        assert!(matches!(emit_report(&[], Format::Csv, &path), Err(BenchError::EmptyReport)));
        assert!(!path.exists());
    }

    #[test]
    fn scan_files() {
        let r = sample().scan.unwrap();
        assert_eq!(render_scan(&r, ScanColumns::Two).lines().nth(1).unwrap().split(' ').count(), 2);
        assert_eq!(render_scan(&r, ScanColumns::Four).lines().nth(1).unwrap().split(' ').count(), 4);
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = emit_report(&[sample()], Format::Csv, Path::new("/nonexistent/dir/r.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/r.csv"));
    }
}
