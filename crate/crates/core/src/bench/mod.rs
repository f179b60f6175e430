//! Case registry, configuration files, runs and reports.

pub mod config;
pub mod constants;
pub mod registry;
pub mod report;
pub mod runner;

use std::path::PathBuf;

use thiserror::Error;

use crate::approximant::ApproxError;

pub use config::{load_config, parse_config};
pub use registry::{find, registry, CaseDescriptor, Mode, Oracle, Schedule};
pub use report::{emit_report, emit_scan, Format, ScanColumns};
pub use runner::{run_all, run_case, CaseResult, RunOptions};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("invalid `{key}`: {message}")]
    Validation { key: String, message: String },
    #[error("case {case}: {source}")]
    Build {
        case: String,
        #[source]
        source: ApproxError,
    },
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("refusing to write an empty report")]
    EmptyReport,
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
