//! Reference functions, adaptive quadrature and error scans.

pub mod quad;
pub mod scan;
pub mod special;

pub use quad::{quad_adaptive, QuadError, DEFAULT_TOL};
pub use scan::{error_scan, ErrorReport, ScanFailure, ScanGrid, ScanPoint, Spacing};
