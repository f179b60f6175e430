//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Infinite ranges are mapped to `[0, 1)` with `x = a + t/(1 - t)`; a
//! doubly infinite range is split at zero.

use std::collections::BinaryHeap;

use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("no convergence after {intervals} subintervals (estimate {estimate}, error {error:e})")]
    NoConvergence { intervals: usize, estimate: f64, error: f64 },
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite(x))
        }
    };
    let fc = eval(c)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = eval(c - dx)? + eval(c + dx)?;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok(Segment { a, b, value: kronrod * h, error: ((kronrod - gauss) * h).abs() })
}

/// Integral of `f` over `[a, b]`; either end may be infinite.
///
/// Stops once the summed error estimate is below `tol * |I|`.
pub fn quad_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, QuadError> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(QuadError::InvalidInterval(a, b));
    }
    if a == b {
        return Ok(0.0);
    }
    match (a.is_infinite(), b.is_infinite()) {
        (false, false) => finite(&f, a, b, tol),
        (false, true) => finite(&|t: f64| mapped(&f, a, t, 1.0), 0.0, 1.0, tol),
        (true, false) => finite(&|t: f64| mapped(&f, b, t, -1.0), 0.0, 1.0, tol),
        (true, true) => {
            let right = finite(&|t: f64| mapped(&f, 0.0, t, 1.0), 0.0, 1.0, tol)?;
            let left = finite(&|t: f64| mapped(&f, 0.0, t, -1.0), 0.0, 1.0, tol)?;
            Ok(left + right)
        }
    }
}

/// `f(a + s*t/(1-t)) / (1-t)^2`, with the integrand taken to vanish at the
/// mapped infinity.
fn mapped<F: Fn(f64) -> f64>(f: &F, a: f64, t: f64, s: f64) -> f64 {
    let one_minus = 1.0 - t;
    let x = a + s * t / one_minus;
    if x.is_infinite() {
        return 0.0;
    }
    f(x) / (one_minus * one_minus)
}

fn finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, QuadError> {
    let mut heap = BinaryHeap::new();
    let first = gk15(f, a, b)?;
    let (mut total, mut err) = (first.value, first.error);
    heap.push(first);
    while err > tol * total.abs() && err > f64::MIN_POSITIVE {
        if heap.len() >= MAX_INTERVALS {
            return Err(QuadError::NoConvergence { intervals: heap.len(), estimate: total, error: err });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(QuadError::NoConvergence { intervals: heap.len() + 1, estimate: total, error: err });
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    Ok(heap.iter().map(|s| s.value).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        assert!((quad_adaptive(|x| x, 0.0, 1.0, DEFAULT_TOL).unwrap() - 0.5).abs() < 1e-14);
        assert!((quad_adaptive(|x| (-x).exp(), 0.0, f64::INFINITY, DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-10);
        let g = quad_adaptive(|x| (-x * x).exp(), f64::NEG_INFINITY, f64::INFINITY, DEFAULT_TOL).unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity() {
        let v = quad_adaptive(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - 2.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_nan() {
        assert!(matches!(quad_adaptive(|_| f64::NAN, 0.0, 1.0, 1e-10), Err(QuadError::NonFinite(_))));
        assert!(matches!(quad_adaptive(|x| x, 1.0, 0.0, 1e-10), Err(QuadError::InvalidInterval(..))));
    }
}
