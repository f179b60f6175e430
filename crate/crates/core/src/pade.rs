//! One- and two-point Padé approximants.
//!
//! A [`PadeApproximant`] is `P_M(v) / Q_N(v)` in the build variable
//! `v = x^var_pow`, with `Q(0) = 1`. The two-point construction mixes `p`
//! conditions from the expansion at `v = 0` with `q` conditions from the
//! expansion at `v = infinity`, the latter written in `y = 1/v`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::rational::{self, Rational};
use crate::series::{GeneralizedSeries, SeriesError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PadeError {
    #[error("Padé linear system is singular")]
    SingularSystem,
    #[error("inconsistent powers: {0}")]
    InconsistentPowers(String),
    #[error("denominator vanishes at x = {0}")]
    PoleAt(f64),
    #[error("need {needed} coefficients on the {side} side, series holds {available}")]
    InsufficientData { side: &'static str, needed: usize, available: usize },
    #[error("invalid Padé request: {0}")]
    Invalid(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, PadeError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeApproximant {
    pub num_coeffs: Vec<f64>,
    pub den_coeffs: Vec<f64>,
    pub var_pow: Rational,
}

/// Degrees and condition split of a two-point Padé table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeOrder {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl PadeOrder {
    pub fn new(m: usize, n: usize, p: usize) -> Self {
        PadeOrder { m, n, p, q: m + n + 1 - p }
    }

    pub fn label(&self) -> String {
        format!("P{}/{}[p={},q={}]", self.m, self.n, self.p, self.q)
    }
}

/// Standard Padé from the series of `f` in the build variable.
pub fn pade_from_series(s: &GeneralizedSeries, m: usize, n: usize) -> Result<PadeApproximant> {
    build(Some(s), None, PadeOrder::new(m, n, m + n + 1), Rational::one())
}

/// Two-point Padé from the physical-variable expansions of `f`: `small` in
/// powers of `x`, `large` in powers of `t = 1/x` with logs absent.
///
/// A negative `var_pow` swaps the roles of the two expansions.
pub fn two_point_pade(
    small: &GeneralizedSeries,
    large: &GeneralizedSeries,
    order: PadeOrder,
    var_pow: Rational,
) -> Result<PadeApproximant> {
    build(Some(small), Some(large), order, var_pow)
}

fn build(
    small: Option<&GeneralizedSeries>,
    large: Option<&GeneralizedSeries>,
    order: PadeOrder,
    var_pow: Rational,
) -> Result<PadeApproximant> {
    let PadeOrder { m, n, p, q } = order;
    if p + q != m + n + 1 {
        return Err(PadeError::Invalid(format!("p + q = {} must equal M + N + 1 = {}", p + q, m + n + 1)));
    }
    if var_pow.is_zero() {
        return Err(PadeError::Invalid("variable power must be nonzero".into()));
    }
    let factor = var_pow.abs().recip();
    let (at_zero, at_inf) = if var_pow.is_positive() { (small, large) } else { (large, small) };
    let s = match (p, at_zero) {
        (0, _) => Vec::new(),
        (_, Some(ser)) => grid_coeffs(&ser.scale_exponents(factor)?, 0, p, "small")?,
        (_, None) => return Err(PadeError::InsufficientData { side: "small", needed: p, available: 0 }),
    };
    let l = match (q, at_inf) {
        (0, _) => Vec::new(),
        (_, Some(ser)) => {
            // L(y) = y^(M-N) f must be a power series in y
            let shift = m as i64 - n as i64;
            let scaled = ser.scale_exponents(factor)?;
            let lead = integer_exponent(scaled.leading_exponent().unwrap_or(scaled.lead()), "large lead")?;
            if lead + shift < 0 {
                return Err(PadeError::InconsistentPowers(format!(
                    "large-side power y^{lead} outgrows a degree difference of {}",
                    shift
                )));
            }
            grid_coeffs(&scaled, -shift, q, "large")?
        }
        (_, None) => return Err(PadeError::InsufficientData { side: "large", needed: q, available: 0 }),
    };

    // unknowns: p_0..p_M, q_1..q_N
    let size = m + n + 1;
    let mut a = vec![vec![0.0; size]; size];
    let mut b = vec![0.0; size];
    for row in 0..p {
        if row <= m {
            a[row][row] = 1.0;
        }
        for j in 1..=n.min(row) {
            a[row][m + j] -= s[row - j];
        }
        b[row] = s[row];
    }
    for i in 0..q {
        let row = p + i;
        if i <= m {
            a[row][m - i] = 1.0;
        }
        for j in 1..=n {
            let idx = i as i64 - n as i64 + j as i64;
            if idx >= 0 {
                a[row][m + j] -= l[idx as usize];
            }
        }
        let idx = i as i64 - n as i64;
        if idx >= 0 {
            b[row] = l[idx as usize];
        }
    }
    let sol = linalg::solve(a, b).ok_or(PadeError::SingularSystem)?;
    let mut den = vec![1.0];
    den.extend_from_slice(&sol[m + 1..]);
    Ok(PadeApproximant { num_coeffs: sol[..=m].to_vec(), den_coeffs: den, var_pow })
}

fn integer_exponent(e: Rational, what: &str) -> Result<i64> {
    rational::as_integer(e)
        .ok_or_else(|| PadeError::InconsistentPowers(format!("{what} exponent {e} is not an integer power")))
}

/// Coefficients of `y^(offset + i)`, `i = 0..count`, requiring an integer
/// grid and no logarithms in the used range.
fn grid_coeffs(s: &GeneralizedSeries, offset: i64, count: usize, side: &'static str) -> Result<Vec<f64>> {
    integer_exponent(s.step(), side)?;
    integer_exponent(s.lead(), side)?;
    let s = &s.regrid(s.lead(), Rational::one(), s.through())?;
    let last = offset + count as i64 - 1;
    if rational::int(last) > s.through() {
        let available = (s.through() - rational::int(offset)).floor().to_integer() + 1;
        return Err(PadeError::InsufficientData { side, needed: count, available: available.max(0) as usize });
    }
    (0..count as i64)
        .map(|i| {
            let e = rational::int(offset + i);
            if s.coeff(e, 1)? != 0.0 {
                return Err(PadeError::InconsistentPowers(format!("logarithm at {side}-side power {e}")));
            }
            Ok(s.coeff(e, 0)?)
        })
        .collect()
}

fn horner(c: &[f64], v: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, x| acc * v + x)
}

impl PadeApproximant {
    pub fn m(&self) -> usize {
        self.num_coeffs.len() - 1
    }

    pub fn n(&self) -> usize {
        self.den_coeffs.len() - 1
    }

    fn build_var(&self, x: f64) -> f64 {
        x.powf(rational::to_f64(self.var_pow))
    }

    pub fn denominator(&self, x: f64) -> f64 {
        horner(&self.den_coeffs, self.build_var(x))
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let v = self.build_var(x);
        let den = horner(&self.den_coeffs, v);
        let scale: f64 = self.den_coeffs.iter().enumerate().map(|(i, c)| (c * v.powi(i as i32)).abs()).sum();
        if den.abs() <= 1e-14 * scale {
            return Err(PadeError::PoleAt(x));
        }
        Ok(horner(&self.num_coeffs, v) / den)
    }

    /// Same value as [`evaluate`](Self::evaluate), summing both polynomials
    /// term by term with explicit powers.
    pub fn evaluate_direct(&self, x: f64) -> f64 {
        let v = self.build_var(x);
        let sum = |c: &[f64]| c.iter().enumerate().map(|(i, a)| a * v.powi(i as i32)).sum::<f64>();
        sum(&self.num_coeffs) / sum(&self.den_coeffs)
    }

    /// Real poles in `(0, xmax]`, located by a sign scan of the
    /// denominator and refined by bisection.
    pub fn poles_on_ray(&self, xmax: f64) -> Vec<f64> {
        const SCAN: usize = 4000;
        let lo = xmax * 1e-9;
        let xs: Vec<f64> = (0..=SCAN).map(|i| lo * (xmax / lo).powf(i as f64 / SCAN as f64)).collect();
        let mut poles = Vec::new();
        let start = if self.var_pow.is_positive() { 0.0 } else { lo };
        let mut prev = (start, self.denominator(start));
        for &x in &xs {
            let d = self.denominator(x);
            if !d.is_finite() {
                continue;
            }
            if d == 0.0 {
                poles.push(x);
            } else if prev.1 != 0.0 && d.signum() != prev.1.signum() {
                let (mut a, mut b) = (prev.0, x);
                while b - a > 1e-10 * b.max(1.0) {
                    let mid = 0.5 * (a + b);
                    if self.denominator(mid).signum() == self.denominator(a).signum() {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                poles.push(0.5 * (a + b));
            }
            prev = (x, d);
        }
        poles
    }

    /// Taylor series of `P/Q` in `v` through `v^order`.
    pub fn expand_at_zero(&self, order: usize) -> Result<GeneralizedSeries> {
        let one = Rational::one();
        let through = rational::int(order as i64);
        let num = GeneralizedSeries::from_terms(Rational::zero(), one, through, poly_terms(&self.num_coeffs))?;
        let den = GeneralizedSeries::from_terms(Rational::zero(), one, through, poly_terms(&self.den_coeffs))?;
        Ok(num.mul(&den.powr(-one)?)?)
    }

    /// Expansion of `P/Q` at `v = infinity` in `y = 1/v`, retained `span`
    /// orders past its lead.
    pub fn expand_at_infinity(&self, span: usize) -> Result<GeneralizedSeries> {
        let one = Rational::one();
        let rev = |c: &[f64]| -> Result<GeneralizedSeries> {
            let deg = c.len() - 1;
            let terms = (0..=deg).map(|i| (rational::int((deg - i) as i64), c[i], 0.0));
            let trimmed = GeneralizedSeries::from_terms(Rational::zero(), one, rational::int((deg + 2 * span) as i64), terms)?;
            Ok(trimmed)
        };
        let num = rev(&self.num_coeffs)?;
        let den = rev(&self.den_coeffs)?;
        let ratio = num.mul(&den.powr(-one)?)?.shift(rational::int(self.n() as i64 - self.m() as i64));
        match ratio.leading_exponent() {
            Some(lead) => Ok(ratio.truncate(lead + rational::int(span as i64))?),
            None => Ok(ratio),
        }
    }
}

fn poly_terms(c: &[f64]) -> Vec<(Rational, f64, f64)> {
    c.iter().enumerate().map(|(i, v)| (rational::int(i as i64), *v, 0.0)).collect()
}

/// All table entries with `M + N + 1 = order`, every split included.
pub fn table(order: usize) -> Vec<PadeOrder> {
    let mut out = Vec::new();
    for m in 0..order {
        let n = order - 1 - m;
        for p in 0..=order {
            out.push(PadeOrder::new(m, n, p));
        }
    }
    out
}

/// Picks the entry with the smallest score among candidates that build
/// and have no pole on `(0, xmax]`. `score` returns `None` to reject.
pub fn best_of<F>(
    candidates: &[PadeOrder],
    small: &GeneralizedSeries,
    large: &GeneralizedSeries,
    var_pow: Rational,
    xmax: f64,
    mut score: F,
) -> Option<(PadeOrder, PadeApproximant, f64)>
where
    F: FnMut(&PadeApproximant) -> Option<f64>,
{
    let mut best: Option<(PadeOrder, PadeApproximant, f64)> = None;
    for &ord in candidates {
        let Ok(pade) = two_point_pade(small, large, ord, var_pow) else { continue };
        if !pade.poles_on_ray(xmax).is_empty() {
            continue;
        }
        let Some(s) = score(&pade) else { continue };
        if best.as_ref().map_or(true, |b| s < b.2) {
            best = Some((ord, pade, s));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn series(c: &[f64]) -> GeneralizedSeries {
        GeneralizedSeries::new(int(0), int(1), c.to_vec()).unwrap()
    }

    #[test]
    fn geometric() {
        let p = pade_from_series(&series(&[1.0, -1.0, 1.0]), 0, 1).unwrap();
        assert!((p.num_coeffs[0] - 1.0).abs() < 1e-15);
        assert!((p.den_coeffs[1] - 1.0).abs() < 1e-15);
        assert_eq!(p.evaluate(1.0).unwrap(), 0.5);
    }

    #[test]
    fn exponential_p11() {
        let p = pade_from_series(&series(&[1.0, 1.0, 0.5]), 1, 1).unwrap();
        assert!((p.num_coeffs[1] - 0.5).abs() < 1e-15);
        assert!((p.den_coeffs[1] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn pole_detection() {
        let p = PadeApproximant { num_coeffs: vec![1.0], den_coeffs: vec![1.0, -1.0], var_pow: int(1) };
        let poles = p.poles_on_ray(10.0);
        assert_eq!(poles.len(), 1);
        assert!((poles[0] - 1.0).abs() < 1e-9);
        assert!(matches!(p.evaluate(1.0), Err(PadeError::PoleAt(_))));
    }

    #[test]
    fn harmonium_grids_are_inconsistent() {
        // c0 w^(2/3)(1 + ...) against b0 w + b1 w^(1/2) + ... on the w^(1/3) variable
        let small = GeneralizedSeries::new(rat(2, 3), rat(1, 3), vec![1.19, 2.37, 0.12]).unwrap();
        let large = GeneralizedSeries::new(int(-1), rat(1, 2), vec![3.0, 0.8, -0.08, 0.011]).unwrap();
        let err = two_point_pade(&small, &large, PadeOrder::new(3, 2, 3), rat(1, 3)).unwrap_err();
        assert!(matches!(err, PadeError::InconsistentPowers(_)), "{err:?}");
    }

    #[test]
    fn two_point_reproduces_both_sides() {
        // f = 1/(1 + x) + x/(1 + x)^2 style data: small 1 - 0 ... use exact rational
        // f = (1 + 2x)/(1 + x + x^2)
        let p0 = PadeApproximant { num_coeffs: vec![1.0, 2.0], den_coeffs: vec![1.0, 1.0, 1.0], var_pow: int(1) };
        let small = p0.expand_at_zero(3).unwrap();
        // large in t: f = 2t (1 + t/2) / (1 + t + t^2)
        let large = p0.expand_at_infinity(3).unwrap();
        let p = two_point_pade(&small, &large, PadeOrder::new(1, 2, 2), int(1)).unwrap();
        for (a, b) in p.num_coeffs.iter().zip(&p0.num_coeffs) {
            assert!((a - b).abs() < 1e-12);
        }
        let back = p.expand_at_infinity(2).unwrap();
        assert!((back.coeff(int(1), 0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn large_side_needs_room() {
        let small = series(&[1.0, 1.0]);
        let large = GeneralizedSeries::new(int(-2), int(1), vec![1.0, 0.0]).unwrap();
        let err = two_point_pade(&small, &large, PadeOrder::new(0, 1, 1), int(1)).unwrap_err();
        assert!(matches!(err, PadeError::InconsistentPowers(_)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn q0_equals_one_point(c in prop::collection::vec(-2.0..2.0f64, 5), m in 0usize..3) {
            let mut c = c;
            c[0] = 1.0;
            let n = 4 - m;
            let s = series(&c);
            let one = pade_from_series(&s, m, n);
            let dummy = GeneralizedSeries::new(int(0), int(1), vec![1.0]).unwrap();
            let two = two_point_pade(&s, &dummy, PadeOrder::new(m, n, m + n + 1), int(1));
            match (one, two) {
                (Ok(a), Ok(b)) => {
                    for (x, y) in a.num_coeffs.iter().chain(&a.den_coeffs).zip(b.num_coeffs.iter().chain(&b.den_coeffs)) {
                        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
                    }
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "one-point and q = 0 disagree on solvability"),
            }
        }

        #[test]
        fn reexpansion_matches_inputs(c in prop::collection::vec(-2.0..2.0f64, 4)) {
            let mut c = c;
            c[0] = 1.0;
            let s = series(&c);
            if let Ok(p) = pade_from_series(&s, 1, 2) {
                let back = p.expand_at_zero(3).unwrap();
                let big = p.num_coeffs.iter().chain(&p.den_coeffs).fold(1.0_f64, |m, v| m.max(v.abs()));
                for (i, v) in c.iter().enumerate() {
                    let got = back.coeff(int(i as i64), 0).unwrap();
                    prop_assert!((got - v).abs() <= 1e-9 * big * big, "{got} vs {v}");
                }
                for x in [0.1, 0.5, 2.0] {
                    if let Ok(v) = p.evaluate(x) {
                        prop_assert!((v - p.evaluate_direct(x)).abs() <= 1e-12 * v.abs().max(1.0));
                    }
                }
            }
        }
    }
}
