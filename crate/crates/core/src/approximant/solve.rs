use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ApproxError, NestSpec, Result, RootApproximant};
use crate::linalg;
use crate::rational::{self, Rational};

pub const NEWTON_TOL: f64 = 1e-10;
pub const NEWTON_MAX_ITER: usize = 200;
const PROBE_PIVOT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Zero,
    Infinity,
}

/// One accuracy-through-order requirement on the ratio.
///
/// On the zero side `exponent` is the power of `u`. On the infinity side it
/// is the offset past the leading power in `t = 1/u`: offset zero with no
/// log fixes the amplitude, a positive offset fixes the correction
/// coefficient divided by the amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchCondition {
    pub side: Side,
    pub exponent: Rational,
    pub logpow: u8,
    pub target: f64,
}

impl MatchCondition {
    pub fn zero(exponent: Rational, target: f64) -> Self {
        MatchCondition { side: Side::Zero, exponent, logpow: 0, target }
    }

    pub fn infinity(offset: Rational, logpow: u8, target: f64) -> Self {
        MatchCondition { side: Side::Infinity, exponent: offset, logpow, target }
    }

    fn is_amplitude(&self) -> bool {
        self.side == Side::Infinity && self.exponent.is_zero() && self.logpow == 0
    }
}

/// A single coefficient of an asymptotic series in ratio form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub exponent: Rational,
    pub logpow: u8,
    pub value: f64,
}

impl SeriesTerm {
    pub fn new(exponent: Rational, value: f64) -> Self {
        SeriesTerm { exponent, logpow: 0, value }
    }

    pub fn log(exponent: Rational, value: f64) -> Self {
        SeriesTerm { exponent, logpow: 1, value }
    }
}

/// Both asymptotic expansions of a target in the build variable `u`:
///
/// ```text
/// u -> 0:        A u^alpha (1 + sum a_n u^n)
/// u -> infinity: B u^beta  (1 + sum b_n t^n),  t = 1/u
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCase {
    pub small_amp: f64,
    pub small_pow: Rational,
    pub small_step: Rational,
    pub small_coeffs: Vec<SeriesTerm>,
    pub large_amp: Option<f64>,
    pub large_pow: Rational,
    pub large_coeffs: Vec<SeriesTerm>,
    pub variable_note: String,
}

impl AsymptoticCase {
    pub fn total_pow(&self) -> Rational {
        self.large_pow - self.small_pow
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ApproxError::InvalidConditions(m));
        if self.small_step <= Rational::zero() {
            return bad(format!("small step {} must be positive", self.small_step));
        }
        for w in self.small_coeffs.windows(2) {
            if (w[1].exponent, w[1].logpow) <= (w[0].exponent, w[0].logpow) {
                return bad("small-side exponents must increase".into());
            }
        }
        for c in &self.small_coeffs {
            if c.exponent <= Rational::zero() || rational::ratio_index(c.exponent, self.small_step).is_none() {
                return bad(format!("small-side exponent {} is off the grid {}", c.exponent, self.small_step));
            }
        }
        if self.large_coeffs.iter().any(|c| c.exponent < Rational::zero()) {
            return bad("large-side offsets must be nonnegative".into());
        }
        Ok(())
    }

    pub fn small_conditions(&self) -> Vec<MatchCondition> {
        self.small_coeffs
            .iter()
            .map(|c| MatchCondition { side: Side::Zero, exponent: c.exponent, logpow: c.logpow, target: c.value })
            .collect()
    }

    /// `B/A` as an infinity-side condition, when `B` is known.
    pub fn amplitude_condition(&self) -> Option<MatchCondition> {
        self.large_amp.map(|b| MatchCondition::infinity(Rational::zero(), 0, b / self.small_amp))
    }

    pub fn large_conditions(&self) -> Vec<MatchCondition> {
        self.large_coeffs.iter().map(|c| MatchCondition::infinity(c.exponent, c.logpow, c.value)).collect()
    }
}

/// Current values of the quantities constrained by `conds`.
pub fn condition_values(spec: &NestSpec, params: &[f64], conds: &[MatchCondition]) -> Result<Vec<f64>> {
    let zero_through = conds.iter().filter(|c| c.side == Side::Zero).map(|c| c.exponent).max();
    let inf_span = conds.iter().filter(|c| c.side == Side::Infinity).map(|c| c.exponent).max();
    let zs = zero_through.map(|t| spec.expand_at_zero(params, t)).transpose()?;
    let inf = inf_span.map(|s| spec.expand_at_infinity(params, s)).transpose()?;
    let lead = -spec.ratio_large_power();
    let amp = match &inf {
        Some(s) => s.coeff(lead, 0)?,
        None => 0.0,
    };
    conds
        .iter()
        .map(|c| match c.side {
            Side::Zero => Ok(zs.as_ref().expect("zero series").coeff(c.exponent, c.logpow)?),
            Side::Infinity if c.is_amplitude() => Ok(amp),
            Side::Infinity => {
                let s = inf.as_ref().expect("infinity series");
                Ok(s.coeff(lead + c.exponent, c.logpow)? / amp)
            }
        })
        .collect()
}

fn residuals(spec: &NestSpec, params: &[f64], conds: &[MatchCondition]) -> Result<Vec<f64>> {
    let vals = condition_values(spec, params, conds)?;
    Ok(vals.iter().zip(conds).map(|(v, c)| (v - c.target) / c.target.abs().max(1.0)).collect())
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Fixes `params[i]` from the `i`-th zero-side condition, in order, by
/// probing the affine dependence with `A_i = 0` and `A_i = 1`. Later
/// parameters are held at zero.
fn sequential(spec: &NestSpec, params: &mut [f64], conds: &[MatchCondition]) -> Result<()> {
    for (i, cond) in conds.iter().enumerate() {
        let mut probe = params.to_vec();
        probe[i..].iter_mut().for_each(|a| *a = 0.0);
        let c0 = condition_values(spec, &probe, std::slice::from_ref(cond))?[0];
        probe[i] = 1.0;
        let c1 = condition_values(spec, &probe, std::slice::from_ref(cond))?[0];
        let pivot = c1 - c0;
        if pivot.abs() < PROBE_PIVOT {
            return Err(ApproxError::DegeneratePivot { order: i + 1, pivot });
        }
        params[i] = (cond.target - c0) / pivot;
    }
    Ok(())
}

fn small_subset(case: &AsymptoticCase, n: usize, k: usize) -> Result<Vec<MatchCondition>> {
    case.validate()?;
    let conds = case.small_conditions();
    if conds.len() < n {
        return Err(ApproxError::InvalidConditions(format!(
            "nest of depth {k} needs {n} small-side coefficients, case has {}",
            conds.len()
        )));
    }
    Ok(conds[..n].to_vec())
}

/// Order-by-order solve from the first `k` small-side coefficients.
pub fn solve_small_only(case: &AsymptoticCase, spec: &NestSpec) -> Result<RootApproximant> {
    let k = spec.k();
    let conds = small_subset(case, k, k)?;
    let mut params = vec![0.0; k];
    sequential(spec, &mut params, &conds)?;
    RootApproximant::new(spec.clone(), params)
}

/// `A_1..A_{k-1}` from small-side coefficients and `A_k` from the
/// large-variable amplitude in closed form.
pub fn solve_with_amplitude(case: &AsymptoticCase, spec: &NestSpec) -> Result<RootApproximant> {
    let k = spec.k();
    spec.check_large_power(case.large_pow - case.small_pow + spec.prefactor_pow())?;
    let amp = case
        .amplitude_condition()
        .ok_or_else(|| ApproxError::InvalidConditions("amplitude mode needs the large amplitude".into()))?;
    if spec.log_slots()[k - 1].is_some() {
        return Err(ApproxError::InvalidSpec("the outer level cannot be a log slot in amplitude mode".into()));
    }
    let conds = small_subset(case, k - 1, k)?;
    let mut params = vec![0.0; k];
    sequential(spec, &mut params, &conds)?;
    let n_k = rational::to_f64(spec.level_pows()[k - 1]);
    if !(amp.target > 0.0) {
        return Err(crate::series::SeriesError::NonPositiveLead {
            coefficient: amp.target,
            exponent: -spec.ratio_large_power(),
        }
        .into());
    }
    params[k - 1] = amp.target.powf(1.0 / n_k) - spec.inherited_amplitude(&params, k)?;
    RootApproximant::new(spec.clone(), params)
}

/// Damped Newton solve of `k` mixed conditions.
///
/// The zero-side conditions, taken in order, seed `A_1..A_m` through the
/// sequential solve; the remaining parameters start at one.
pub fn solve_two_point(spec: &NestSpec, conditions: &[MatchCondition]) -> Result<RootApproximant> {
    let k = spec.k();
    if conditions.len() != k {
        return Err(ApproxError::InvalidConditions(format!(
            "{} conditions for {k} parameters",
            conditions.len()
        )));
    }
    let mut conds = conditions.to_vec();
    conds.sort_by(|a, b| {
        (a.side == Side::Infinity, a.exponent, a.logpow).cmp(&(b.side == Side::Infinity, b.exponent, b.logpow))
    });
    if conds.iter().any(|c| c.exponent < Rational::zero()) {
        return Err(ApproxError::InvalidConditions("condition exponents must be nonnegative".into()));
    }
    let small: Vec<_> = conds.iter().filter(|c| c.side == Side::Zero).copied().collect();
    let mut seed = vec![1.0; k];
    seed[..small.len()].iter_mut().for_each(|a| *a = 0.0);
    sequential(spec, &mut seed, &small)?;
    let params = newton(spec, seed, &conds)?;
    RootApproximant::new(spec.clone(), params)
}

fn newton(spec: &NestSpec, mut a: Vec<f64>, conds: &[MatchCondition]) -> Result<Vec<f64>> {
    let mut r = residuals(spec, &a, conds)?;
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    for iter in 0..NEWTON_MAX_ITER {
        if max_abs(&r) < NEWTON_TOL {
            return Ok(a);
        }
        let fail = |a: &[f64], r: &[f64]| ApproxError::NoConvergence {
            iterations: iter,
            residual: max_abs(r),
            best: a.to_vec(),
        };
        let jac = jacobian(spec, &a, &r, conds).ok_or_else(|| fail(&a, &r))?;
        let delta = linalg::solve(jac, r.iter().map(|x| -x).collect()).ok_or_else(|| fail(&a, &r))?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = a.iter().zip(&delta).map(|(x, d)| x + lambda * d).collect();
            if let Ok(rt) = residuals(spec, &trial, conds) {
                if norm(&rt) < norm(&r) || max_abs(&rt) < NEWTON_TOL {
                    a = trial;
                    r = rt;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                return Err(fail(&a, &r));
            }
        }
    }
    if max_abs(&r) < NEWTON_TOL {
        return Ok(a);
    }
    Err(ApproxError::NoConvergence { iterations: NEWTON_MAX_ITER, residual: max_abs(&r), best: a })
}

/// Jacobian by central differences, one-sided where a probe leaves the
/// domain. Columns are rows of `J^T`; the result is row-major `J`.
fn jacobian(spec: &NestSpec, a: &[f64], r0: &[f64], conds: &[MatchCondition]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut jac = vec![vec![0.0; n]; conds.len()];
    for j in 0..n {
        let h = 1e-6 * a[j].abs().max(1.0);
        let shifted = |s: f64| {
            let mut p = a.to_vec();
            p[j] += s;
            residuals(spec, &p, conds).ok()
        };
        let col: Vec<f64> = match (shifted(h), shifted(-h)) {
            (Some(up), Some(dn)) => up.iter().zip(&dn).map(|(u, d)| (u - d) / (2.0 * h)).collect(),
            (Some(up), None) => up.iter().zip(r0).map(|(u, c)| (u - c) / h).collect(),
            (None, Some(dn)) => r0.iter().zip(&dn).map(|(c, d)| (c - d) / h).collect(),
            (None, None) => return None,
        };
        for (row, v) in col.into_iter().enumerate() {
            jac[row][j] = v;
        }
    }
    Some(jac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximant::standard_schedule;
    use crate::rational::{int, rat};

    fn case(small: &[f64], large_amp: Option<f64>, total: Rational) -> AsymptoticCase {
        AsymptoticCase {
            small_amp: 1.0,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: small.iter().enumerate().map(|(i, v)| SeriesTerm::new(int(i as i64 + 1), *v)).collect(),
            large_amp,
            large_pow: total,
            large_coeffs: Vec::new(),
            variable_note: String::new(),
        }
    }

    #[test]
    fn k1_small_only() {
        let beta = rat(-1, 2);
        let spec = NestSpec::new(vec![int(1)], vec![beta]).unwrap();
        let r = solve_small_only(&case(&[0.3], None, beta), &spec).unwrap();
        assert!((r.params[0] - 0.3 / -0.5).abs() < 1e-14);
    }

    #[test]
    fn k1_amplitude() {
        let spec = NestSpec::new(vec![int(1)], vec![rat(1, 3)]).unwrap();
        let r = solve_with_amplitude(&case(&[], Some(2.0), rat(1, 3)), &spec).unwrap();
        assert!((r.params[0] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_pivot() {
        let spec = standard_schedule(3, int(-1), int(1), int(-1)).unwrap();
        let err = solve_small_only(&case(&[0.1, 0.2, 0.3], None, int(-1)), &spec).unwrap_err();
        assert!(matches!(err, ApproxError::DegeneratePivot { order: 1, .. }));
    }

    #[test]
    fn two_point_matches_sequential_plus_amplitude() {
        let spec = standard_schedule(3, int(1), int(1), int(-1)).unwrap();
        let c = case(&[-0.4, 0.1], Some(0.8), int(-1));
        let closed = solve_with_amplitude(&c, &spec).unwrap();
        let mut conds = c.small_conditions();
        conds.push(c.amplitude_condition().unwrap());
        let newton = solve_two_point(&spec, &conds).unwrap();
        for (a, b) in closed.params.iter().zip(&newton.params) {
            assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{:?} vs {:?}", closed.params, newton.params);
        }
    }

    #[test]
    fn power_mismatch_detected() {
        let spec = standard_schedule(2, int(1), int(1), int(-1)).unwrap();
        let err = solve_with_amplitude(&case(&[0.1], Some(1.0), int(-2)), &spec).unwrap_err();
        assert!(matches!(err, ApproxError::PowerMismatch { .. }));
    }
}
