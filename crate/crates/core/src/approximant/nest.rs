use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ApproxError, Result};
use crate::rational::{self, int, Rational};
use crate::series::{log1p_at_infinity, GeneralizedSeries, SeriesError};

/// Monomial `amp * u^pow` added outside the nest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Offset {
    pub amp: f64,
    pub pow: Rational,
}

/// Shape of a nested root
///
/// ```text
/// f0 * u^p0 * ((...(1 + A1 u^e1)^n1 + A2 u^e2)^n2 + ... + Ak u^ek)^nk
/// ```
///
/// in the build variable `u`. A level flagged as a log slot adds
/// `Aj u^ej ln(1 + u^qj)` instead of `Aj u^ej`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestSpec {
    term_exps: Vec<Rational>,
    level_pows: Vec<Rational>,
    log_slots: Vec<Option<Rational>>,
    prefactor_amp: f64,
    prefactor_pow: Rational,
    offset: Option<Offset>,
}

/// Default nest: `e_j = j*step`, `n_j = (j + sigma)/j` for inner levels and
/// `n_k = total_pow / (k*step)`.
pub fn standard_schedule(k: usize, sigma: Rational, step: Rational, total_pow: Rational) -> Result<NestSpec> {
    if k == 0 {
        return Err(ApproxError::InvalidSpec("nest depth must be at least 1".into()));
    }
    if step <= Rational::zero() {
        return Err(ApproxError::InvalidSpec(format!("step {step} must be positive")));
    }
    if total_pow.is_zero() {
        return Err(ApproxError::ZeroOuter);
    }
    let kk = k as i64;
    let term_exps = (1..=kk).map(|j| step * int(j)).collect();
    let level_pows = (1..=kk)
        .map(|j| if j < kk { (int(j) + sigma) / int(j) } else { total_pow / (int(kk) * step) })
        .collect();
    NestSpec::new(term_exps, level_pows)
}

impl NestSpec {
    pub fn new(term_exps: Vec<Rational>, level_pows: Vec<Rational>) -> Result<Self> {
        let k = term_exps.len();
        if k == 0 || level_pows.len() != k {
            return Err(ApproxError::InvalidSpec(format!(
                "{} term exponents against {} level powers",
                k,
                level_pows.len()
            )));
        }
        if term_exps[0] <= Rational::zero() || term_exps.windows(2).any(|w| w[1] < w[0]) {
            return Err(ApproxError::InvalidSpec(format!(
                "term exponents must be positive and nondecreasing: {term_exps:?}"
            )));
        }
        if level_pows[k - 1].is_zero() {
            return Err(ApproxError::ZeroOuter);
        }
        Ok(NestSpec {
            log_slots: vec![None; k],
            term_exps,
            level_pows,
            prefactor_amp: 1.0,
            prefactor_pow: Rational::zero(),
            offset: None,
        })
    }

    /// Turns level `level` (1-based) into `A u^e ln(1 + u^q)`.
    pub fn with_log_slot(mut self, level: usize, q: Rational) -> Result<Self> {
        if level == 0 || level > self.k() {
            return Err(ApproxError::InvalidSpec(format!("log slot level {level} out of range")));
        }
        if q <= Rational::zero() {
            return Err(ApproxError::InvalidSpec(format!("log slot power {q} must be positive")));
        }
        self.log_slots[level - 1] = Some(q);
        Ok(self)
    }

    pub fn with_prefactor(mut self, amp: f64, pow: Rational) -> Self {
        self.prefactor_amp = amp;
        self.prefactor_pow = pow;
        self
    }

    pub fn with_offset(mut self, amp: f64, pow: Rational) -> Self {
        self.offset = Some(Offset { amp, pow });
        self
    }

    pub fn k(&self) -> usize {
        self.term_exps.len()
    }

    pub fn term_exps(&self) -> &[Rational] {
        &self.term_exps
    }

    pub fn level_pows(&self) -> &[Rational] {
        &self.level_pows
    }

    pub fn log_slots(&self) -> &[Option<Rational>] {
        &self.log_slots
    }

    pub fn prefactor_amp(&self) -> f64 {
        self.prefactor_amp
    }

    pub fn prefactor_pow(&self) -> Rational {
        self.prefactor_pow
    }

    pub fn offset(&self) -> Option<Offset> {
        self.offset
    }

    /// Grid of the small-variable expansion of the ratio.
    pub fn zero_step(&self) -> Rational {
        self.term_exps
            .iter()
            .chain(self.log_slots.iter().flatten())
            .fold(Rational::zero(), |g, e| rational::gcd(g, *e))
    }

    /// Power `P` with `ratio ~ u^P` as `u -> infinity`.
    ///
    /// `P_j = max(P_{j-1}, e_j) * n_j` with `P_0 = 0`; a log slot never
    /// takes over the lead.
    pub fn ratio_large_power(&self) -> Rational {
        let mut p = Rational::zero();
        for j in 0..self.k() {
            let e = self.term_exps[j];
            let dominant = if self.log_slots[j].is_some() { p } else { p.max(e) };
            p = dominant * self.level_pows[j];
        }
        p
    }

    /// Large-variable power of the whole nest including the prefactor.
    pub fn implied_large_power(&self) -> Rational {
        self.prefactor_pow + self.ratio_large_power()
    }

    pub fn check_large_power(&self, expected: Rational) -> Result<()> {
        let implied = self.implied_large_power();
        if implied != expected {
            return Err(ApproxError::PowerMismatch { implied, expected });
        }
        Ok(())
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.k() {
            return Err(ApproxError::InvalidSpec(format!(
                "{} parameters for a nest of depth {}",
                params.len(),
                self.k()
            )));
        }
        Ok(())
    }

    /// Leading coefficient of the ratio as `u -> infinity`, in closed form.
    pub fn ratio_amplitude(&self, params: &[f64]) -> Result<f64> {
        self.check_params(params)?;
        self.partial_amplitude(params, self.k())
    }

    /// Closed-form amplitude of the first `levels` levels together with
    /// their large power.
    pub(crate) fn partial_amplitude(&self, params: &[f64], levels: usize) -> Result<f64> {
        let (mut p, mut amp) = (Rational::zero(), 1.0);
        for j in 0..levels {
            let e = self.term_exps[j];
            let base = if self.log_slots[j].is_some() {
                if e >= p {
                    return Err(SeriesError::LogAtLead { exponent: -e }.into());
                }
                amp
            } else if e > p {
                params[j]
            } else if e == p {
                amp + params[j]
            } else {
                amp
            };
            let p_dom = if self.log_slots[j].is_some() { p } else { p.max(e) };
            amp = positive_power(base, self.level_pows[j], p_dom)?;
            p = p_dom * self.level_pows[j];
        }
        Ok(amp)
    }

    /// Amplitude the first `level - 1` levels contribute to the base of
    /// level `level`, or zero if the new term strictly dominates.
    pub(crate) fn inherited_amplitude(&self, params: &[f64], level: usize) -> Result<f64> {
        let prev = self.partial_large_power(level - 1);
        let e = self.term_exps[level - 1];
        if e > prev {
            Ok(0.0)
        } else if e == prev {
            self.partial_amplitude(params, level - 1)
        } else {
            Err(ApproxError::InvalidSpec(format!(
                "term u^{e} of level {level} is subdominant at infinity and cannot carry the amplitude"
            )))
        }
    }

    fn partial_large_power(&self, levels: usize) -> Rational {
        let mut p = Rational::zero();
        for j in 0..levels {
            let e = self.term_exps[j];
            let dom = if self.log_slots[j].is_some() { p } else { p.max(e) };
            p = dom * self.level_pows[j];
        }
        p
    }

    /// Ratio (prefactor divided out, offset excluded) expanded at `u = 0`
    /// through the exponent `through`.
    pub fn expand_at_zero(&self, params: &[f64], through: Rational) -> Result<GeneralizedSeries> {
        self.check_params(params)?;
        let step = self.zero_step();
        let through = if through < Rational::zero() { Rational::zero() } else { (through / step).floor() * step };
        let zero = Rational::zero();
        let mut x = GeneralizedSeries::from_terms(zero, step, through, [(zero, 1.0, 0.0)])?;
        for j in 0..self.k() {
            let (a, e) = (params[j], self.term_exps[j]);
            let mut terms = Vec::new();
            match self.log_slots[j] {
                None => terms.push((e, a, 0.0)),
                Some(q) => {
                    let mut m = 1i64;
                    while e + q * int(m) <= through {
                        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
                        terms.push((e + q * int(m), a * sign / m as f64, 0.0));
                        m += 1;
                    }
                }
            }
            let term = GeneralizedSeries::from_terms(zero, step, through, terms)?;
            x = x.add(&term)?.powr(self.level_pows[j])?;
        }
        Ok(x)
    }

    /// Ratio expanded at `u = infinity` in `t = 1/u`, with logs in `ln t`,
    /// retained through `span` past its lead.
    pub fn expand_at_infinity(&self, params: &[f64], span: Rational) -> Result<GeneralizedSeries> {
        self.check_params(params)?;
        let span = span.max(Rational::zero());
        let mut t_abs = span;
        for _ in 0..16 {
            let s = self.infinity_series(params, t_abs, span)?;
            if s.span() >= span {
                return Ok(s.truncate(s.lead() + span)?);
            }
            t_abs += span - s.span();
        }
        Err(ApproxError::InvalidSpec("infinity expansion failed to reach the requested order".into()))
    }

    /// Expansion with every exact piece retained through `t^t_abs` and each
    /// level base cut `span` past its lead.
    fn infinity_series(&self, params: &[f64], t_abs: Rational, span: Rational) -> Result<GeneralizedSeries> {
        let zero = Rational::zero();
        let mut x = GeneralizedSeries::monomial(1.0, zero, t_abs.max(zero))?;
        for j in 0..self.k() {
            let (a, e) = (params[j], self.term_exps[j]);
            let term = match self.log_slots[j] {
                None => GeneralizedSeries::monomial(a, -e, t_abs.max(-e))?,
                Some(q) => {
                    let need = ((t_abs + e) / q).ceil().to_integer().max(1) as usize;
                    log1p_at_infinity(need, q)?.scale(a).shift(-e)
                }
            };
            let base = x.add(&term)?;
            let base = match base.leading_exponent() {
                Some(lead) => base.truncate(lead + span)?,
                None => base,
            };
            x = base.powr(self.level_pows[j])?;
        }
        Ok(x)
    }

    /// Literal evaluation at `u >= 0`, innermost level first.
    pub fn evaluate(&self, params: &[f64], u: f64) -> Result<f64> {
        self.check_params(params)?;
        let mut inner = 1.0;
        for j in 0..self.k() {
            let e = rational::to_f64(self.term_exps[j]);
            let mut term = params[j] * u.powf(e);
            if let Some(q) = self.log_slots[j] {
                term *= u.powf(rational::to_f64(q)).ln_1p();
            }
            let base = inner + term;
            if !(base > 0.0) {
                return Err(ApproxError::NegativeBase { level: j + 1, u, base });
            }
            inner = base.powf(rational::to_f64(self.level_pows[j]));
        }
        let mut value = self.prefactor_amp * u.powf(rational::to_f64(self.prefactor_pow)) * inner;
        if let Some(off) = self.offset {
            value += off.amp * u.powf(rational::to_f64(off.pow));
        }
        Ok(value)
    }
}

fn positive_power(base: f64, n: Rational, exponent: Rational) -> Result<f64> {
    if !(base > 0.0) {
        return Err(SeriesError::NonPositiveLead { coefficient: base, exponent: -exponent }.into());
    }
    Ok(if n.is_integer() && n.abs() < int(64) {
        base.powi(n.to_integer() as i32)
    } else {
        base.powf(rational::to_f64(n))
    })
}

/// A nest with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootApproximant {
    pub spec: NestSpec,
    pub params: Vec<f64>,
}

impl RootApproximant {
    pub fn new(spec: NestSpec, params: Vec<f64>) -> Result<Self> {
        spec.check_params(&params)?;
        Ok(RootApproximant { spec, params })
    }

    pub fn expand_at_zero(&self, through: Rational) -> Result<GeneralizedSeries> {
        self.spec.expand_at_zero(&self.params, through)
    }

    pub fn expand_at_infinity(&self, span: Rational) -> Result<GeneralizedSeries> {
        self.spec.expand_at_infinity(&self.params, span)
    }

    /// Leading large-variable coefficient of the ratio.
    pub fn ratio_amplitude(&self) -> Result<f64> {
        self.spec.ratio_amplitude(&self.params)
    }

    /// Leading large-variable coefficient of the full nest, prefactor
    /// included and offset excluded.
    pub fn amplitude_at_infinity(&self) -> Result<f64> {
        Ok(self.spec.prefactor_amp() * self.ratio_amplitude()?)
    }

    pub fn evaluate(&self, u: f64) -> Result<f64> {
        self.spec.evaluate(&self.params, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn schedules() {
        let d = standard_schedule(5, int(1), int(1), int(-3)).unwrap();
        assert_eq!(d.level_pows(), &[int(2), rat(3, 2), rat(4, 3), rat(5, 4), rat(-3, 5)]);
        let g = standard_schedule(3, rat(1, 2), int(1), int(-1)).unwrap();
        assert_eq!(g.level_pows(), &[rat(3, 2), rat(5, 4), rat(-1, 3)]);
        let h = standard_schedule(6, rat(-1, 2), int(1), int(1)).unwrap();
        assert_eq!(h.level_pows(), &[rat(1, 2), rat(3, 4), rat(5, 6), rat(7, 8), rat(9, 10), rat(1, 6)]);
        assert_eq!(standard_schedule(3, int(1), int(1), int(0)), Err(ApproxError::ZeroOuter));
    }

    #[test]
    fn k1_expansions() {
        let spec = NestSpec::new(vec![int(1)], vec![rat(1, 3)]).unwrap();
        let a = 2.0;
        let z = spec.expand_at_zero(&[a], int(1)).unwrap();
        assert!((z.coeff(int(1), 0).unwrap() - a / 3.0).abs() < 1e-15);
        let inf = spec.expand_at_infinity(&[a], int(1)).unwrap();
        let amp = a.powf(1.0 / 3.0);
        assert_eq!(inf.lead(), rat(-1, 3));
        assert!((inf.coeff(rat(-1, 3), 0).unwrap() - amp).abs() < 1e-14);
        assert!((inf.coeff(rat(2, 3), 0).unwrap() - amp / (3.0 * a)).abs() < 1e-14);
        let unit = NestSpec::new(vec![int(1)], vec![int(2)]).unwrap();
        assert_eq!(unit.ratio_amplitude(&[1.0]).unwrap(), 1.0);
    }

    #[test]
    fn telescoped_linear_coefficient() {
        let spec = standard_schedule(5, int(1), int(1), int(-3)).unwrap();
        let params = [0.7, 0.2, 0.05, 0.01, 0.002];
        let z = spec.expand_at_zero(&params, int(1)).unwrap();
        assert!((z.coeff(int(1), 0).unwrap() + 3.0 * 0.7).abs() < 1e-14);
    }

    #[test]
    fn amplitude_matches_expansion() {
        let spec = standard_schedule(4, int(1), int(1), int(-2)).unwrap();
        let params = [0.5, 0.3, 0.2, 0.1];
        let inf = spec.expand_at_infinity(&params, int(2)).unwrap();
        let amp = spec.ratio_amplitude(&params).unwrap();
        assert_eq!(inf.lead(), int(2));
        assert!((inf.coeffs()[0] - amp).abs() < 1e-12 * amp);
    }

    #[test]
    fn evaluation_tracks_zero_series() {
        let spec = standard_schedule(3, rat(1, 2), int(1), int(-1)).unwrap();
        let params = [0.49, 0.056, 0.0043];
        let s = spec.expand_at_zero(&params, int(3)).unwrap();
        for u in [1e-3, 1e-2] {
            let exact = spec.evaluate(&params, u).unwrap();
            assert!((exact - s.eval(u)).abs() < 10.0 * u.powi(4));
        }
    }

    #[test]
    fn log_slot_at_infinity() {
        // (1 + A1 u)^2 + A2 u ln(1 + u), n2 = -1/2
        let spec = NestSpec::new(vec![int(1), int(1)], vec![int(2), rat(-1, 2)])
            .unwrap()
            .with_log_slot(2, int(1))
            .unwrap();
        let params = [1.5, 0.4];
        let inf = spec.expand_at_infinity(&params, int(1)).unwrap();
        // ratio = (A1 u)^-1 (1 + 2/(A1 u) + A2 ln u/(A1^2 u) + ...)^-1/2
        let amp = 1.0 / 1.5;
        assert_eq!(inf.lead(), int(1));
        assert!((inf.coeff(int(1), 0).unwrap() - amp).abs() < 1e-14);
        // ln u = -ln t, so the t^2 ln t coefficient is +amp * A2 / (2 A1^2)
        let l = inf.coeff(int(2), 1).unwrap();
        assert!((l - amp * 0.4 / (2.0 * 1.5 * 1.5)).abs() < 1e-14, "{l}");
        let lead_log = NestSpec::new(vec![int(1)], vec![int(-1)]).unwrap().with_log_slot(1, int(1)).unwrap();
        assert!(lead_log.expand_at_infinity(&[1.0], int(1)).is_err());
    }

    #[test]
    fn negative_base_reported() {
        let spec = NestSpec::new(vec![int(1), int(2)], vec![int(2), rat(-1, 4)]).unwrap();
        let err = spec.evaluate(&[1.0, -10.0], 1.0).unwrap_err();
        assert!(matches!(err, ApproxError::NegativeBase { level: 2, .. }));
    }

    #[test]
    fn offset_and_prefactor() {
        let spec = NestSpec::new(vec![int(1)], vec![int(-1)]).unwrap().with_prefactor(2.0, int(1)).with_offset(
            1.0,
            int(-1),
        );
        let v = spec.evaluate(&[1.0], 2.0).unwrap();
        assert!((v - (2.0 * 2.0 / 3.0 + 0.5)).abs() < 1e-15);
    }
}
