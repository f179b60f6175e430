//! Truncated generalized power series.
//!
//! A [`GeneralizedSeries`] stores the terms
//!
//! ```text
//! sum_{m=0..K} x^(e0 + m*h) * (c_m + l_m * ln x)
//! ```
//!
//! with an exact rational lead `e0` and step `h`, and is known exactly
//! through the exponent `e0 + K*h`. Terms beyond that are unknown; no
//! operation ever invents them. Logarithms appear at most to the first
//! power; a product that would need `ln^2 x` inside the retained range is
//! rejected with [`SeriesError::LogOverflow`].

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("product needs a ln^2 term at exponent {exponent} inside the retained order")]
    LogOverflow { exponent: Rational },
    #[error("leading coefficient {coefficient} at exponent {exponent} is not positive")]
    NonPositiveLead { coefficient: f64, exponent: Rational },
    #[error("logarithmic term occupies the leading slot at exponent {exponent}")]
    LogAtLead { exponent: Rational },
    #[error("reciprocal reframing needs a nonzero power")]
    ZeroPower,
    #[error("exponent {exponent} is not on the series grid")]
    OffGrid { exponent: Rational },
    #[error("exponent {exponent} lies beyond the truncation exponent {through}")]
    BeyondTruncation { exponent: Rational, through: Rational },
    #[error("invalid series: {0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedSeries {
    lead: Rational,
    step: Rational,
    coeffs: Vec<f64>,
    logs: Option<Vec<f64>>,
}

impl GeneralizedSeries {
    pub fn new(lead: Rational, step: Rational, coeffs: Vec<f64>) -> Result<Self> {
        Self::with_logs(lead, step, coeffs, None)
    }

    /// Builds a series with optional `ln x` coefficients. An all-zero log
    /// list is dropped.
    pub fn with_logs(
        lead: Rational,
        step: Rational,
        coeffs: Vec<f64>,
        logs: Option<Vec<f64>>,
    ) -> Result<Self> {
        if step <= Rational::zero() {
            return Err(SeriesError::Invalid(format!("step {step} must be positive")));
        }
        if coeffs.is_empty() {
            return Err(SeriesError::Invalid("series needs at least one coefficient".into()));
        }
        if let Some(l) = &logs {
            if l.len() != coeffs.len() {
                return Err(SeriesError::Invalid(format!(
                    "log list length {} differs from coefficient length {}",
                    l.len(),
                    coeffs.len()
                )));
            }
        }
        let logs = logs.filter(|l| l.iter().any(|v| *v != 0.0));
        Ok(GeneralizedSeries { lead, step, coeffs, logs })
    }

    /// All-zero series on the grid `lead + m*step` known through `through`.
    pub fn zero(lead: Rational, step: Rational, through: Rational) -> Result<Self> {
        let n = grid_len(lead, step, through)?;
        Self::new(lead, step, vec![0.0; n])
    }

    /// `c * x^exponent`, known exactly through `through >= exponent`.
    pub fn monomial(c: f64, exponent: Rational, through: Rational) -> Result<Self> {
        if through < exponent {
            return Err(SeriesError::Invalid(format!(
                "monomial at {exponent} cannot be known only through {through}"
            )));
        }
        let step = if through == exponent { Rational::one() } else { through - exponent };
        let mut coeffs = vec![0.0; if through == exponent { 1 } else { 2 }];
        coeffs[0] = c;
        Self::new(exponent, step, coeffs)
    }

    /// Builds a series from sparse `(exponent, c, l)` terms on a grid known
    /// through `through`. Terms past `through` are dropped.
    pub fn from_terms<I>(lead: Rational, step: Rational, through: Rational, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, f64, f64)>,
    {
        let mut s = Self::zero(lead, step, through)?;
        let mut logs = vec![0.0; s.coeffs.len()];
        for (e, c, l) in terms {
            if e > through {
                continue;
            }
            let m = s.slot(e).ok_or(SeriesError::OffGrid { exponent: e })?;
            s.coeffs[m] += c;
            logs[m] += l;
        }
        s.logs = Some(logs).filter(|l| l.iter().any(|v| *v != 0.0));
        Ok(s)
    }

    pub fn lead(&self) -> Rational {
        self.lead
    }

    pub fn step(&self) -> Rational {
        self.step
    }

    /// Truncation index `K`; the series holds `K + 1` grid slots.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Last exponent known exactly.
    pub fn through(&self) -> Rational {
        self.exponent_at(self.order())
    }

    /// Width of the retained window, `through - lead`.
    pub fn span(&self) -> Rational {
        self.through() - self.lead
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn logcoeffs(&self) -> Option<&[f64]> {
        self.logs.as_deref()
    }

    pub fn has_logs(&self) -> bool {
        self.logs.is_some()
    }

    pub fn exponent_at(&self, m: usize) -> Rational {
        self.lead + self.step * Rational::from_integer(m as i64)
    }

    fn log_at(&self, m: usize) -> f64 {
        self.logs.as_ref().map_or(0.0, |l| l[m])
    }

    /// Grid index of exponent `e`, if `e` sits on the retained grid.
    pub fn slot(&self, e: Rational) -> Option<usize> {
        let idx = rational::ratio_index(e - self.lead, self.step)?;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            None
        } else {
            Some(idx as usize)
        }
    }

    /// Coefficient of `x^e` (`logpow = 0`) or `x^e ln x` (`logpow = 1`).
    ///
    /// Unpopulated grid slots, including lattice points below the lead,
    /// read as zero.
    pub fn coeff(&self, e: Rational, logpow: u8) -> Result<f64> {
        if e > self.through() {
            return Err(SeriesError::BeyondTruncation { exponent: e, through: self.through() });
        }
        let idx = rational::ratio_index(e - self.lead, self.step)
            .ok_or(SeriesError::OffGrid { exponent: e })?;
        if idx < 0 {
            return Ok(0.0);
        }
        let m = idx as usize;
        Ok(match logpow {
            0 => self.coeffs[m],
            1 => self.log_at(m),
            _ => 0.0,
        })
    }

    /// Exponent of the first slot with a nonzero coefficient or log.
    pub fn leading_exponent(&self) -> Option<Rational> {
        (0..self.coeffs.len())
            .find(|&m| self.coeffs[m] != 0.0 || self.log_at(m) != 0.0)
            .map(|m| self.exponent_at(m))
    }

    /// Iterates `(exponent, c, l)` over all slots.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, f64, f64)> + '_ {
        (0..self.coeffs.len()).map(move |m| (self.exponent_at(m), self.coeffs[m], self.log_at(m)))
    }

    /// Re-expresses the series on a finer grid. The new grid must contain
    /// every current slot, and `through` may only shrink.
    pub fn regrid(&self, lead: Rational, step: Rational, through: Rational) -> Result<Self> {
        if lead > self.lead
            || rational::ratio_index(self.lead - lead, step).is_none()
            || rational::ratio_index(self.step, step).is_none()
        {
            return Err(SeriesError::Invalid(format!(
                "grid ({lead}, {step}) does not refine ({}, {})",
                self.lead, self.step
            )));
        }
        if through > self.through() {
            return Err(SeriesError::Invalid(format!(
                "cannot extend truncation from {} to {through}",
                self.through()
            )));
        }
        Self::from_terms(lead, step, through, self.terms())
    }

    /// Drops every slot past `through`, which need not sit on the grid.
    pub fn truncate(&self, through: Rational) -> Result<Self> {
        if through >= self.through() {
            return Ok(self.clone());
        }
        if through < self.lead {
            return Err(SeriesError::Invalid(format!(
                "truncation {through} lies below the lead {}",
                self.lead
            )));
        }
        let n = ((through - self.lead) / self.step).floor().to_integer() as usize + 1;
        let coeffs = self.coeffs[..n].to_vec();
        let logs = self.logs.as_ref().map(|l| l[..n].to_vec());
        Self::with_logs(self.lead, self.step, coeffs, logs)
    }

    pub fn scale(&self, factor: f64) -> Self {
        GeneralizedSeries {
            lead: self.lead,
            step: self.step,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            logs: self
                .logs
                .as_ref()
                .map(|l| l.iter().map(|v| v * factor).collect())
                .filter(|l: &Vec<f64>| l.iter().any(|v| *v != 0.0)),
        }
    }

    /// Multiplies by `x^by`.
    pub fn shift(&self, by: Rational) -> Self {
        let mut s = self.clone();
        s.lead += by;
        s
    }

    /// Multiplies every exponent by `factor > 0`, i.e. substitutes
    /// `x -> x^factor`. Log coefficients pick up the same factor.
    pub fn scale_exponents(&self, factor: Rational) -> Result<Self> {
        if factor <= Rational::zero() {
            return Err(SeriesError::Invalid(format!("exponent factor {factor} must be positive")));
        }
        let f = rational::to_f64(factor);
        Self::with_logs(
            self.lead * factor,
            self.step * factor,
            self.coeffs.clone(),
            self.logs.as_ref().map(|l| l.iter().map(|v| v * f).collect()),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = align(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        let logs = merge_logs(&a, &b, |x, y| x + y);
        Self::with_logs(a.lead, a.step, coeffs, logs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Truncated Cauchy product. The relative span of the result is the
    /// smaller of the two operand spans.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let step = rational::gcd(self.step, other.step);
        let span = self.span().min(other.span());
        let a = self.regrid(self.lead, step, self.lead + span)?;
        let b = other.regrid(other.lead, step, other.lead + span)?;
        let n = a.coeffs.len();
        let lead = a.lead + b.lead;
        let mut coeffs = vec![0.0; n];
        let mut logs = vec![0.0; n];
        let with_logs = a.logs.is_some() || b.logs.is_some();
        for i in 0..n {
            let (ci, li) = (a.coeffs[i], a.log_at(i));
            for j in 0..n - i {
                let (cj, lj) = (b.coeffs[j], b.log_at(j));
                coeffs[i + j] += ci * cj;
                if with_logs {
                    logs[i + j] += ci * lj + li * cj;
                    if li * lj != 0.0 {
                        return Err(SeriesError::LogOverflow {
                            exponent: lead + step * Rational::from_integer((i + j) as i64),
                        });
                    }
                }
            }
        }
        Self::with_logs(lead, step, coeffs, Some(logs))
    }

    /// Real power `s^p` for rational `p`.
    ///
    /// Exact-zero leading slots are skipped first. The leading coefficient
    /// must be positive unless `p` is an integer, and may not carry a log.
    pub fn powr(&self, p: Rational) -> Result<Self> {
        let integer_power = p.is_integer();
        let (norm, c0) = self.normalized(integer_power)?;
        let lead = norm.lead;
        let amp = if integer_power {
            c0.powi(p.to_integer() as i32)
        } else {
            c0.powf(rational::to_f64(p))
        };
        let body = binomial(&norm.shift(-lead), rational::to_f64(p))?;
        Ok(body.scale(amp).shift(lead * p))
    }

    /// Real power for a lead-zero series with an arbitrary `f64` exponent.
    pub fn powf(&self, p: f64) -> Result<Self> {
        let (norm, c0) = self.normalized(false)?;
        if !norm.lead.is_zero() {
            return Err(SeriesError::Invalid(format!(
                "real power of a series led by x^{} needs a rational exponent",
                norm.lead
            )));
        }
        Ok(binomial(&norm, p)?.scale(c0.powf(p)))
    }

    /// Strips exact-zero leading slots, checks the lead, and divides by the
    /// leading coefficient.
    fn normalized(&self, allow_negative: bool) -> Result<(Self, f64)> {
        let first = (0..self.coeffs.len()).find(|&m| self.coeffs[m] != 0.0 || self.log_at(m) != 0.0);
        let Some(m0) = first else {
            return Err(SeriesError::NonPositiveLead { coefficient: 0.0, exponent: self.through() });
        };
        let exponent = self.exponent_at(m0);
        if self.log_at(m0) != 0.0 {
            return Err(SeriesError::LogAtLead { exponent });
        }
        let c0 = self.coeffs[m0];
        if c0 < 0.0 && !allow_negative {
            return Err(SeriesError::NonPositiveLead { coefficient: c0, exponent });
        }
        let coeffs = self.coeffs[m0..].iter().map(|c| c / c0).collect();
        let logs = self.logs.as_ref().map(|l| l[m0..].iter().map(|v| v / c0).collect());
        Ok((Self::with_logs(exponent, self.step, coeffs, logs)?, c0))
    }

    /// Substitutes `t = 1 / x^s_pow`, so `x^e` becomes `t^(-e/s_pow)` and
    /// `ln x` becomes `-(1/s_pow) ln t`.
    ///
    /// The stored terms are treated as a finite sum; for `s_pow > 0` the slot
    /// order reverses and the last stored term becomes the lead.
    pub fn reframe_reciprocal(&self, s_pow: Rational) -> Result<Self> {
        if s_pow.is_zero() {
            return Err(SeriesError::ZeroPower);
        }
        let map = |e: Rational| -e / s_pow;
        let step = self.step / s_pow.abs();
        let log_factor = -1.0 / rational::to_f64(s_pow);
        let (lead, through) = if s_pow.is_positive() {
            (map(self.through()), map(self.lead))
        } else {
            (map(self.lead), map(self.through()))
        };
        let terms = self.terms().map(|(e, c, l)| (map(e), c, l * log_factor));
        Self::from_terms(lead, step, through, terms)
    }

    /// Partial sum at `x > 0`.
    pub fn eval(&self, x: f64) -> f64 {
        let lnx = x.ln();
        self.terms()
            .map(|(e, c, l)| {
                if c == 0.0 && l == 0.0 {
                    0.0
                } else {
                    x.powf(rational::to_f64(e)) * (c + l * lnx)
                }
            })
            .sum()
    }
}

fn grid_len(lead: Rational, step: Rational, through: Rational) -> Result<usize> {
    if step <= Rational::zero() {
        return Err(SeriesError::Invalid(format!("step {step} must be positive")));
    }
    match rational::ratio_index(through - lead, step) {
        Some(k) if k >= 0 => Ok(k as usize + 1),
        _ => Err(SeriesError::Invalid(format!(
            "truncation {through} is not on the grid ({lead}, {step})"
        ))),
    }
}

fn merge_logs(a: &GeneralizedSeries, b: &GeneralizedSeries, op: impl Fn(f64, f64) -> f64) -> Option<Vec<f64>> {
    if a.logs.is_none() && b.logs.is_none() {
        return None;
    }
    Some((0..a.coeffs.len()).map(|m| op(a.log_at(m), b.log_at(m))).collect())
}

/// `(1 + w)^p` for a normalized series `1 + w` with lead exponent zero.
fn binomial(norm: &GeneralizedSeries, p: f64) -> Result<GeneralizedSeries> {
    let mut w = norm.clone();
    w.coeffs[0] = 0.0;
    let k = w.order();
    let mut result = GeneralizedSeries::monomial(1.0, Rational::zero(), w.through())?.regrid(
        Rational::zero(),
        w.step,
        w.through(),
    )?;
    let mut term = result.clone();
    let mut binom = 1.0;
    for j in 1..=k {
        binom *= (p - (j - 1) as f64) / j as f64;
        if binom == 0.0 {
            break;
        }
        term = term.mul(&w)?;
        if term.coeffs.iter().all(|c| *c == 0.0) && term.logs.is_none() {
            break;
        }
        result = result.add(&term.scale(binom))?;
    }
    Ok(result)
}

/// Re-grids two series onto a common lead, a common step and a common
/// truncation exponent.
///
/// The step is the rational gcd of both steps and of the lead offset, so
/// every original slot lands on the shared grid. The truncation is the
/// smaller of the two.
pub fn align(a: &GeneralizedSeries, b: &GeneralizedSeries) -> Result<(GeneralizedSeries, GeneralizedSeries)> {
    let lead = a.lead.min(b.lead);
    let step = rational::gcd(rational::gcd(a.step, b.step), a.lead - b.lead);
    let through = a.through().min(b.through());
    if through < lead {
        return Err(SeriesError::Invalid(format!(
            "series truncated at {through} below the common lead {lead}"
        )));
    }
    Ok((a.regrid(lead, step, through)?, b.regrid(lead, step, through)?))
}

/// `ln(1 + x^step)` at small `x`: `sum_{m=1..K} (-1)^(m+1) x^(m*step) / m`.
pub fn log1p_series(order: usize, step: Rational) -> Result<GeneralizedSeries> {
    if order < 1 {
        return Err(SeriesError::Invalid("log1p series needs order >= 1".into()));
    }
    GeneralizedSeries::new(Rational::zero(), step, mercator(order))
}

/// `ln(1 + x^q)` at large `x`, written in `t = 1/x`:
/// `-q ln t + sum_{m=1..K} (-1)^(m+1) t^(m*q) / m`.
pub fn log1p_at_infinity(order: usize, q: Rational) -> Result<GeneralizedSeries> {
    if order < 1 {
        return Err(SeriesError::Invalid("log1p series needs order >= 1".into()));
    }
    let mut logs = vec![0.0; order + 1];
    logs[0] = -crate::rational::to_f64(q);
    GeneralizedSeries::with_logs(Rational::zero(), q, mercator(order), Some(logs))
}

fn mercator(order: usize) -> Vec<f64> {
    (0..=order)
        .map(|m| match m {
            0 => 0.0,
            m if m % 2 == 1 => 1.0 / m as f64,
            m => -1.0 / m as f64,
        })
        .collect()
}
