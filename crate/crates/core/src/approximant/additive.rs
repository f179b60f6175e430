use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ApproxError, Result};
use crate::rational::{self, Rational};
use crate::series::{GeneralizedSeries, SeriesError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdditiveTerm {
    pub a: f64,
    pub b: f64,
    pub n: Rational,
}

/// `sum_i A_i (1 + B_i x)^{n_i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveApproximant {
    pub terms: Vec<AdditiveTerm>,
}

impl AdditiveApproximant {
    pub fn new(terms: Vec<AdditiveTerm>) -> Self {
        AdditiveApproximant { terms }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let mut sum = 0.0;
        for (i, t) in self.terms.iter().enumerate() {
            let base = 1.0 + t.b * x;
            if !(base > 0.0) {
                return Err(ApproxError::NegativeBase { level: i + 1, u: x, base });
            }
            sum += t.a * base.powf(rational::to_f64(t.n));
        }
        Ok(sum)
    }

    /// Taylor series at `x = 0` through `x^order`.
    pub fn expand_at_zero(&self, order: usize) -> Result<GeneralizedSeries> {
        let zero = Rational::zero();
        let mut acc = GeneralizedSeries::zero(zero, Rational::from_integer(1), Rational::from_integer(order as i64))?;
        for t in &self.terms {
            let mut lin = vec![0.0; order + 1];
            lin[0] = 1.0;
            if order >= 1 {
                lin[1] = t.b;
            }
            let s = GeneralizedSeries::new(zero, Rational::from_integer(1), lin)?.powr(t.n)?;
            acc = acc.add(&s.scale(t.a))?;
        }
        Ok(acc)
    }

    /// Series in `t = 1/x` retained through `span` past the most singular
    /// power.
    pub fn expand_at_infinity(&self, span: Rational) -> Result<GeneralizedSeries> {
        let lead = self.terms.iter().map(|t| -t.n).min().ok_or_else(|| ApproxError::InvalidSpec("empty sum".into()))?;
        let through = lead + span;
        let mut acc: Option<GeneralizedSeries> = None;
        for t in &self.terms {
            if !(t.b > 0.0) {
                return Err(SeriesError::NonPositiveLead { coefficient: t.b, exponent: -t.n }.into());
            }
            let own_lead = -t.n;
            if own_lead > through {
                continue;
            }
            let m = (through - own_lead).floor().to_integer() as usize;
            let mut tail = vec![0.0; m + 1];
            tail[0] = 1.0;
            if m >= 1 {
                tail[1] = 1.0 / t.b;
            }
            let body = GeneralizedSeries::new(Rational::zero(), Rational::from_integer(1), tail)?.powr(t.n)?;
            let amp = t.a * t.b.powf(rational::to_f64(t.n));
            let s = body.scale(amp).shift(own_lead);
            acc = Some(match acc {
                None => s,
                Some(prev) => prev.add(&s)?,
            });
        }
        acc.ok_or_else(|| ApproxError::InvalidSpec("no term reaches the requested order".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn gas() -> AdditiveApproximant {
        AdditiveApproximant::new(vec![
            AdditiveTerm { a: -0.044941, b: 0.266023, n: int(-1) },
            AdditiveTerm { a: 0.017526, b: 0.133344, n: rat(-3, 2) },
        ])
    }

    #[test]
    fn single_term() {
        let a = AdditiveApproximant::new(vec![AdditiveTerm { a: 1.0, b: 1.0, n: int(1) }]);
        assert_eq!(a.evaluate(1.0).unwrap(), 2.0);
    }

    #[test]
    fn gas_limits() {
        let g = gas();
        assert!((g.evaluate(0.0).unwrap() + 0.027415).abs() < 1e-6);
        let z = g.expand_at_zero(2).unwrap();
        assert!((z.coeffs()[0] + 0.027415).abs() < 1e-6);
        let inf = g.expand_at_infinity(int(1)).unwrap();
        assert_eq!(inf.lead(), int(1));
        assert!((inf.coeff(int(1), 0).unwrap() - (-0.044941 / 0.266023)).abs() < 1e-12);
        assert!((inf.coeff(int(1), 0).unwrap() + 0.168934).abs() < 1e-5);
        assert!(inf.coeff(rat(3, 2), 0).unwrap() != 0.0);
    }

    #[test]
    fn negative_base() {
        let a = AdditiveApproximant::new(vec![AdditiveTerm { a: 1.0, b: -1.0, n: rat(1, 2) }]);
        assert!(matches!(a.evaluate(2.0), Err(ApproxError::NegativeBase { level: 1, .. })));
    }
}
