//! Exact rational exponents.
//!
//! Exponents, grid steps and nest powers are kept as exact rationals so
//! that products like `n_1 * n_2 * ... * n_k` telescope without drift.
//! Coefficients stay in `f64`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Canonical `num/den` with `den > 0` and `gcd(|num|, den) = 1`.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand constructor; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Largest positive rational `g` such that both `a/g` and `b/g` are integers.
///
/// `gcd(0, b) = |b|`. Used to find the least common refinement of two grids.
pub fn gcd(a: Rational, b: Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    let den = a.denom() * b.denom();
    Rational::new(num, den)
}

/// Returns `Some(n)` when `r` is an integer.
pub fn as_integer(r: Rational) -> Option<i64> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Exact quotient `a / b` as an integer, if it is one.
pub fn ratio_index(a: Rational, b: Rational) -> Option<i64> {
    if b.is_zero() {
        return None;
    }
    as_integer(a / b)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Some(int(n));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.')?;
    if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let whole: i64 = if whole.is_empty() { 0 } else { whole.parse().ok()? };
    let scale = 10_i64.checked_pow(frac.len() as u32)?;
    let frac: i64 = frac.parse().ok()?;
    let num = whole.checked_mul(scale)?.checked_add(frac)?;
    Some(Rational::new(if neg { -num } else { num }, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_mixed_steps() {
        assert_eq!(gcd(int(1), rat(1, 2)), rat(1, 2));
        assert_eq!(gcd(rat(3, 2), int(1)), rat(1, 2));
        assert_eq!(gcd(rat(2, 3), rat(1, 2)), rat(1, 6));
        assert_eq!(gcd(int(0), rat(-3, 4)), rat(3, 4));
    }

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(*r.numer(), -3);
        assert_eq!(*r.denom(), 2);
        assert_eq!(rat(2, 4) + rat(1, 4), rat(3, 4));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-1/6"), Some(rat(-1, 6)));
        assert_eq!(parse_rational("4"), Some(int(4)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational(".5"), Some(rat(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn telescoping_product_is_exact() {
        let prod = (1..5).fold(int(1), |acc, j| acc * rat(j + 1, j));
        assert_eq!(prod * rat(-3, 5), int(-3));
    }
}
