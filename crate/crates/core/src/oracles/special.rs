//! Reference functions for the registered cases.

use std::f64::consts::PI;

use num_rational::Ratio;

use super::quad::{quad_adaptive, QuadError};

/// Tolerance used by the quadrature-backed functions.
pub const ORACLE_TOL: f64 = 1e-12;

/// `(sin t - t cos t) / t^3`, with its Taylor series near zero.
fn scattering_kernel(t: f64) -> f64 {
    if t.abs() < 0.5 {
        let t2 = t * t;
        let mut sum = 0.0;
        let mut pow = 1.0;
        let mut fact = 6.0; // (2k+1)!
        for k in 1..=10 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * (2 * k) as f64 * pow / fact;
            pow *= t2;
            fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        sum
    } else {
        (t.sin() - t * t.cos()) / (t * t * t)
    }
}

/// `S(x) = int_0^x (sin t / t^3 - cos t / t^2)^2 dt`.
pub fn scattering_s(x: f64) -> Result<f64, QuadError> {
    let integrand = |t: f64| scattering_kernel(t).powi(2);
    if x.is_infinite() {
        return quad_adaptive(integrand, 0.0, f64::INFINITY, ORACLE_TOL);
    }
    if x <= 20.0 {
        quad_adaptive(integrand, 0.0, x, ORACLE_TOL)
    } else {
        let head = quad_adaptive(integrand, 0.0, 20.0, ORACLE_TOL)?;
        let tail = quad_adaptive(integrand, 20.0, x, ORACLE_TOL)?;
        Ok(head + tail)
    }
}

/// Debye function `D(3, x) = (3/x^3) int_0^x t^3/(e^t - 1) dt`.
pub fn debye3(x: f64) -> Result<f64, QuadError> {
    debye(3, x)
}

/// `D(n, x)` for integer `n >= 1`.
pub fn debye(n: u32, x: f64) -> Result<f64, QuadError> {
    let nf = n as f64;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x <= 20.0 {
        // substitute t = x s
        let v = quad_adaptive(|s| if s == 0.0 { 0.0 } else { s.powi(n as i32 - 1) * (x * s) / (x * s).exp_m1() }, 0.0, 1.0, ORACLE_TOL)?;
        Ok(nf * v)
    } else {
        let tail = quad_adaptive(|t| t.powi(n as i32) / t.exp_m1(), x, f64::INFINITY, ORACLE_TOL)?;
        let full = factorial(n) * zeta(nf + 1.0);
        Ok(nf / x.powi(n as i32) * (full - tail))
    }
}

/// `F(0, x) = ln(1 + e^x)` in overflow-safe form.
pub fn fermi_dirac0(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Fekete-Szegő bound `1 + 2 exp(-2x/(1-x))` at `x = z/(1+z)`.
pub fn fekete(z: f64) -> f64 {
    let x = z / (1.0 + z);
    1.0 + 2.0 * (-2.0 * x / (1.0 - x)).exp()
}

/// `I(x) = pi^(-1/2) int exp(-p^2 - x p^4) dp` over the real line.
pub fn phi4_i(x: f64) -> Result<f64, QuadError> {
    let half = quad_adaptive(|p| (-p * p - x * p.powi(4)).exp(), 0.0, f64::INFINITY, ORACLE_TOL)?;
    Ok(2.0 * half / PI.sqrt())
}

/// Coefficients of `1/x^(2m)` in the large-`x` expansion of [`njl_f`].
pub const NJL_LARGE: [f64; 5] = [2.0 / 3.0, -1.0 / 5.0, 3.0 / 28.0, -5.0 / 72.0, 35.0 / 704.0];

/// `f(x) = x [sqrt(1 + x^2) - x^2 ln((1 + sqrt(1 + x^2))/x)]`.
pub fn njl_f(x: f64) -> f64 {
    if x > 50.0 {
        let w = 1.0 / (x * x);
        return NJL_LARGE.iter().rev().fold(0.0, |acc, c| acc * w + c);
    }
    x * ((1.0 + x * x).sqrt() - x * x * (1.0 / x).asinh())
}

/// Fit constants `A0, B0, C0, D0, E0, F0, G0, H0` of the 2D correlation
/// energy interpolation.
pub const GORI_GIORGI: [f64; 8] = [-0.1925, 0.0863136, 0.057234, 0.003362896, 1.0022, -0.02069, 0.34, 0.01747];

/// 2D electron-gas correlation energy from the Gori-Giorgi fit.
pub fn gori_giorgi_2d(rs: f64) -> f64 {
    let [a0, b0, c0, d0, e0, f0, g0, h0] = GORI_GIORGI;
    let poly = b0 * rs + c0 * rs * rs + d0 * rs.powi(3);
    let den = e0 * rs + f0 * rs.powf(1.5) + g0 * rs * rs + h0 * rs.powi(3);
    a0 + poly * (1.0 / den).ln_1p()
}

/// Bernoulli numbers `B_0..B_n` (with `B_1 = -1/2`) as exact rationals.
pub fn bernoulli(n: usize) -> Vec<Ratio<i128>> {
    let mut b: Vec<Ratio<i128>> = Vec::with_capacity(n + 1);
    b.push(Ratio::from_integer(1));
    for m in 1..=n {
        let mut acc = Ratio::from_integer(0);
        let mut binom: i128 = 1; // C(m+1, j)
        for (j, bj) in b.iter().enumerate() {
            acc += *bj * binom;
            binom = binom * (m as i128 + 1 - j as i128) / (j as i128 + 1);
        }
        b.push(-acc / Ratio::from_integer(m as i128 + 1));
    }
    b
}

/// Taylor coefficients `[c_0, ..., c_order]` of `D(n, x)`:
/// `1 - n x / (2(n+1)) + n sum_k B_2k x^2k / ((2k + n)(2k)!)`.
///
/// Valid for `order <= 20`.
pub fn debye_small_coeffs(n: u32, order: usize) -> Vec<f64> {
    assert!(order <= 20, "Debye coefficients are tabulated through x^20");
    let b = bernoulli(order.max(1));
    let nn = n as i128;
    let mut out = vec![Ratio::from_integer(0); order + 1];
    out[0] = Ratio::from_integer(1);
    if order >= 1 {
        out[1] = Ratio::new(-nn, 2 * (nn + 1));
    }
    let mut fact: i128 = 1;
    for m in 1..=order {
        fact *= m as i128;
        if m % 2 == 0 {
            out[m] = b[m] * Ratio::new(nn, (m as i128 + nn) * fact);
        }
    }
    out.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Riemann zeta for real `s > 1` by Euler-Maclaurin summation.
pub fn zeta(s: f64) -> f64 {
    const N: usize = 12;
    let nf = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    let b = bernoulli(16);
    let mut rising = s; // s (s+1) ... (s + 2k - 2)
    let mut fact = 2.0; // (2k)!
    for k in 1..=8 {
        let b2k = *b[2 * k].numer() as f64 / *b[2 * k].denom() as f64;
        sum += b2k / fact * rising * nf.powf(-s - (2 * k - 1) as f64);
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    sum
}

/// `C_n = n Gamma(n+1) zeta(n+1)`, the large-`x` amplitude of `D(n, x)`.
pub fn debye_constant(n: u32) -> f64 {
    n as f64 * factorial(n) * zeta(n as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[1], Ratio::new(-1, 2));
        assert_eq!(b[2], Ratio::new(1, 6));
        assert_eq!(b[4], Ratio::new(-1, 30));
        assert_eq!(b[6], Ratio::new(1, 42));
        assert_eq!(b[3], Ratio::from_integer(0));
        assert_eq!(bernoulli(20)[20], Ratio::new(-174611, 330));
    }

    #[test]
    fn zeta_values() {
        assert!(rel(zeta(2.0), PI * PI / 6.0) < 1e-14);
        assert!(rel(zeta(4.0), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(debye_constant(3), PI.powi(4) / 5.0) < 1e-14);
    }

    #[test]
    fn debye_series_coefficients() {
        let c = debye_small_coeffs(3, 4);
        assert_eq!(c[1], -3.0 / 8.0);
        assert!(rel(c[2], 1.0 / 20.0) < 1e-15);
        assert_eq!(c[3], 0.0);
        assert!(rel(c[4], -1.0 / 1680.0) < 1e-15);
        // the series must track the integral at small x
        for x in [0.05f64, 0.1, 0.2] {
            let s: f64 = c.iter().enumerate().map(|(i, a)| a * x.powi(i as i32)).sum();
            assert!(rel(s, debye3(x).unwrap()) < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn debye_limits() {
        assert!((debye3(1e-6).unwrap() - 1.0).abs() < 1e-6);
        let x: f64 = 200.0;
        assert!(rel(debye3(x).unwrap() * x.powi(3), PI.powi(4) / 5.0) < 1e-12);
        let mut prev = 1.0;
        for i in 1..60 {
            let v = debye3(0.5 * i as f64).unwrap();
            assert!(v < prev);
            prev = v;
        }
        // both branches agree at the switch
        assert!(rel(debye3(20.0).unwrap(), debye3(20.0 + 1e-9).unwrap()) < 1e-9);
    }

    #[test]
    fn fermi_dirac_values() {
        assert!((fermi_dirac0(0.0) - 2f64.ln()).abs() < 1e-16);
        assert!((fermi_dirac0(800.0) - 800.0).abs() < 1e-12);
        assert!((fermi_dirac0(30.0) - 30.0 - (-30f64).exp()).abs() < 1e-12);
        assert!(rel(fermi_dirac0(-3.0), (-3f64).exp().ln_1p()) < 1e-15);
    }

    #[test]
    fn scattering_values() {
        let inf = scattering_s(f64::INFINITY).unwrap();
        assert!(rel(inf, PI / 15.0) < 1e-10);
        // printed small-x series
        let x: f64 = 0.3;
        let series = x / 9.0 - x.powi(3) / 135.0 + x.powi(5) / 2625.0 - 4.0 * x.powi(7) / 297675.0;
        assert!(rel(scattering_s(x).unwrap(), series) < 1e-9);
        let mut prev = 0.0;
        for i in 1..80 {
            let v = scattering_s(0.25 * i as f64).unwrap();
            assert!(v > prev && v < PI / 15.0);
            prev = v;
        }
        assert!(rel(scattering_s(1e4).unwrap(), PI / 15.0) < 1e-9);
    }

    #[test]
    fn phi4_values() {
        assert!((phi4_i(0.0).unwrap() - 1.0).abs() < 1e-12);
        // weak coupling: 1 - 3x/4 + 105 x^2/32
        let x = 1e-3;
        assert!((phi4_i(x).unwrap() - (1.0 - 0.75 * x + 105.0 / 32.0 * x * x)).abs() < 1e-7);
        // strong coupling: 1.022765 x^(-1/4)
        let x: f64 = 1e8;
        assert!(rel(phi4_i(x).unwrap(), 1.022765 * x.powf(-0.25)) < 1e-3);
    }

    #[test]
    fn njl_expansions() {
        for x in [1e-3f64, 1e-2, 1e-1] {
            let series = x + (0.5 - 2f64.ln() + x.ln()) * x.powi(3);
            assert!((njl_f(x) - series).abs() < 5.0 * x.powi(5) * (1.0 + x.ln().abs()), "x = {x}");
        }
        for x in [10.0, 100.0, 1000.0] {
            let series = 2.0 / 3.0 - 1.0 / (5.0 * x * x);
            assert!((njl_f(x) - series).abs() < 0.2 / x.powi(4), "x = {x}");
        }
        // closed form and large-x series agree on the switch
        let direct = |x: f64| x * ((1.0 + x * x).sqrt() - x * x * (1.0 / x).asinh());
        assert!((direct(50.0) - njl_f(50.0 + 1e-12)).abs() < 1e-11);
    }

    #[test]
    fn gori_giorgi_limits() {
        assert!((gori_giorgi_2d(1e-8) + 0.1925).abs() < 1e-5);
        let rs: f64 = 1e3;
        assert!(rel(gori_giorgi_2d(rs) * rs, -0.472189) < 0.05);
    }
}
