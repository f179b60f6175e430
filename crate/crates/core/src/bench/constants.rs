//! Printed constants used by the case registry, each with the text it was
//! read from.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cited {
    pub name: &'static str,
    pub value: f64,
    pub citation: &'static str,
}

const fn cited(name: &'static str, value: f64, citation: &'static str) -> Cited {
    Cited { name, value, citation }
}

pub const DEBYE_C3: Cited = cited("debye C3", 19.481818, "Debye function, large x: C_3 = pi^4/5 = 19.481818");

pub const PHI4_C0: Cited = cited("phi4 c0", 1.022765, "zero-dimensional phi^4, strong coupling: 1.022765 x^(-1/4)");
pub const PHI4_C1: Cited = cited("phi4 c1", -0.345684, "zero-dimensional phi^4, strong coupling: -0.345684 x^(-3/4)");
pub const PHI4_C2: Cited = cited("phi4 c2", 0.127846, "zero-dimensional phi^4, strong coupling: 0.127846 x^(-5/4)");

pub const GAS1D_C: Cited = cited("1D gas C", -0.027416, "1D electron gas, high density: C = -pi^2/360 = -0.027416");
pub const GAS1D_SLOPE: Cited = cited("1D gas slope", 0.00845, "1D electron gas, high density: C + 0.00845 r_s");
pub const GAS1D_B1: Cited = cited("1D gas b1", -0.168939, "1D electron gas, low density: b_1 = -(ln sqrt(2 pi) - 3/4) = -0.168939");
pub const GAS1D_B2: Cited = cited("1D gas b2", 0.359933, "1D electron gas, low density: b_2 = 0.359933");

pub const GAS2D_B1: Cited = cited("2D gas b1", -0.472189, "2D electron gas, low density: b_1 = -0.472189");
pub const GAS2D_B2: Cited = cited("2D gas b2", 0.4964, "2D electron gas, low density: b_2 = 0.4964");
pub const GAS2D_B3: Cited = cited("2D gas b3", 0.5297, "2D electron gas, low density: b_3 = 0.5297");
pub const GAS2D_C0: Cited = cited("2D gas c0", -0.192495, "2D electron gas, high density: c_0 = -0.192495");
pub const GAS2D_C1P: Cited = cited("2D gas c1'", -0.0863136, "2D electron gas, high density: c_1' = -0.0863136");

pub const CATALAN: Cited = cited("Catalan G", 0.91596559, "harmonium: G = sum (-1)^n/(2n+1)^2 = 0.91596559");
pub const HARMONIUM_C0: Cited = cited("harmonium c0", 1.19055, "harmonium, small omega: c_0 = 3/2^(4/3) = 1.19055");
pub const HARMONIUM_C1: Cited = cited("harmonium c1", 2.36603, "harmonium, small omega: c_1 = (3 + sqrt 3)/2 = 2.36603");
pub const HARMONIUM_C2: Cited = cited("harmonium c2", 0.122492, "harmonium, small omega: c_2 = (7/36) 2^(-2/3) = 0.122492");
pub const HARMONIUM_B0: Cited = cited("harmonium b0", 3.0, "harmonium, large omega: b_0 = 3");
pub const HARMONIUM_B1: Cited = cited("harmonium b1", 0.797885, "harmonium, large omega: b_1 = sqrt(2/pi) = 0.797885");
pub const HARMONIUM_B2: Cited = cited("harmonium b2", -0.077891, "harmonium, large omega: b_2 = -(2/pi)(1 - pi/2 + ln 2) = -0.077891");
pub const HARMONIUM_B3: Cited = cited("harmonium b3", 0.0112528, "harmonium, large omega: b_3 = (2/pi)^(3/2)[...] = 0.0112528");

pub const SPHERIUM_C0: Cited = cited("spherium c0", -0.22741128, "spherium, small radius: c_0 = 4 ln 2 - 3 = -0.22741128");
pub const SPHERIUM_C1: Cited = cited("spherium c1", 0.11773689, "spherium, small radius: c_1 = 8 (ln 2)^2 - 40 ln 2 + 24 = 0.11773689");
pub const SPHERIUM_C2: Cited = cited("spherium c2", -0.05027560, "spherium, small radius: c_2 = -0.05027560");
pub const SPHERIUM_C3: Cited = cited("spherium c3", 0.01395783, "spherium, small radius: c_3 = 0.01395783");

/// All registered constants.
pub fn all() -> Vec<Cited> {
    vec![
        DEBYE_C3, PHI4_C0, PHI4_C1, PHI4_C2, GAS1D_C, GAS1D_SLOPE, GAS1D_B1, GAS1D_B2, GAS2D_B1, GAS2D_B2,
        GAS2D_B3, GAS2D_C0, GAS2D_C1P, CATALAN, HARMONIUM_C0, HARMONIUM_C1, HARMONIUM_C2, HARMONIUM_B0,
        HARMONIUM_B1, HARMONIUM_B2, HARMONIUM_B3, SPHERIUM_C0, SPHERIUM_C1, SPHERIUM_C2, SPHERIUM_C3,
    ]
}

/// Mixed absolute/relative tolerance of the registry self-test.
pub const SELF_TEST_TOL: f64 = 1e-5;

/// Closed forms of the constants that have one, as `(constant, recomputed)`.
pub fn derivable() -> Vec<(Cited, f64)> {
    let g = catalan();
    let b3 = (2.0 / PI).powf(1.5)
        * (2.0 - 2.0 * g - 1.5 * PI + (PI + 3.0) * LN_2 + 1.5 * LN_2 * LN_2 - PI * PI / 24.0);
    vec![
        (DEBYE_C3, PI.powi(4) / 5.0),
        (GAS1D_C, -PI * PI / 360.0),
        (GAS1D_B1, -((2.0 * PI).sqrt().ln() - 0.75)),
        (CATALAN, g),
        (HARMONIUM_C0, 3.0 / 2f64.powf(4.0 / 3.0)),
        (HARMONIUM_C1, 0.5 * (3.0 + 3f64.sqrt())),
        (HARMONIUM_C2, 7.0 / 36.0 * 2f64.powf(-2.0 / 3.0)),
        (HARMONIUM_B1, (2.0 / PI).sqrt()),
        (HARMONIUM_B2, -(2.0 / PI) * (1.0 - PI / 2.0 + LN_2)),
        (HARMONIUM_B3, b3),
        (SPHERIUM_C0, 4.0 * LN_2 - 3.0),
        (SPHERIUM_C1, 8.0 * LN_2 * LN_2 - 40.0 * LN_2 + 24.0),
    ]
}

/// Catalan's constant from its alternating series, averaging the last two
/// partial sums.
pub fn catalan() -> f64 {
    let terms = 2000;
    let mut s = 0.0;
    let mut prev = 0.0;
    for n in 0..terms {
        prev = s;
        let t = 1.0 / ((2 * n + 1) as f64).powi(2);
        s += if n % 2 == 0 { t } else { -t };
    }
    0.5 * (s + prev)
}

/// The exact-form values of the constants that have them, for building
/// cases at full precision.
pub mod exact {
    use super::*;

    pub fn harmonium_c0() -> f64 {
        3.0 / 2f64.powf(4.0 / 3.0)
    }
    pub fn harmonium_c1() -> f64 {
        0.5 * (3.0 + 3f64.sqrt())
    }
    pub fn harmonium_c2() -> f64 {
        7.0 / 36.0 * 2f64.powf(-2.0 / 3.0)
    }
    pub fn harmonium_b1() -> f64 {
        (2.0 / PI).sqrt()
    }
    pub fn harmonium_b2() -> f64 {
        -(2.0 / PI) * (1.0 - PI / 2.0 + LN_2)
    }
    /// Uses the printed Catalan constant.
    pub fn harmonium_b3() -> f64 {
        let g = CATALAN.value;
        (2.0 / PI).powf(1.5) * (2.0 - 2.0 * g - 1.5 * PI + (PI + 3.0) * LN_2 + 1.5 * LN_2 * LN_2 - PI * PI / 24.0)
    }
    pub fn spherium_c0() -> f64 {
        4.0 * LN_2 - 3.0
    }
    pub fn spherium_c1() -> f64 {
        8.0 * LN_2 * LN_2 - 40.0 * LN_2 + 24.0
    }
    pub fn gas1d_c() -> f64 {
        -PI * PI / 360.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivable_constants_match_printed_values() {
        for (c, v) in derivable() {
            assert!((c.value - v).abs() <= SELF_TEST_TOL * v.abs().max(1.0), "{}: printed {} recomputed {v}", c.name, c.value);
        }
    }

    #[test]
    fn every_constant_is_cited() {
        for c in all() {
            assert!(!c.citation.is_empty(), "{}", c.name);
            assert!(c.value.is_finite());
        }
    }

    #[test]
    fn catalan_series() {
        assert!((catalan() - 0.915_965_594_177_219).abs() < 1e-9);
    }
}
