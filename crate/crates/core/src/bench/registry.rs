//! Built-in benchmark cases.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::constants::{self as k, exact};
use crate::approximant::{
    standard_schedule, ApproxError, AsymptoticCase, MatchCondition, NestSpec, SeriesTerm,
};
use crate::oracles::special;
use crate::oracles::{QuadError, ScanGrid};
use crate::pade::PadeOrder;
use crate::rational::{int, rat, Rational};
use crate::series::GeneralizedSeries;

/// Named reference function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    Scattering,
    Debye3,
    FermiDirac0,
    Fekete,
    Phi4,
    Njl,
    GoriGiorgi2d,
}

impl Oracle {
    pub const ALL: [Oracle; 7] = [
        Oracle::Scattering,
        Oracle::Debye3,
        Oracle::FermiDirac0,
        Oracle::Fekete,
        Oracle::Phi4,
        Oracle::Njl,
        Oracle::GoriGiorgi2d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Scattering => "scattering",
            Oracle::Debye3 => "debye3",
            Oracle::FermiDirac0 => "fermi_dirac0",
            Oracle::Fekete => "fekete",
            Oracle::Phi4 => "phi4",
            Oracle::Njl => "njl",
            Oracle::GoriGiorgi2d => "gori_giorgi_2d",
        }
    }

    pub fn from_name(s: &str) -> Option<Oracle> {
        Oracle::ALL.into_iter().find(|o| o.name() == s)
    }

    pub fn eval(self, x: f64) -> Result<f64, QuadError> {
        match self {
            Oracle::Scattering => special::scattering_s(x),
            Oracle::Debye3 => special::debye3(x),
            Oracle::FermiDirac0 => Ok(special::fermi_dirac0(x)),
            Oracle::Fekete => Ok(special::fekete(x)),
            Oracle::Phi4 => special::phi4_i(x),
            Oracle::Njl => Ok(special::njl_f(x)),
            Oracle::GoriGiorgi2d => Ok(special::gori_giorgi_2d(x)),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the nest is laid out.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    /// `standard_schedule(k, sigma, step, total_pow)` with the small-side
    /// amplitude and power of the case as prefactor.
    Standard { k: usize, sigma: Rational, step: Rational, total_pow: Rational },
    /// A complete nest, prefactor included.
    Explicit(NestSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    SmallOnly,
    Amplitude,
    TwoPoint(Vec<MatchCondition>),
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::SmallOnly => "small-only",
            Mode::Amplitude => "amplitude",
            Mode::TwoPoint(_) => "two-point",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PadeChoice {
    Fixed(PadeOrder),
    /// Lowest scan error among all pole-free entries with `M + N + 1 = order`.
    Best(usize),
}

/// A Padé baseline for `g(x) = f(x) / x^pre_pow`. `small` is the series of
/// `g` in `x`, `large` its series in `t = 1/x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineSpec {
    pub name: String,
    pub small: GeneralizedSeries,
    pub large: GeneralizedSeries,
    pub var_pow: Rational,
    pub pre_pow: Rational,
    pub choice: PadeChoice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseDescriptor {
    pub name: String,
    pub title: String,
    /// The build variable is `u = x^var_power`.
    pub var_power: Rational,
    pub case: AsymptoticCase,
    pub schedule: Schedule,
    /// Extra `amp * u^pow` outside the nest.
    pub offset: Option<(f64, Rational)>,
    pub mode: Mode,
    pub expected_params: Option<Vec<f64>>,
    /// Error the build is expected to stop with, by variant name.
    pub expected_failure: Option<String>,
    pub oracle: Option<Oracle>,
    pub scan: Option<ScanGrid>,
    pub baselines: Vec<BaselineSpec>,
}

impl CaseDescriptor {
    pub fn k(&self) -> usize {
        match &self.schedule {
            Schedule::Standard { k, .. } => *k,
            Schedule::Explicit(spec) => spec.k(),
        }
    }

    /// The nest this descriptor builds.
    pub fn nest_spec(&self) -> Result<NestSpec, ApproxError> {
        let spec = match &self.schedule {
            Schedule::Standard { k, sigma, step, total_pow } => {
                standard_schedule(*k, *sigma, *step, *total_pow)?
                    .with_prefactor(self.case.small_amp, self.case.small_pow)
            }
            Schedule::Explicit(spec) => spec.clone(),
        };
        Ok(match self.offset {
            Some((amp, pow)) => spec.with_offset(amp, pow),
            None => spec,
        })
    }
}

fn series(lead: Rational, step: Rational, coeffs: &[f64]) -> GeneralizedSeries {
    GeneralizedSeries::new(lead, step, coeffs.to_vec()).expect("registry series")
}

fn ratio_terms(step: Rational, coeffs: &[f64]) -> Vec<SeriesTerm> {
    coeffs.iter().enumerate().map(|(i, &c)| SeriesTerm::new(step * int(i as i64 + 1), c)).collect()
}

fn log_grid(lo: f64, hi: f64) -> Option<ScanGrid> {
    Some(ScanGrid::log(lo, hi, crate::oracles::scan::DEFAULT_POINTS))
}

/// Coefficients of `S(x) / (x/9)` in `u = x^2`.
pub const SCATTERING_RATIO: [f64; 6] = [
    -9.0 / 135.0,
    9.0 / 2625.0,
    -36.0 / 297675.0,
    18.0 / 5893965.0,
    -9.0 / 166080925.0,
    9.0 / 10672286625.0,
];

const SCATTERING_EXPECTED: [&[f64]; 4] = [
    &[0.133333, 0.012952, 0.016907],
    &[0.133333, 0.012952, 0.002757, 0.004636],
    &[0.133333, 0.012952, 0.002757, 0.000578, 0.001285],
    &[0.133333, 0.012952, 0.002757, 0.000578, 0.000137, 0.000356],
];

pub fn scattering(kk: usize) -> CaseDescriptor {
    assert!((3..=6).contains(&kk), "scattering cases cover k = 3..6");
    CaseDescriptor {
        name: format!("scattering_k{kk}"),
        title: "hard-core scattering length integral".into(),
        var_power: int(2),
        case: AsymptoticCase {
            small_amp: 1.0 / 9.0,
            small_pow: rat(1, 2),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &SCATTERING_RATIO),
            large_amp: Some(PI / 15.0),
            large_pow: int(0),
            large_coeffs: vec![],
            variable_note: "u = x^2".into(),
        },
        schedule: Schedule::Standard { k: kk, sigma: int(1), step: int(1), total_pow: rat(-1, 2) },
        offset: None,
        mode: Mode::Amplitude,
        expected_params: Some(SCATTERING_EXPECTED[kk - 3].to_vec()),
        expected_failure: None,
        oracle: Some(Oracle::Scattering),
        scan: log_grid(0.01, 100.0),
        baselines: vec![],
    }
}

pub fn debye_k5() -> CaseDescriptor {
    let a = special::debye_small_coeffs(3, 5);
    let c3 = special::debye_constant(3);
    CaseDescriptor {
        name: "debye_k5".into(),
        title: "Debye function D(3, x)".into(),
        var_power: int(1),
        case: AsymptoticCase {
            small_amp: 1.0,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &a[1..]),
            large_amp: Some(c3),
            large_pow: int(-3),
            large_coeffs: vec![],
            variable_note: "u = x".into(),
        },
        schedule: Schedule::Standard { k: 5, sigma: int(1), step: int(1), total_pow: int(-3) },
        offset: None,
        mode: Mode::Amplitude,
        expected_params: None,
        expected_failure: None,
        oracle: Some(Oracle::Debye3),
        scan: log_grid(0.01, 100.0),
        baselines: vec![BaselineSpec {
            name: "P1/4".into(),
            small: series(int(0), int(1), &a[..5]),
            large: series(int(3), int(1), &[c3]),
            var_pow: int(1),
            pre_pow: int(0),
            choice: PadeChoice::Fixed(PadeOrder::new(1, 4, 5)),
        }],
    }
}

pub fn fermi_dirac_k5() -> CaseDescriptor {
    let a = [1.0 / (2.0 * LN_2), 1.0 / (8.0 * LN_2), 0.0, -1.0 / (192.0 * LN_2)];
    CaseDescriptor {
        name: "fermi_dirac_k5".into(),
        title: "Fermi-Dirac integral F(0, x) = ln(1 + e^x)".into(),
        var_power: int(1),
        case: AsymptoticCase {
            small_amp: LN_2,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &a),
            large_amp: Some(1.0),
            large_pow: int(1),
            large_coeffs: vec![],
            variable_note: "u = x".into(),
        },
        schedule: Schedule::Standard { k: 5, sigma: int(1), step: int(1), total_pow: int(1) },
        offset: None,
        mode: Mode::Amplitude,
        expected_params: Some(vec![0.721348, 0.360674, 0.390257, 0.410334, 4.294519]),
        expected_failure: None,
        oracle: Some(Oracle::FermiDirac0),
        scan: log_grid(0.01, 100.0),
        baselines: vec![BaselineSpec {
            name: "P3/2".into(),
            small: series(int(0), int(1), &[LN_2, 0.5, 0.125, 0.0, -1.0 / 192.0, 0.0, 1.0 / 2880.0]),
            large: series(int(-1), int(1), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            var_pow: int(1),
            pre_pow: int(0),
            choice: PadeChoice::Fixed(PadeOrder::new(3, 2, 5)),
        }],
    }
}

/// Coefficients of `F(z) = 1 + 2 exp(-2z)` at small `z`.
pub const FEKETE_SMALL: [f64; 6] = [3.0, -4.0, 4.0, -8.0 / 3.0, 4.0 / 3.0, -8.0 / 15.0];

pub fn fekete() -> CaseDescriptor {
    CaseDescriptor {
        name: "fekete".into(),
        title: "Fekete-Szego bound in z = x/(1 - x)".into(),
        var_power: int(1),
        case: AsymptoticCase {
            small_amp: 3.0,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &FEKETE_SMALL[1..].iter().map(|c| c / 3.0).collect::<Vec<_>>()),
            large_amp: Some(1.0),
            large_pow: int(0),
            large_coeffs: vec![],
            variable_note: "u = z".into(),
        },
        schedule: Schedule::Standard { k: 3, sigma: int(1), step: int(1), total_pow: int(0) },
        offset: None,
        mode: Mode::Amplitude,
        expected_params: None,
        expected_failure: Some("ZeroOuter".into()),
        oracle: Some(Oracle::Fekete),
        scan: log_grid(0.01, 100.0),
        baselines: vec![BaselineSpec {
            name: "P2/2".into(),
            small: series(int(0), int(1), &FEKETE_SMALL),
            large: series(int(0), int(1), &[1.0, 0.0]),
            var_pow: int(1),
            pre_pow: int(0),
            choice: PadeChoice::Fixed(PadeOrder::new(2, 2, 4)),
        }],
    }
}

pub fn phi4_k3() -> CaseDescriptor {
    let (c0, c1, c2) = (k::PHI4_C0.value, k::PHI4_C1.value, k::PHI4_C2.value);
    CaseDescriptor {
        name: "phi4_k3".into(),
        title: "zero-dimensional phi^4 integral, built from strong coupling".into(),
        var_power: rat(-1, 2),
        case: AsymptoticCase {
            small_amp: c0,
            small_pow: rat(1, 2),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &[c1 / c0, c2 / c0]),
            large_amp: Some(1.0),
            large_pow: int(0),
            large_coeffs: vec![],
            variable_note: "u = x^(-1/2)".into(),
        },
        schedule: Schedule::Standard { k: 3, sigma: int(1), step: int(1), total_pow: rat(-1, 2) },
        offset: None,
        mode: Mode::Amplitude,
        expected_params: None,
        expected_failure: None,
        oracle: Some(Oracle::Phi4),
        scan: log_grid(1e-4, 1e4),
        baselines: vec![BaselineSpec {
            name: "P1/2".into(),
            small: series(int(0), int(1), &[1.0, -0.75]),
            large: series(rat(1, 4), rat(1, 2), &[c0, c1, c2]),
            var_pow: rat(1, 4),
            pre_pow: int(0),
            choice: PadeChoice::Fixed(PadeOrder::new(1, 2, 1)),
        }],
    }
}

pub fn njl_k4() -> CaseDescriptor {
    let spec = NestSpec::new(vec![int(1), int(2), int(2), int(3)], vec![int(2), rat(3, 2), int(1), rat(-1, 6)])
        .and_then(|s| s.with_log_slot(3, int(1)))
        .expect("NJL nest")
        .with_prefactor(2.0 / 3.0, int(0));
    let large = special::NJL_LARGE;
    CaseDescriptor {
        name: "njl_k4".into(),
        title: "Nambu-Jona-Lasinio mass function".into(),
        var_power: int(-2),
        case: AsymptoticCase {
            small_amp: 2.0 / 3.0,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &large[1..].iter().map(|c| c * 1.5).collect::<Vec<_>>()),
            large_amp: Some(1.0),
            large_pow: rat(-1, 2),
            large_coeffs: vec![SeriesTerm::new(int(1), 0.5 - LN_2), SeriesTerm::log(int(1), 0.5)],
            variable_note: "u = z = 1/x^2; large-side logs in ln(1/z)".into(),
        },
        schedule: Schedule::Explicit(spec),
        offset: None,
        mode: Mode::TwoPoint(vec![
            MatchCondition::zero(int(1), -0.3),
            MatchCondition::infinity(int(0), 0, 1.5),
            MatchCondition::infinity(int(1), 0, 0.5 - LN_2),
            MatchCondition::infinity(int(1), 1, 0.5),
        ]),
        expected_params: None,
        expected_failure: None,
        oracle: Some(Oracle::Njl),
        scan: log_grid(1e-3, 1e3),
        baselines: vec![BaselineSpec {
            name: "best order 4".into(),
            small: GeneralizedSeries::with_logs(int(1), int(1), vec![1.0, 0.0, 0.5 - LN_2], Some(vec![0.0, 0.0, 1.0]))
                .expect("NJL small series"),
            large: series(int(0), int(2), &large),
            var_pow: int(-1),
            pre_pow: int(0),
            choice: PadeChoice::Best(4),
        }],
    }
}

pub fn gas1d_k3() -> CaseDescriptor {
    let c = exact::gas1d_c();
    let (slope, b1, b2) = (k::GAS1D_SLOPE.value, k::GAS1D_B1.value, k::GAS1D_B2.value);
    CaseDescriptor {
        name: "gas1d_k3".into(),
        title: "1D electron gas correlation energy".into(),
        var_power: int(1),
        case: AsymptoticCase {
            small_amp: c,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: vec![SeriesTerm::new(int(1), slope / c)],
            large_amp: Some(b1),
            large_pow: int(-1),
            large_coeffs: vec![SeriesTerm::new(rat(1, 2), b2 / b1)],
            variable_note: "u = r_s".into(),
        },
        schedule: Schedule::Standard { k: 3, sigma: rat(1, 2), step: int(1), total_pow: int(-1) },
        offset: None,
        mode: Mode::TwoPoint(vec![
            MatchCondition::zero(int(1), slope / c),
            MatchCondition::infinity(int(0), 0, b1 / c),
            MatchCondition::infinity(rat(1, 2), 0, b2 / b1),
        ]),
        expected_params: Some(vec![0.493150, 0.056122, 0.004274]),
        expected_failure: None,
        oracle: None,
        scan: None,
        baselines: vec![BaselineSpec {
            name: "P1/2(sqrt r_s)".into(),
            small: series(int(0), int(1), &[c, slope]),
            large: series(int(1), rat(1, 2), &[b1, b2]),
            var_pow: rat(1, 2),
            pre_pow: int(0),
            choice: PadeChoice::Fixed(PadeOrder::new(1, 2, 2)),
        }],
    }
}

/// Nest of the 2D gas approximant in `y = r_s^(-1/2)`.
pub fn gas2d_spec() -> NestSpec {
    NestSpec::new(vec![int(1), int(2), int(2), int(3), int(4)], vec![int(2), rat(3, 2), int(1), int(1), rat(-1, 2)])
        .and_then(|s| s.with_log_slot(3, int(1)))
        .expect("2D gas nest")
        .with_prefactor(k::GAS2D_B1.value, int(2))
}

/// The four conditions the 2D gas data pin down.
pub fn gas2d_identified() -> Vec<MatchCondition> {
    let (b1, b2, b3) = (k::GAS2D_B1.value, k::GAS2D_B2.value, k::GAS2D_B3.value);
    let (c0, c1p) = (k::GAS2D_C0.value, k::GAS2D_C1P.value);
    vec![
        MatchCondition::zero(int(1), b2 / b1),
        MatchCondition::zero(int(2), b3 / b1),
        MatchCondition::infinity(int(0), 0, c0 / b1),
        MatchCondition::infinity(int(2), 1, 2.0 * c1p / c0),
    ]
}

pub fn gas2d_k5() -> CaseDescriptor {
    let (b1, b2, b3) = (k::GAS2D_B1.value, k::GAS2D_B2.value, k::GAS2D_B3.value);
    let (c0, c1p) = (k::GAS2D_C0.value, k::GAS2D_C1P.value);
    let mut conds = gas2d_identified();
    // no r_s^(1/2) correction at high density
    conds.push(MatchCondition::infinity(int(1), 0, 0.0));
    CaseDescriptor {
        name: "gas2d_k5".into(),
        title: "2D electron gas correlation energy".into(),
        var_power: rat(-1, 2),
        case: AsymptoticCase {
            small_amp: b1,
            small_pow: int(2),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &[b2 / b1, b3 / b1]),
            large_amp: Some(c0),
            large_pow: int(0),
            large_coeffs: vec![SeriesTerm::log(int(2), 2.0 * c1p / c0)],
            variable_note: "u = y = r_s^(-1/2); large-side logs in ln(1/y)".into(),
        },
        schedule: Schedule::Explicit(gas2d_spec()),
        offset: None,
        mode: Mode::TwoPoint(conds),
        expected_params: Some(vec![0.700849, 2.723702, 10.792193, -5.764339, 6.017150]),
        expected_failure: None,
        oracle: Some(Oracle::GoriGiorgi2d),
        scan: log_grid(0.01, 100.0),
        baselines: vec![],
    }
}

pub fn harmonium_k6() -> CaseDescriptor {
    let (c0, c1, c2) = (exact::harmonium_c0(), exact::harmonium_c1(), exact::harmonium_c2());
    let b0 = k::HARMONIUM_B0.value;
    let (b1, b2, b3) = (exact::harmonium_b1(), exact::harmonium_b2(), exact::harmonium_b3());
    CaseDescriptor {
        name: "harmonium_k6".into(),
        title: "harmonium ground-state energy".into(),
        var_power: rat(1, 3),
        case: AsymptoticCase {
            small_amp: c0,
            small_pow: int(2),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &[c1 / c0, c2 / c0]),
            large_amp: Some(b0),
            large_pow: int(3),
            large_coeffs: vec![
                SeriesTerm::new(rat(3, 2), b1 / b0),
                SeriesTerm::new(int(3), b2 / b0),
                SeriesTerm::new(rat(9, 2), b3 / b0),
            ],
            variable_note: "u = omega^(1/3)".into(),
        },
        schedule: Schedule::Standard { k: 6, sigma: rat(-1, 2), step: int(1), total_pow: int(1) },
        offset: None,
        mode: Mode::TwoPoint(vec![
            MatchCondition::zero(int(1), c1 / c0),
            MatchCondition::zero(int(2), c2 / c0),
            MatchCondition::infinity(int(0), 0, b0 / c0),
            MatchCondition::infinity(rat(3, 2), 0, b1 / b0),
            MatchCondition::infinity(int(3), 0, b2 / b0),
            MatchCondition::infinity(rat(9, 2), 0, b3 / b0),
        ]),
        expected_params: Some(vec![48.4532, 564.108, 1088.39, 1221.08, 796.791, 256.0]),
        expected_failure: None,
        oracle: None,
        scan: None,
        baselines: vec![BaselineSpec {
            name: "P4/1(omega^(1/3))".into(),
            small: series(rat(2, 3), rat(1, 3), &[c0, c1, c2]),
            large: series(int(-1), rat(1, 2), &[b0, b1, b2, b3]),
            var_pow: rat(1, 3),
            pre_pow: int(0),
            // degree difference 3 matches the omega^1 growth
            choice: PadeChoice::Fixed(PadeOrder::new(4, 1, 4)),
        }],
    }
}

pub fn spherium_k5() -> CaseDescriptor {
    let (c0, c1) = (exact::spherium_c0(), exact::spherium_c1());
    let (c2, c3) = (k::SPHERIUM_C2.value, k::SPHERIUM_C3.value);
    CaseDescriptor {
        name: "spherium_k5".into(),
        title: "two-electron spherium energy".into(),
        var_power: int(1),
        case: AsymptoticCase {
            small_amp: c0,
            small_pow: int(0),
            small_step: int(1),
            small_coeffs: ratio_terms(int(1), &[c1 / c0, c2 / c0, c3 / c0]),
            large_amp: Some(-0.5),
            large_pow: int(-1),
            large_coeffs: vec![SeriesTerm::new(rat(1, 2), -1.0)],
            variable_note: "u = R, with 1/R added outside the nest".into(),
        },
        schedule: Schedule::Standard { k: 5, sigma: rat(1, 2), step: int(1), total_pow: int(-1) },
        offset: Some((1.0, int(-1))),
        mode: Mode::TwoPoint(vec![
            MatchCondition::zero(int(1), c1 / c0),
            MatchCondition::zero(int(2), c2 / c0),
            MatchCondition::zero(int(3), c3 / c0),
            MatchCondition::infinity(int(0), 0, -0.5 / c0),
            MatchCondition::infinity(rat(1, 2), 0, -1.0),
        ]),
        expected_params: Some(vec![1.05188915, 0.56453530, 0.36000617, 0.12606787, 0.01946301]),
        expected_failure: None,
        oracle: None,
        scan: None,
        baselines: vec![BaselineSpec {
            name: "P5/5(sqrt R)".into(),
            small: series(int(0), int(1), &[1.0, c0, c1, c2, c3]),
            large: series(int(0), rat(1, 2), &[0.5, 0.5, -0.125, -1.0 / 128.0]),
            var_pow: rat(1, 2),
            pre_pow: int(-1),
            choice: PadeChoice::Fixed(PadeOrder::new(5, 5, 7)),
        }],
    }
}

/// Every built-in case, in a fixed order.
pub fn registry() -> Vec<CaseDescriptor> {
    let mut out: Vec<CaseDescriptor> = (3..=6).map(scattering).collect();
    out.extend([
        debye_k5(),
        fermi_dirac_k5(),
        fekete(),
        phi4_k3(),
        njl_k4(),
        gas1d_k3(),
        gas2d_k5(),
        harmonium_k6(),
        spherium_k5(),
    ]);
    out
}

pub fn find(name: &str) -> Option<CaseDescriptor> {
    registry().into_iter().find(|d| d.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let r = registry();
        let mut names: Vec<_> = r.iter().map(|d| d.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), r.len());
        assert!(r.len() >= 12);
    }

    #[test]
    fn expected_params_match_depth() {
        for d in registry() {
            if let Some(p) = &d.expected_params {
                assert_eq!(p.len(), d.k(), "{}", d.name);
            }
        }
    }

    #[test]
    fn nest_powers_agree_with_cases() {
        for d in registry() {
            match d.nest_spec() {
                Ok(spec) => {
                    let expected = d.case.large_pow - d.case.small_pow + spec.prefactor_pow();
                    assert!(spec.check_large_power(expected).is_ok(), "{}", d.name);
                }
                Err(e) => assert_eq!(d.expected_failure.as_deref(), Some("ZeroOuter"), "{}: {e}", d.name),
            }
        }
    }

    #[test]
    fn oracle_names_round_trip() {
        for o in Oracle::ALL {
            assert_eq!(Oracle::from_name(o.name()), Some(o));
        }
    }
}
