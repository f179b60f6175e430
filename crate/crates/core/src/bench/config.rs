//! Case files: flat `key = value` pairs in `[case]`, `[schedule]`, `[mode]`
//! and `[scan]` sections.
//!
//! ```text
//! [case]
//! name = fermi_dirac_k5
//! var_power = 1
//! small_amp = 0.6931471805599453
//! small_pow = 0
//! small_step = 1
//! small_coeffs = 0.7213475204444817, 0.18033688011112042, 0, -0.007514036671296685
//! large_amp = 1
//! large_pow = 1
//! oracle = fermi_dirac0
//!
//! [schedule]
//! k = 5
//! sigma = 1
//! step = 1
//! total_pow = 1
//!
//! [mode]
//! kind = amplitude
//! ```
//!
//! Numbers are decimals or `p/q`; exponents must be exact (`p/q`, an
//! integer or a finite decimal). Lines starting with `#` are comments.
//! `large_coeffs` holds `offset:value` or `offset:value:log` items. Two-point
//! conditions are `;`-separated `zero:exp:target`, `inf:offset:target` or
//! `inflog:offset:target` items. An explicit nest replaces `k, sigma, step`
//! by `term_exps`, `level_pows`, optional `log_slots` (`level:q` items) and
//! `prefactor_amp`, `prefactor_pow`.

use std::collections::BTreeMap;
use std::path::Path;

use super::registry::{CaseDescriptor, Mode, Oracle, Schedule};
use super::BenchError;
use crate::approximant::{AsymptoticCase, MatchCondition, NestSpec, SeriesTerm};
use crate::oracles::{ScanGrid, Spacing};
use crate::rational::{self, int, Rational};

const SECTIONS: [(&str, &[&str]); 4] = [
    (
        "case",
        &[
            "name",
            "title",
            "var_power",
            "small_amp",
            "small_pow",
            "small_step",
            "small_coeffs",
            "large_amp",
            "large_pow",
            "large_coeffs",
            "offset_amp",
            "offset_pow",
            "oracle",
            "expected_params",
            "expected_failure",
        ],
    ),
    (
        "schedule",
        &["k", "sigma", "step", "total_pow", "term_exps", "level_pows", "log_slots", "prefactor_amp", "prefactor_pow"],
    ),
    ("mode", &["kind", "conditions"]),
    ("scan", &["lo", "hi", "points", "spacing"]),
];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    col: usize,
}

type Sections = BTreeMap<String, BTreeMap<String, Entry>>;

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> BenchError {
    BenchError::Parse { line, col, message: message.into() }
}

fn invalid(key: &str, message: impl Into<String>) -> BenchError {
    BenchError::Validation { key: key.into(), message: message.into() }
}

fn lex(text: &str) -> Result<Sections, BenchError> {
    let mut out = Sections::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let indent = raw.len() - raw.trim_start().len();
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, indent + body.len(), "expected ']' to close the section header"))?
                .trim();
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(invalid(&format!("[{name}]"), "unknown section"));
            }
            if out.contains_key(name) {
                return Err(parse_err(line, indent + 1, format!("section [{name}] appears twice")));
            }
            out.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let eq = body.find('=').ok_or_else(|| parse_err(line, indent + 1, "expected 'key = value'"))?;
        let key = body[..eq].trim();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(parse_err(line, indent + 1, format!("malformed key {key:?}")));
        }
        let section = current.as_ref().ok_or_else(|| parse_err(line, indent + 1, "key outside of any section"))?;
        let allowed = SECTIONS.iter().find(|(s, _)| s == section).map(|(_, k)| *k).unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(invalid(key, format!("unknown key in [{section}]")));
        }
        let after = &body[eq + 1..];
        let value = after.trim();
        let col = indent + eq + 2 + (after.len() - after.trim_start().len());
        let map = out.get_mut(section).expect("section exists");
        if map.contains_key(key) {
            return Err(parse_err(line, indent + 1, format!("duplicate key {key}")));
        }
        map.insert(key.to_string(), Entry { value: value.to_string(), line, col });
    }
    Ok(out)
}

struct Reader<'a> {
    sections: &'a Sections,
}

impl<'a> Reader<'a> {
    fn get(&self, section: &str, key: &str) -> Option<&'a Entry> {
        self.sections.get(section).and_then(|m| m.get(key))
    }

    fn require(&self, section: &str, key: &str) -> Result<&'a Entry, BenchError> {
        self.get(section, key).ok_or_else(|| invalid(key, format!("missing in [{section}]")))
    }

    fn text(&self, section: &str, key: &str) -> Result<Option<String>, BenchError> {
        Ok(self.get(section, key).map(|e| e.value.clone()))
    }

    fn number(&self, section: &str, key: &str) -> Result<Option<f64>, BenchError> {
        self.get(section, key).map(|e| number_at(&e.value, e.line, e.col)).transpose()
    }

    fn exponent(&self, section: &str, key: &str) -> Result<Option<Rational>, BenchError> {
        self.get(section, key).map(|e| exponent_at(&e.value, e.line, e.col)).transpose()
    }

    fn req_number(&self, section: &str, key: &str) -> Result<f64, BenchError> {
        let e = self.require(section, key)?;
        number_at(&e.value, e.line, e.col)
    }

    fn req_exponent(&self, section: &str, key: &str) -> Result<Rational, BenchError> {
        let e = self.require(section, key)?;
        exponent_at(&e.value, e.line, e.col)
    }

    /// Splits a list value, keeping the column of every item.
    fn items(&self, section: &str, key: &str, sep: char) -> Option<Vec<(String, usize, usize)>> {
        let e = self.get(section, key)?;
        let mut out = Vec::new();
        let mut offset = 0;
        for part in e.value.split(sep) {
            let lead = part.len() - part.trim_start().len();
            if !part.trim().is_empty() {
                out.push((part.trim().to_string(), e.line, e.col + offset + lead));
            }
            offset += part.len() + 1;
        }
        Some(out)
    }
}

fn number_at(s: &str, line: usize, col: usize) -> Result<f64, BenchError> {
    let v = if s.contains('/') {
        rational::parse_rational(s).map(rational::to_f64)
    } else {
        s.parse::<f64>().ok()
    };
    v.filter(|x| x.is_finite()).ok_or_else(|| parse_err(line, col, format!("expected a number, found {s:?}")))
}

fn exponent_at(s: &str, line: usize, col: usize) -> Result<Rational, BenchError> {
    rational::parse_rational(s).ok_or_else(|| parse_err(line, col, format!("expected an exact exponent, found {s:?}")))
}

/// Parses and validates a case file.
pub fn parse_config(text: &str) -> Result<CaseDescriptor, BenchError> {
    let sections = lex(text)?;
    let r = Reader { sections: &sections };

    let name = r.require("case", "name")?.value.clone();
    if name.is_empty() || !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
        return Err(invalid("name", "must be a nonempty identifier"));
    }
    let var_power = r.req_exponent("case", "var_power")?;
    if var_power == int(0) {
        return Err(invalid("var_power", "must be nonzero"));
    }
    let small_step = r.exponent("case", "small_step")?.unwrap_or(int(1));
    if small_step <= int(0) {
        return Err(invalid("small_step", "must be positive"));
    }
    let small_coeffs = match r.items("case", "small_coeffs", ',') {
        Some(items) => items
            .iter()
            .enumerate()
            .map(|(i, (s, line, col))| Ok(SeriesTerm::new(small_step * int(i as i64 + 1), number_at(s, *line, *col)?)))
            .collect::<Result<Vec<_>, BenchError>>()?,
        None => Vec::new(),
    };
    let large_coeffs = match r.items("case", "large_coeffs", ',') {
        Some(items) => items
            .iter()
            .map(|(s, line, col)| {
                let parts: Vec<&str> = s.split(':').map(str::trim).collect();
                match parts.as_slice() {
                    [e, v] => Ok(SeriesTerm::new(exponent_at(e, *line, *col)?, number_at(v, *line, *col)?)),
                    [e, v, "log"] => Ok(SeriesTerm::log(exponent_at(e, *line, *col)?, number_at(v, *line, *col)?)),
                    _ => Err(parse_err(*line, *col, format!("expected offset:value[:log], found {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>, BenchError>>()?,
        None => Vec::new(),
    };
    let case = AsymptoticCase {
        small_amp: r.req_number("case", "small_amp")?,
        small_pow: r.req_exponent("case", "small_pow")?,
        small_step,
        small_coeffs,
        large_amp: r.number("case", "large_amp")?,
        large_pow: r.req_exponent("case", "large_pow")?,
        large_coeffs,
        variable_note: format!("u = x^({var_power})"),
    };
    case.validate().map_err(|e| invalid("small_coeffs", e.to_string()))?;

    let schedule = if r.get("schedule", "term_exps").is_some() {
        explicit_schedule(&r)?
    } else {
        let k_entry = r.require("schedule", "k")?;
        let k: usize = k_entry
            .value
            .parse()
            .map_err(|_| parse_err(k_entry.line, k_entry.col, format!("expected a depth, found {:?}", k_entry.value)))?;
        if k == 0 {
            return Err(invalid("k", "nest depth must be at least 1"));
        }
        Schedule::Standard {
            k,
            sigma: r.exponent("schedule", "sigma")?.unwrap_or(int(1)),
            step: r.exponent("schedule", "step")?.unwrap_or(int(1)),
            total_pow: r.req_exponent("schedule", "total_pow")?,
        }
    };

    let offset = match (r.number("case", "offset_amp")?, r.exponent("case", "offset_pow")?) {
        (Some(a), Some(p)) => Some((a, p)),
        (None, None) => None,
        (Some(_), None) => return Err(invalid("offset_pow", "offset_amp needs offset_pow")),
        (None, Some(_)) => return Err(invalid("offset_amp", "offset_pow needs offset_amp")),
    };

    let kind = r.require("mode", "kind")?;
    let mode = match kind.value.as_str() {
        "small_only" => Mode::SmallOnly,
        "amplitude" => {
            if case.large_amp.is_none() {
                return Err(invalid("large_amp", "amplitude mode needs the large amplitude"));
            }
            Mode::Amplitude
        }
        "two_point" => Mode::TwoPoint(conditions(&r)?),
        other => return Err(invalid("kind", format!("unknown mode {other:?}"))),
    };
    if !matches!(mode, Mode::TwoPoint(_)) && r.get("mode", "conditions").is_some() {
        return Err(invalid("conditions", "only used by two_point mode"));
    }

    let oracle = match r.text("case", "oracle")? {
        Some(s) => Some(Oracle::from_name(&s).ok_or_else(|| invalid("oracle", format!("unknown oracle {s:?}")))?),
        None => None,
    };
    let expected_params = match r.items("case", "expected_params", ',') {
        Some(items) => Some(
            items.iter().map(|(s, line, col)| number_at(s, *line, *col)).collect::<Result<Vec<_>, BenchError>>()?,
        ),
        None => None,
    };

    let scan = if sections.contains_key("scan") {
        let points = match r.get("scan", "points") {
            Some(e) => e
                .value
                .parse::<usize>()
                .map_err(|_| parse_err(e.line, e.col, format!("expected a point count, found {:?}", e.value)))?,
            None => crate::oracles::scan::DEFAULT_POINTS,
        };
        let spacing = match r.text("scan", "spacing")?.as_deref() {
            None | Some("log") => Spacing::Log,
            Some("linear") => Spacing::Linear,
            Some(other) => return Err(invalid("spacing", format!("unknown spacing {other:?}"))),
        };
        let (lo, hi) = (r.req_number("scan", "lo")?, r.req_number("scan", "hi")?);
        if !(lo < hi) || (spacing == Spacing::Log && lo <= 0.0) {
            return Err(invalid("lo", format!("bad scan range [{lo}, {hi}]")));
        }
        Some(ScanGrid { lo, hi, n: points, spacing })
    } else {
        None
    };

    let d = CaseDescriptor {
        title: r.text("case", "title")?.unwrap_or_else(|| name.clone()),
        name,
        var_power,
        case,
        schedule,
        offset,
        mode,
        expected_params,
        expected_failure: r.text("case", "expected_failure")?,
        oracle,
        scan,
        baselines: Vec::new(),
    };
    check_consistency(&d)?;
    Ok(d)
}

fn explicit_schedule(r: &Reader) -> Result<Schedule, BenchError> {
    let list = |key: &str| -> Result<Vec<Rational>, BenchError> {
        r.items("schedule", key, ',')
            .ok_or_else(|| invalid(key, "missing in [schedule]"))?
            .iter()
            .map(|(s, line, col)| exponent_at(s, *line, *col))
            .collect()
    };
    let mut spec = NestSpec::new(list("term_exps")?, list("level_pows")?).map_err(|e| invalid("level_pows", e.to_string()))?;
    for (s, line, col) in r.items("schedule", "log_slots", ',').unwrap_or_default() {
        let (level, q) = s.split_once(':').ok_or_else(|| parse_err(line, col, "expected level:q"))?;
        let level: usize = level.trim().parse().map_err(|_| parse_err(line, col, "expected a level index"))?;
        spec = spec.with_log_slot(level, exponent_at(q.trim(), line, col)?).map_err(|e| invalid("log_slots", e.to_string()))?;
    }
    let amp = r.number("schedule", "prefactor_amp")?.unwrap_or(1.0);
    let pow = r.exponent("schedule", "prefactor_pow")?.unwrap_or(int(0));
    Ok(Schedule::Explicit(spec.with_prefactor(amp, pow)))
}

fn conditions(r: &Reader) -> Result<Vec<MatchCondition>, BenchError> {
    let items = r.items("mode", "conditions", ';').ok_or_else(|| invalid("conditions", "two_point mode needs conditions"))?;
    items
        .iter()
        .map(|(s, line, col)| {
            let parts: Vec<&str> = s.split(':').map(str::trim).collect();
            let [side, e, t] = parts.as_slice() else {
                return Err(parse_err(*line, *col, format!("expected side:exponent:target, found {s:?}")));
            };
            let (e, t) = (exponent_at(e, *line, *col)?, number_at(t, *line, *col)?);
            match *side {
                "zero" => Ok(MatchCondition::zero(e, t)),
                "inf" => Ok(MatchCondition::infinity(e, 0, t)),
                "inflog" => Ok(MatchCondition::infinity(e, 1, t)),
                other => Err(parse_err(*line, *col, format!("unknown side {other:?}"))),
            }
        })
        .collect()
}

fn check_consistency(d: &CaseDescriptor) -> Result<(), BenchError> {
    if let Schedule::Standard { total_pow, .. } = d.schedule {
        if total_pow != d.case.total_pow() {
            return Err(invalid(
                "total_pow",
                format!(
                    "power mismatch: schedule gives {total_pow}, expansions give {} - {} = {}",
                    d.case.large_pow,
                    d.case.small_pow,
                    d.case.total_pow()
                ),
            ));
        }
    }
    if let Ok(spec) = d.nest_spec() {
        let expected = d.case.large_pow - d.case.small_pow + spec.prefactor_pow();
        spec.check_large_power(expected).map_err(|e| invalid("level_pows", format!("power mismatch: {e}")))?;
    }
    if let Some(p) = &d.expected_params {
        if p.len() != d.k() {
            return Err(invalid("expected_params", format!("{} values for a nest of depth {}", p.len(), d.k())));
        }
    }
    if let Mode::TwoPoint(c) = &d.mode {
        if c.len() != d.k() {
            return Err(invalid("conditions", format!("{} conditions for a nest of depth {}", c.len(), d.k())));
        }
    }
    Ok(())
}

/// The Fermi-Dirac case as a case file.
pub const FERMI_DIRAC_CASE: &str = include_str!("../../cases/fermi_dirac.case");

pub fn load_config(path: &Path) -> Result<CaseDescriptor, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[case]\nname = demo\nvar_power = 1\nsmall_amp = 1\nsmall_pow = 0\nsmall_coeffs = 1/2, 1/8\nlarge_amp = 1\nlarge_pow = 1\n\n[schedule]\nk = 3\ntotal_pow = 1\n\n[mode]\nkind = amplitude\n";

    #[test]
    fn bundled_fermi_dirac_file_matches_registry() {
        let d = parse_config(FERMI_DIRAC_CASE).unwrap();
        let r = crate::bench::registry::fermi_dirac_k5();
        assert_eq!(d.name, r.name);
        assert_eq!(d.schedule, r.schedule);
        assert_eq!(d.mode, r.mode);
        assert_eq!(d.oracle, r.oracle);
        assert_eq!(d.scan, r.scan);
        assert_eq!(d.expected_params, r.expected_params);
        for (a, b) in d.case.small_coeffs.iter().zip(&r.case.small_coeffs) {
            assert_eq!(a.exponent, b.exponent);
            assert!((a.value - b.value).abs() < 1e-15);
        }
    }

    #[test]
    fn minimal_file() {
        let d = parse_config(MINIMAL).unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(d.case.small_coeffs[1].value, 0.125);
        assert_eq!(d.mode, Mode::Amplitude);
        assert!(d.scan.is_none());
    }

    #[test]
    fn unknown_key_is_named() {
        let text = MINIMAL.replace("[schedule]\n", "[schedule]\nstepp = 1\n");
        match parse_config(&text) {
            Err(BenchError::Validation { key, .. }) => assert_eq!(key, "stepp"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn power_mismatch() {
        let text = MINIMAL.replace("total_pow = 1", "total_pow = 2");
        match parse_config(&text) {
            Err(BenchError::Validation { key, message }) => {
                assert_eq!(key, "total_pow");
                assert!(message.contains("power mismatch"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let text = MINIMAL.replace("small_amp = 1", "small_amp = one");
        match parse_config(&text) {
            Err(BenchError::Parse { line, col, .. }) => assert_eq!((line, col), (4, 13)),
            other => panic!("{other:?}"),
        }
        let text = MINIMAL.replace("small_coeffs = 1/2, 1/8", "small_coeffs = 1/2, x");
        match parse_config(&text) {
            Err(BenchError::Parse { line, col, .. }) => assert_eq!((line, col), (6, 21)),
            other => panic!("{other:?}"),
        }
        match parse_config("[case\n") {
            Err(BenchError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_config("name = x\n") {
            Err(BenchError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_section() {
        let text = format!("{MINIMAL}[plot]\n");
        assert!(matches!(parse_config(&text), Err(BenchError::Validation { key, .. }) if key == "[plot]"));
    }

    #[test]
    fn exponents_must_be_exact() {
        let text = MINIMAL.replace("small_pow = 0", "small_pow = 1e-3");
        assert!(matches!(parse_config(&text), Err(BenchError::Parse { .. })));
    }

    #[test]
    fn two_point_conditions() {
        let text = MINIMAL
            .replace("kind = amplitude", "kind = two_point\nconditions = zero:1:0.5; inf:0:1; inflog:1:0.25")
            .replace("large_amp = 1\n", "");
        let d = parse_config(&text).unwrap();
        let Mode::TwoPoint(c) = d.mode else { panic!() };
        assert_eq!(c[2], MatchCondition::infinity(int(1), 1, 0.25));
    }
}
