use rootapprox::bench::report::{parse_json, render_csv, render_json, SCHEMA_VERSION};
use rootapprox::bench::{emit_report, find, load_config, parse_config, registry, run_all, Format, RunOptions};

#[test]
fn every_case_runs() {
    let results: Vec<_> = run_all(&registry(), &RunOptions::default()).into_iter().map(Result::unwrap).collect();
    assert_eq!(results.len(), registry().len());
    for r in &results {
        match r.name.as_str() {
            "fekete" => assert_eq!(r.status, "open-question"),
            "scattering_k6" => assert_eq!(r.status, "param-mismatch"),
            _ => assert_eq!(r.status, "ok", "{}", r.name),
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = RunOptions::default();
    let a: Vec<_> = run_all(&registry(), &opts).into_iter().map(Result::unwrap).collect();
    let b: Vec<_> = run_all(&registry(), &opts).into_iter().map(Result::unwrap).collect();
    assert_eq!(render_csv(&a), render_csv(&b));
    assert_eq!(render_json(&a).unwrap(), render_json(&b).unwrap());
}

#[test]
fn json_report_round_trips_through_a_file() {
    let opts = RunOptions { keep_points: true, ..RunOptions::default() };
    let results: Vec<_> = run_all(&registry(), &opts).into_iter().map(Result::unwrap).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    emit_report(&results, Format::Json, &path).unwrap();
    let doc = parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.schema_version, SCHEMA_VERSION);
    assert_eq!(doc.results, results);
}

#[test]
fn case_file_on_disk_matches_registry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fd.case");
    std::fs::write(&path, rootapprox::bench::config::FERMI_DIRAC_CASE).unwrap();
    let mut loaded = load_config(&path).unwrap();
    let builtin = find("fermi_dirac_k5").unwrap();
    loaded.case.variable_note = builtin.case.variable_note.clone();
    assert_eq!(loaded.case, builtin.case);
    assert_eq!(loaded.nest_spec().unwrap(), builtin.nest_spec().unwrap());
}

#[test]
fn broken_case_file_reports_position() {
    let text = "[case]\nname = bad\nvar_power = 1\nsmall_amp = x\n";
    let err = parse_config(text).unwrap_err().to_string();
    assert!(err.starts_with("line 4"), "{err}");
}
