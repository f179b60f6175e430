use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rootapprox::bench::{
    self, emit_report, emit_scan, load_config, run_all, run_case, CaseDescriptor, CaseResult, Format, RunOptions,
    ScanColumns,
};
use rootapprox::oracles::ScanGrid;

#[derive(Parser)]
#[command(name = "rootapprox", version, about = "Build, scan and compare root approximants")]
struct Cli {
    /// Relative tolerance for the printed-parameter check.
    #[arg(long, global = true, default_value_t = bench::runner::DEFAULT_PARAM_TOL)]
    tol: f64,

    /// Scan grid as lo:hi:n (log spaced), replacing the case default.
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<ScanGrid>,

    /// Case file that adds a case or replaces the built-in one of the same name.
    #[arg(long, global = true)]
    config: Vec<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the available cases.
    List,
    /// Build the root approximant of a case and print its parameters.
    Build { case: String },
    /// Scan a case against its oracle.
    Scan {
        case: String,
        /// Write plot-ready columns to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Columns::Four)]
        columns: Columns,
    },
    /// Root approximant against the case's Padé baselines.
    Compare { case: String },
    /// Run cases and write a report.
    Report {
        /// Cases to run; ignored with --all.
        cases: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Columns {
    Two,
    Four,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

fn parse_grid(s: &str) -> Result<ScanGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(format!("expected lo:hi:n, got {s:?}"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    let n: usize = n.parse().map_err(|_| format!("bad point count {n:?}"))?;
    if !(lo > 0.0 && lo < hi) || n < 2 {
        return Err(format!("need 0 < lo < hi and n >= 2, got {s:?}"));
    }
    Ok(ScanGrid::log(lo, hi, n))
}

fn cases(cli: &Cli) -> Result<Vec<CaseDescriptor>> {
    let mut all = bench::registry();
    for path in &cli.config {
        let d = load_config(path).with_context(|| format!("loading {}", path.display()))?;
        match all.iter_mut().find(|c| c.name == d.name) {
            Some(slot) => *slot = d,
            None => all.push(d),
        }
    }
    Ok(all)
}

fn pick(all: &[CaseDescriptor], name: &str) -> Result<CaseDescriptor> {
    match all.iter().find(|d| d.name == name) {
        Some(d) => Ok(d.clone()),
        None => Err(bench::BenchError::UnknownCase(name.to_string())).context("try `rootapprox list`"),
    }
}

fn pct(v: f64) -> String {
    format!("{:.2}%", 100.0 * v)
}

fn print_result(r: &CaseResult) {
    println!("{} (k = {}, {}): {}", r.name, r.k, r.mode, r.status);
    if let Some(e) = &r.build_error {
        println!("  build stopped: {e}");
    }
    for (i, a) in r.params.iter().enumerate() {
        match r.expected_params.as_ref().and_then(|p| p.get(i)) {
            Some(want) => println!("  A{} = {a:.8}   printed {want}", i + 1),
            None => println!("  A{} = {a:.8}", i + 1),
        }
    }
    if let Some(dev) = r.param_max_dev {
        println!("  max relative deviation from printed values: {dev:.2e}");
    }
    if let Some(s) = &r.scan {
        println!("  max error {} at x = {:.4}", pct(s.max_rel_err), s.argmax_x);
        if !s.failures.is_empty() {
            println!("  {} grid points failed to evaluate", s.failures.len());
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let all = cases(&cli)?;
    let mut opts = RunOptions { param_tol: cli.tol, grid: cli.grid, keep_points: false };
    match &cli.command {
        Command::List => {
            for d in &all {
                let oracle = d.oracle.map_or("-".to_string(), |o| o.to_string());
                println!("{:<16} k={}  {:<10} oracle={:<14} {}", d.name, d.k(), d.mode.label(), oracle, d.title);
            }
        }
        Command::Build { case } => {
            let d = pick(&all, case)?;
            let r = run_case(&CaseDescriptor { scan: None, baselines: vec![], ..d }, &opts)?;
            print_result(&r);
            if r.status == "param-mismatch" {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Scan { case, out, columns } => {
            let d = pick(&all, case)?;
            if d.oracle.is_none() {
                bail!("case {case} has no oracle to scan against");
            }
            opts.keep_points = out.is_some();
            let r = run_case(&CaseDescriptor { baselines: vec![], ..d }, &opts)?;
            print_result(&r);
            if let (Some(path), Some(scan)) = (out, &r.scan) {
                let cols = match columns {
                    Columns::Two => ScanColumns::Two,
                    Columns::Four => ScanColumns::Four,
                };
                emit_scan(scan, cols, path)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Compare { case } => {
            let d = pick(&all, case)?;
            let r = run_case(&d, &opts)?;
            print_result(&r);
            if r.baselines.is_empty() {
                println!("  no baselines registered");
            }
            for b in &r.baselines {
                let err = b.scan.as_ref().map_or("-".to_string(), |s| format!("{} at x = {:.4}", pct(s.max_rel_err), s.argmax_x));
                let order = b.order.as_deref().unwrap_or("-");
                println!("  baseline {:<20} {:<18} {:<12} {err}", b.name, order, b.status);
                if let Some(detail) = &b.detail {
                    println!("    {detail}");
                }
            }
        }
        Command::Report { cases: names, all: every, format, out } => {
            let selected: Vec<CaseDescriptor> = if *every {
                all.clone()
            } else {
                names.iter().map(|n| pick(&all, n)).collect::<Result<_>>()?
            };
            opts.keep_points = matches!(format, OutFormat::Json);
            let results = run_all(&selected, &opts).into_iter().collect::<Result<Vec<_>, _>>()?;
            let format = match format {
                OutFormat::Csv => Format::Csv,
                OutFormat::Json => Format::Json,
            };
            emit_report(&results, format, out)?;
            println!("wrote {} cases to {}", results.len(), out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_flag() {
        let g = parse_grid("0.01:100:50").unwrap();
        assert_eq!((g.lo, g.hi, g.n), (0.01, 100.0, 50));
        assert!(parse_grid("1:0.5:10").is_err());
        assert!(parse_grid("1:2").is_err());
    }

    #[test]
    fn cli_parses() {
        let cli = Cli::try_parse_from(["rootapprox", "report", "--all", "--format", "json", "--out", "r.json", "--tol", "1e-4"]).unwrap();
        assert_eq!(cli.tol, 1e-4);
        assert!(matches!(cli.command, Command::Report { all: true, .. }));
    }
}
