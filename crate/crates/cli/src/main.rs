//! `jordan-tp`: verification suites, spectral decompositions, transition
//! probability tables and polytope checks from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

mod output;
mod suites;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jordan_tp::convexgeom::MIDPOINT_SAMPLES;
use jordan_tp::rng::rng_for_tagged;
use jordan_tp::transition::format_f64;
use jordan_tp::{Element, ModelDescriptor, PolytopeStateSpace, SelfDualCone, Tolerance};
use serde::Serialize;

use output::{to_json, VerificationReport};
use suites::Suite;

#[derive(Parser)]
#[command(name = "jordan-tp", version, about = "Spectral order unit spaces with transition probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite on a model (`kind:n[:p]`).
    Verify {
        model: String,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Spectral decomposition of an element given as a JSON array.
    Spectral {
        model: String,
        /// JSON file, or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Extreme-point functions and the (∗∗) test on a polytope given by
    /// vertex rows in CSV.
    Geom {
        file: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, env = "JORDAN_TP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = MIDPOINT_SAMPLES)]
        samples: usize,
    },
    /// Transition probability matrix of atoms, as CSV.
    Tpmatrix {
        model: String,
        /// JSON array of atoms.
        file: Option<PathBuf>,
        /// Use `k` random atoms instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        #[arg(long, env = "JORDAN_TP_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Self-dual cone suite on the cone generated by CSV rows.
    Cone {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args)]
struct TolArgs {
    /// Tolerance override `KEY=VAL` with KEY in eig_cluster, cone_slack, check_tol.
    #[arg(long = "tol", value_name = "KEY=VAL")]
    overrides: Vec<String>,
}

impl TolArgs {
    fn build(&self) -> Result<Tolerance<f64>, String> {
        let mut tol = Tolerance::default();
        for kv in &self.overrides {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("--tol expects KEY=VAL, got `{kv}`"))?;
            let v: f64 = v.trim().parse().map_err(|e| format!("--tol {kv}: {e}"))?;
            tol.set(k.trim(), v).map_err(|e| e.to_string())?;
        }
        Ok(tol)
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "JORDAN_TP_SEED", default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    tol: TolArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Input or usage problem (exit 2).
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn read_input(path: &Path) -> Result<String, Usage> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Usage> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: VerificationReport, format: Format, out: Option<&Path>) -> Outcome {
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
    };
    emit(&text, out)?;
    Ok(report.passed())
}

fn verify(model: &str, suite: Suite, run: &RunArgs, trials: usize, format: Format) -> Outcome {
    let m: ModelDescriptor = model.parse()?;
    let tol = run.tol.build()?;
    let start = Instant::now();
    let report = suites::run(&m, suite, run.seed, trials, &tol);
    let report = VerificationReport {
        model: serde_json::to_value(m)?,
        suite: suite.name().into(),
        seed: run.seed,
        trials,
        tolerances: tol,
        checks: report.checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    finish(report, format, run.out.as_deref())
}

#[derive(Serialize)]
struct SpectralOutput {
    model: ModelDescriptor,
    #[serde(flatten)]
    form: jordan_tp::SpectralForm64,
    reconstruction_residual: f64,
}

fn spectral(model: &str, file: &Path, tol: &TolArgs) -> Outcome {
    let m: ModelDescriptor = model.parse()?;
    let tol = tol.build()?;
    let coords: Vec<f64> = serde_json::from_str(&read_input(file)?)?;
    let a: Element<f64> = m.element(coords)?;
    let form = m.spectral_decompose(&a, &tol)?;
    let reconstruction_residual = m.order_norm(&(&a - &form.reconstruct()), &tol)?;
    print!("{}", to_json(&SpectralOutput { model: m, form, reconstruction_residual }));
    Ok(true)
}

fn geom(file: &Path, tol: &TolArgs, seed: u64, samples: usize) -> Outcome {
    let tol = tol.build()?;
    let poly = PolytopeStateSpace::<f64>::from_csv(read_input(file)?.as_bytes())?;
    let reports = poly.check_star_star(&tol, samples, seed).map_err(|e| Usage(e.to_string()))?;
    print!("{}", to_json(&reports));
    Ok(reports.iter().all(|r| r.passes))
}

fn tpmatrix(model: &str, file: Option<&Path>, random: Option<usize>, seed: u64, tol: &TolArgs) -> Outcome {
    let m: ModelDescriptor = model.parse()?;
    let tol = tol.build()?;
    let atoms: Vec<Element<f64>> = match (file, random) {
        (Some(f), None) => {
            let rows: Vec<Vec<f64>> = serde_json::from_str(&read_input(f)?)?;
            rows.into_iter().map(|r| m.element(r)).collect::<Result<_, _>>()?
        }
        (None, Some(k)) if k > 0 => {
            (0..k).map(|i| m.random_atom_with(&mut rng_for_tagged(seed, "tpmatrix", i as u64))).collect()
        }
        _ => return Err(Usage("give an atoms file or --random K with K > 0".into())),
    };
    let tp = m.tp_matrix(&atoms, &tol)?;
    print!("{}", tp.to_csv());
    println!("# symmetry_defect={}", format_f64(tp.symmetry_defect()));
    Ok(true)
}

fn cone(file: &Path, run: &RunArgs, trials: usize, format: Format) -> Outcome {
    let tol = run.tol.build()?;
    let cone = SelfDualCone::<f64>::from_csv(read_input(file)?.as_bytes())?;
    let start = Instant::now();
    let mut report = cone.verify_all(run.seed, trials, &tol).map_err(|e| Usage(e.to_string()))?;
    report.sort();
    let SelfDualCone::Generated(g) = &cone else { unreachable!("from_csv builds a generated cone") };
    let report = VerificationReport {
        model: serde_json::json!({"kind": "generated", "dim": g.dim(), "extreme_rays": g.atoms().len()}),
        suite: "cone".into(),
        seed: run.seed,
        trials,
        tolerances: tol,
        checks: report.checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    finish(report, format, run.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Verify { model, suite, run, trials, format } => verify(model, *suite, run, *trials, *format),
        Command::Spectral { model, file, tol } => spectral(model, file, tol),
        Command::Geom { file, tol, seed, samples } => geom(file, tol, *seed, *samples),
        Command::Tpmatrix { model, file, random, seed, tol } => tpmatrix(model, file.as_deref(), *random, *seed, tol),
        Command::Cone { file, run, trials, format } => cone(file, run, *trials, *format),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
