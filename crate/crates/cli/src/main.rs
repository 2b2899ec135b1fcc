use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use chebwell::analysis::{
    boundary_linearity_test, classify, l_min_eig_field, scan_2d, scan_field, sweep_1d, Family,
    Scan2d, DEFAULT_SEGMENT_TOL,
};
use chebwell::checks::{run_all, VerifyOptions};
use chebwell::export::{
    fmt_f64, to_json, write_matrix_csv, write_scan_csv, write_spectrum_csv, write_sweep_csv,
    SpectrumRow,
};
use chebwell::lattice::{
    build_hamiltonian, closed_form_eigensystem, closed_form_energies, numerical_energies,
    ModelKind,
};
use chebwell::metrics::{
    band_metric_basis, diagonal_metric, hermitize_check, k_matrix, l_matrix, spectral_metric,
    MetricCandidate,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chebwell", version, about = "Chebyshev square-well chains and their metric operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energies against a numerical eigensolve.
    Spectrum(SpectrumArgs),
    /// Build a metric candidate and check it intertwines the chain.
    Metric(MetricArgs),
    /// Eigenvalues of K(λ) or L(λ, μ) along a one-parameter grid.
    Sweep(SweepArgs),
    /// Inertia of L(λ, μ) on a 2-D grid plus a boundary-linearity report.
    Scan(ScanArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    FirstKind,
    SecondKind,
}

impl From<Model> for ModelKind {
    fn from(m: Model) -> Self {
        match m {
            Model::FirstKind => ModelKind::FirstKindWell,
            Model::SecondKind => ModelKind::SecondKindWell,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricMode {
    Spectral,
    Diagonal,
    K,
    L,
    Basis,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    K,
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    /// The L(λ, μ) positivity domain.
    L,
    /// A disc of radius 1/2: a curved negative control.
    Circle,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(short = 'N', long = "dim")]
    n: usize,
    #[arg(long, value_enum, default_value = "first-kind")]
    model: Model,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long, value_enum)]
    mode: MetricMode,
    #[arg(short = 'N', long = "dim")]
    n: usize,
    #[arg(long, value_enum, default_value = "first-kind")]
    model: Model,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    mu: f64,
    /// Comma-separated spectral weights, one per level.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Vec<f64>,
    /// Half-bandwidth of the ansatz in `basis` mode.
    #[arg(long, default_value_t = 1)]
    band: usize,
    /// Relative intertwining tolerance, scaled by ‖H‖·‖Θ‖.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(short = 'N', long = "dim")]
    n: usize,
    /// Fixed λ for the `l` family.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(short = 'N', long = "dim", default_value_t = 8)]
    n: usize,
    /// Points per axis.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    lambda_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda_max: f64,
    #[arg(long, default_value_t = -1.5, allow_hyphen_values = true)]
    mu_min: f64,
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    mu_max: f64,
    /// Normal-turn angle (radians) that splits boundary segments.
    #[arg(long, default_value_t = DEFAULT_SEGMENT_TOL)]
    segment_tol: f64,
    #[arg(long, value_enum, default_value = "l")]
    fixture: Fixture,
    /// Linearity report path; stderr when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    max_n: usize,
    /// Corrupt the K(λ) corner; the run must fail.
    #[arg(long)]
    canary: bool,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    /// Bad input: exit 2.
    Invalid(anyhow::Error),
    /// A numerical check did not pass: exit 1.
    Numeric(anyhow::Error),
}

impl From<chebwell::Error> for Failure {
    fn from(e: chebwell::Error) -> Self {
        use chebwell::Error as E;
        match e {
            E::TooSmall { .. }
            | E::DimensionMismatch { .. }
            | E::NotSquare { .. }
            | E::NotSymmetric { .. }
            | E::InvalidParameter { .. } => Failure::Invalid(e.into()),
            _ => Failure::Numeric(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Numeric(e)
    }
}

type Outcome = Result<(), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(anyhow::anyhow!(msg.into()))
}

fn require(ok: bool, msg: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(invalid(msg))
    }
}

fn open(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(out: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>) -> Outcome {
    let mut w = open(out)?;
    f(&mut w)?;
    w.flush().context("flushing output")?;
    Ok(())
}

fn emit_json(out: &Option<PathBuf>, value: &Value) -> Outcome {
    let text = to_json(value)?;
    emit(out, |w| Ok(w.write_all(text.as_bytes())?))
}

fn cmd_spectrum(a: SpectrumArgs) -> Outcome {
    require(a.n >= 1, "N must be at least 1")?;
    require(a.tol > 0.0, "tol must be positive")?;
    let kind = ModelKind::from(a.model);
    let closed = closed_form_energies(kind, a.n)?;
    let numeric = numerical_energies(&build_hamiltonian(kind, a.n)?)?;
    let rows: Vec<SpectrumRow> = closed
        .iter()
        .zip(&numeric)
        .enumerate()
        .map(|(k, (c, e))| SpectrumRow {
            n: k,
            e_closed_form: *c,
            e_numeric: *e,
            abs_delta: (c - e).abs(),
        })
        .collect();
    let max_delta = rows.iter().map(|r| r.abs_delta).fold(0.0, f64::max);
    match a.format {
        Format::Csv => emit(&a.output.out, |w| Ok(write_spectrum_csv(w, &rows)?))?,
        Format::Json => emit_json(
            &a.output.out,
            &json!({ "n": a.n, "max_abs_delta": max_delta, "tolerance": a.tol, "rows": rows }),
        )?,
    }
    if max_delta < a.tol {
        Ok(())
    } else {
        Err(Failure::Numeric(anyhow::anyhow!(
            "max |Δ| = {} exceeds tolerance {}",
            fmt_f64(max_delta),
            a.tol
        )))
    }
}

fn cmd_metric(a: MetricArgs) -> Outcome {
    require(a.n >= 1, "N must be at least 1")?;
    require(a.tol > 0.0, "tol must be positive")?;
    let kind = ModelKind::from(a.model);
    let h = build_hamiltonian(kind, a.n)?;
    let candidates: Vec<MetricCandidate> = match a.mode {
        MetricMode::Spectral => {
            let nu = if a.nu.is_empty() { vec![1.0; a.n] } else { a.nu.clone() };
            vec![spectral_metric(&closed_form_eigensystem(kind, a.n)?, &nu)?]
        }
        MetricMode::Diagonal => vec![diagonal_metric(a.n)?],
        MetricMode::K => vec![k_matrix(a.n, a.lambda)?],
        MetricMode::L => vec![l_matrix(a.n, a.lambda, a.mu)?],
        MetricMode::Basis => band_metric_basis(&h, a.band)?,
    };

    let mut failing = Vec::new();
    let mut verification = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        let rep = hermitize_check(&h, c)?;
        let sig = classify(c)?;
        if !rep.intertwines(a.tol) {
            failing.push(k);
        }
        verification.push(json!({
            "intertwining_residual": rep.intertwining_residual,
            "scale": rep.scale,
            "min_eigenvalue": rep.min_eigenvalue,
            "signature": sig.label,
            "n_positive": sig.n_positive,
            "n_negative": sig.n_negative,
            "n_zero": sig.n_zero,
        }));
    }

    match a.format {
        Format::Json => {
            let matrices: Vec<Value> = candidates
                .iter()
                .zip(&verification)
                .map(|(c, v)| json!({ "params": c.params, "matrix": c.to_dense().to_rows(), "verification": v }))
                .collect();
            emit_json(&a.output.out, &json!({ "n": a.n, "metrics": matrices }))?;
        }
        Format::Csv => {
            emit(&a.output.out, |w| {
                for c in &candidates {
                    write_matrix_csv(&mut *w, &c.to_dense())?;
                }
                Ok(())
            })?;
            eprint!("{}", to_json(&json!({ "verification": verification }))?);
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numeric(anyhow::anyhow!(
            "intertwining residual above tolerance for candidate(s) {failing:?}"
        )))
    }
}

fn cmd_sweep(a: SweepArgs) -> Outcome {
    require(a.n >= 1, "N must be at least 1")?;
    require(a.from < a.to, "--from must be below --to")?;
    require(a.steps >= 2, "--steps must be at least 2")?;
    let family = match a.family {
        FamilyArg::K => Family::K,
        FamilyArg::L => Family::L { lambda: a.lambda },
    };
    let records = sweep_1d(a.n, family, a.from, a.to, a.steps)?;
    match a.format {
        Format::Csv => emit(&a.output.out, |w| Ok(write_sweep_csv(w, family, &records)?)),
        Format::Json => emit_json(
            &a.output.out,
            &json!({ "n": a.n, "family": family, "records": records }),
        ),
    }
}

fn write_report(path: &Option<PathBuf>, value: &Value) -> Outcome {
    let text = to_json(value)?;
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{text}"),
    }
    Ok(())
}

fn cmd_scan(a: ScanArgs) -> Outcome {
    require(a.n >= 1, "N must be at least 1")?;
    require(a.grid >= 2, "--grid must be at least 2")?;
    require(a.lambda_min < a.lambda_max, "--lambda-min must be below --lambda-max")?;
    require(a.mu_min < a.mu_max, "--mu-min must be below --mu-max")?;
    require(a.segment_tol > 0.0, "--segment-tol must be positive")?;
    let lr = (a.lambda_min, a.lambda_max);
    let mr = (a.mu_min, a.mu_max);
    let circle = |l: f64, m: f64| 0.25 - l * l - m * m;
    let (scan, report): (Scan2d, _) = match a.fixture {
        Fixture::L => {
            let scan = scan_2d(a.n, lr, mr, a.grid, a.grid)?;
            let rep = boundary_linearity_test(&scan, &l_min_eig_field(a.n), a.segment_tol);
            (scan, rep)
        }
        Fixture::Circle => {
            let scan = scan_field(lr, mr, a.grid, a.grid, circle)?;
            let rep = boundary_linearity_test(&scan, &circle, a.segment_tol);
            (scan, rep)
        }
    };
    match a.format {
        Format::Csv => emit(&a.output.out, |w| Ok(write_scan_csv(w, &scan)?))?,
        Format::Json => emit_json(&a.output.out, &serde_json::to_value(&scan).context("scan")?)?,
    }
    // The linearity verdict is reported, never turned into an exit status.
    let report = match report {
        Ok(r) => serde_json::to_value(&r).context("report")?,
        Err(e) => json!({ "linear": false, "error": e.to_string() }),
    };
    write_report(&a.report, &report)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    require(a.max_n >= 1, "--max-n must be at least 1")?;
    let report = run_all(VerifyOptions {
        max_n: a.max_n,
        corrupt_k_corner: a.canary,
    });
    emit_json(&a.output.out, &serde_json::to_value(&report).context("report")?)?;
    for c in &report.checks {
        eprintln!(
            "{} {:>2} {}: measured {} threshold {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            fmt_f64(c.measured),
            fmt_f64(c.threshold)
        );
    }
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::Numeric(anyhow::anyhow!("failed checks: {}", names.join(", "))))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Metric(a) => cmd_metric(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
