//! Command-line driver: single-element evaluations and machine-readable
//! error tables (CSV or JSON) over theta, j and l grids.
//!
//! Exit codes: 0 on success, 2 on domain errors (invalid indices, angles
//! or parameters), 3 on I/O errors. All numbers are serialized with 17
//! significant digits so downstream plotting reproduces values without
//! quantization artifacts; output is byte-identical across runs and
//! thread counts.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wigner::sweep::{self, ErrorRecord, IntegralRecord, ThetaGrid};
use wigner::{Angle, AngularIndex};

#[derive(Parser)]
#[command(
    name = "wigner-cli",
    version,
    about = "Wigner d-matrix elements, their uniform low-angle Bessel approximation, and wavepacket overlap-integral error tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single matrix element and print it
    Eval(EvalArgs),
    /// Exact-vs-approximate error table over a log-spaced theta grid
    SweepTheta(SweepThetaArgs),
    /// Error table over a j range at fixed (m1, m2, theta)
    SweepJ(SweepJArgs),
    /// Overlap-integral error table over an l range at fixed (rho, epsilon)
    SweepIntegral(SweepIntegralArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Seeded degree recurrence (double precision ground truth)
    Exact,
    /// Uniform low-angle Bessel approximation
    Approx,
    /// Extended-precision terminating series
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct IndexArgs {
    /// Doubled j (2j), so half-integers stay exact
    #[arg(long)]
    two_j: i64,
    /// Doubled m1 (2 m1)
    #[arg(long, allow_hyphen_values = true)]
    two_m1: i64,
    /// Doubled m2 (2 m2)
    #[arg(long, allow_hyphen_values = true)]
    two_m2: i64,
}

impl IndexArgs {
    fn index(&self) -> Result<AngularIndex, AppError> {
        Ok(AngularIndex::new(self.two_j, self.two_m1, self.two_m2)?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    index: IndexArgs,
    /// Rotation angle in radians, in [0, pi)
    #[arg(long)]
    theta: f64,
    #[arg(long, value_enum)]
    method: Method,
    /// Working decimal digits for --method series
    #[arg(long, default_value_t = 60)]
    digits: u32,
}

#[derive(Args)]
struct SweepThetaArgs {
    #[command(flatten)]
    index: IndexArgs,
    /// First theta of the log-spaced grid (must be > 0)
    #[arg(long)]
    theta_start: f64,
    /// Last theta of the grid
    #[arg(long)]
    theta_stop: f64,
    /// Number of grid points
    #[arg(long)]
    theta_points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepJArgs {
    /// First j of the range (integer or half-integer, e.g. 2.5)
    #[arg(long)]
    j_start: f64,
    /// Last j of the range; j advances in unit steps
    #[arg(long)]
    j_stop: f64,
    #[arg(long, allow_hyphen_values = true)]
    two_m1: i64,
    #[arg(long, allow_hyphen_values = true)]
    two_m2: i64,
    /// Rotation angle in radians, in [0, pi)
    #[arg(long)]
    theta: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepIntegralArgs {
    #[arg(long, default_value_t = 0)]
    l_start: u32,
    #[arg(long)]
    l_stop: u32,
    #[arg(long, default_value_t = 1)]
    l_step: u32,
    /// Momentum ratio rho = k/p (must be > 0)
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Relative momentum width eps = sigma_p/p (must be > 0)
    #[arg(long)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

enum AppError {
    Domain(String),
    Io(io::Error),
}

impl From<wigner::Error> for AppError {
    fn from(e: wigner::Error) -> Self {
        AppError::Domain(e.to_string())
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(e)) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Eval(args) => eval(args),
        Command::SweepTheta(args) => sweep_theta(args),
        Command::SweepJ(args) => sweep_j(args),
        Command::SweepIntegral(args) => sweep_integral(args),
    }
}

fn eval(args: EvalArgs) -> Result<(), AppError> {
    let idx = args.index.index()?;
    let theta = Angle::new(args.theta)?;
    let value = match args.method {
        Method::Exact => wigner::d_exact(&idx, theta),
        Method::Approx => wigner::d_approx(&idx, theta),
        Method::Series => {
            if args.digits < 30 {
                return Err(AppError::Domain("--digits must be at least 30".into()));
            }
            wigner::d_series_highprec(&idx, theta, args.digits)?
        }
    };
    let mut out = io::stdout().lock();
    writeln!(out, "{}", fmt17(value))?;
    Ok(())
}

fn sweep_theta(args: SweepThetaArgs) -> Result<(), AppError> {
    let idx = args.index.index()?;
    let grid = ThetaGrid {
        start: args.theta_start,
        stop: args.theta_stop,
        points: args.theta_points,
    };
    let angles = grid.angles()?;
    let rows = sweep::sweep_theta(&idx, &angles);
    write_error_rows(&args.output, &rows)
}

fn sweep_j(args: SweepJArgs) -> Result<(), AppError> {
    let theta = Angle::new(args.theta)?;
    let start = doubled(args.j_start, "--j-start")?;
    let stop = doubled(args.j_stop, "--j-stop")?;
    if (stop - start) % 2 != 0 {
        return Err(AppError::Domain(
            "--j-stop must differ from --j-start by a whole number".into(),
        ));
    }
    let indices = sweep::j_range(start, stop, args.two_m1, args.two_m2)?;
    let rows = sweep::sweep_j(&indices, theta);
    write_error_rows(&args.output, &rows)
}

fn sweep_integral(args: SweepIntegralArgs) -> Result<(), AppError> {
    if args.rho.is_nan() || args.rho <= 0.0 {
        return Err(AppError::Domain(format!(
            "--rho must be positive, got {}",
            args.rho
        )));
    }
    if args.epsilon.is_nan() || args.epsilon <= 0.0 {
        return Err(AppError::Domain(format!(
            "--epsilon must be positive, got {}",
            args.epsilon
        )));
    }
    if args.l_step == 0 {
        return Err(AppError::Domain("--l-step must be positive".into()));
    }
    if args.l_stop < args.l_start {
        return Err(AppError::Domain(
            "--l-stop must not be below --l-start".into(),
        ));
    }
    let ls = sweep::l_range(args.l_start, args.l_stop, args.l_step);
    let rows = sweep::sweep_integral(&ls, args.rho, args.epsilon);
    for row in rows.iter().filter(|r| !r.converged) {
        eprintln!(
            "warning: quadrature did not converge at l = {}; exact column is the unconverged estimate",
            row.l
        );
    }
    write_integral_rows(&args.output, &rows)
}

/// Doubles a (half-)integer j given as a decimal, rejecting anything that
/// is not a multiple of 1/2.
fn doubled(j: f64, flag: &str) -> Result<i64, AppError> {
    let two_j = (2.0 * j).round();
    if !(2.0 * j - two_j).abs().le(&1e-9) || !two_j.is_finite() {
        return Err(AppError::Domain(format!(
            "{flag} must be an integer or half-integer, got {j}"
        )));
    }
    Ok(two_j as i64)
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt17(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn with_output<F>(output: &OutputArgs, body: F) -> Result<(), AppError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_error_rows(output: &OutputArgs, rows: &[ErrorRecord]) -> Result<(), AppError> {
    with_output(output, |w| match output.format {
        Format::Csv => {
            writeln!(
                w,
                "two_j,two_m1,two_m2,theta,exact,approx,abs_error,rel_error"
            )?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{}",
                    r.two_j,
                    r.two_m1,
                    r.two_m2,
                    fmt17(r.theta),
                    fmt17(r.exact),
                    fmt17(r.approx),
                    fmt17(r.abs_error),
                    fmt_opt17(r.rel_error)
                )?;
            }
            Ok(())
        }
        Format::Json => write_json(w, rows),
    })
}

fn write_integral_rows(output: &OutputArgs, rows: &[IntegralRecord]) -> Result<(), AppError> {
    with_output(output, |w| match output.format {
        Format::Csv => {
            writeln!(w, "l,rho,epsilon,exact,approx,rel_error")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r.l,
                    fmt17(r.rho),
                    fmt17(r.epsilon),
                    fmt17(r.exact),
                    fmt17(r.approx),
                    fmt_opt17(r.rel_error)
                )?;
            }
            Ok(())
        }
        Format::Json => write_json(w, rows),
    })
}

fn write_json<T: serde::Serialize>(w: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, rows).map_err(io::Error::other)?;
    writeln!(w)
}
