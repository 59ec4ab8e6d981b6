mod csv;
mod svg;

use circopula::circ_dist::{Cardioid, CircularCdf};
use circopula::copula::{
    CircularLowerBound, CircularUpperBound, Copula, FrechetLower, FrechetUpper, Independence,
    MardiaMixture,
};
use circopula::dependence::{classify_support, MonotoneClass, SupportSet};
use circopula::joint::{grid_max_deviation, shifted_upper_parameter, CircularJoint};
use circopula::sampling::{simulate, SimulationConfig};
use circopula::Angle;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::env;
use std::f64::consts::PI;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 success or verdict holds, 1 usage, 2 I/O failure,
/// 3 negative verdict.
#[derive(Parser)]
#[command(name = "circopula", version, about = "Circular dependence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw angle pairs from the mixture model and write them as CSV.
    Simulate(SimulateArgs),
    /// Evaluate a copula at one point of the unit square.
    Eval(EvalArgs),
    /// Check that re-anchoring a comonotone joint lands on the derived
    /// member of the upper bound family.
    VerifyShift(VerifyShiftArgs),
    /// Classify the support of a CSV sample as monotone or not.
    CheckMonotone(CheckMonotoneArgs),
    /// Render a CSV sample as an SVG scatter.
    Plot(PlotArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Association parameter in [-1, 1].
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    gamma: f64,
    /// Upper-family parameter in [0, 1].
    #[arg(long, default_value_t = 0.7)]
    a: f64,
    /// Lower-family parameter in [0, 1].
    #[arg(long, default_value_t = 0.4)]
    b: f64,
    /// Concentration of the theta marginal, in [-0.5, 0.5].
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    rho_theta: f64,
    /// Peak direction of the theta marginal; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "pi", allow_hyphen_values = true)]
    mu_theta: f64,
    /// Concentration of the phi marginal, in [-0.5, 0.5].
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    rho_phi: f64,
    /// Peak direction of the phi marginal; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "pi/3", allow_hyphen_values = true)]
    mu_phi: f64,
    /// Number of pairs to draw.
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// RNG seed; the same seed reproduces the file byte for byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file [default: simulate.csv in CIRCOPULA_OUT_DIR or `.`].
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// One of Pi, M, W, M_a, W_a, mardia.
    #[arg(long)]
    copula: String,
    /// Family parameter for M_a / W_a, upper parameter for mardia.
    #[arg(long)]
    a: Option<f64>,
    /// Lower parameter for mardia.
    #[arg(long)]
    b: Option<f64>,
    /// Association parameter for mardia, in [-1, 1].
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// First coordinate, in [0, 1].
    #[arg(allow_negative_numbers = true)]
    u: f64,
    /// Second coordinate, in [0, 1].
    #[arg(allow_negative_numbers = true)]
    v: f64,
}

#[derive(Args)]
struct VerifyShiftArgs {
    /// New zero direction on the theta axis; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "0", allow_hyphen_values = true)]
    alpha: f64,
    /// New zero direction on the phi axis; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "0", allow_hyphen_values = true)]
    beta: f64,
    /// Grid points per axis for the deviation scan.
    #[arg(long, default_value_t = 51)]
    grid: usize,
    /// Concentration of the theta marginal, in [-0.5, 0.5].
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    rho_theta: f64,
    /// Peak direction of the theta marginal; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "pi", allow_hyphen_values = true)]
    mu_theta: f64,
    /// Concentration of the phi marginal, in [-0.5, 0.5].
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    rho_phi: f64,
    /// Peak direction of the phi marginal; accepts pi tokens.
    #[arg(long, value_parser = parse_angle_expr, default_value = "pi/3", allow_hyphen_values = true)]
    mu_phi: f64,
}

#[derive(Args)]
struct CheckMonotoneArgs {
    /// CSV file of theta,phi pairs.
    input: PathBuf,
    /// Direction the support must satisfy.
    #[arg(long, value_enum, default_value_t = DirectionArg::Any)]
    direction: DirectionArg,
    /// Merge coordinates closer than this before classifying.
    #[arg(long)]
    snap: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DirectionArg {
    Nondecreasing,
    Nonincreasing,
    Any,
}

#[derive(Args)]
struct PlotArgs {
    /// CSV file of theta,phi pairs.
    input: PathBuf,
    /// Output file [default: plot.svg in CIRCOPULA_OUT_DIR or `.`].
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Eval(args) => run_eval(args),
        Command::VerifyShift(args) => run_verify_shift(args),
        Command::CheckMonotone(args) => run_check_monotone(args),
        Command::Plot(args) => run_plot(args),
    }
}

fn run_simulate(args: SimulateArgs) -> ExitCode {
    let checks = check_range("--gamma", args.gamma, -1.0, 1.0)
        .and_then(|()| check_range("--a", args.a, 0.0, 1.0))
        .and_then(|()| check_range("--b", args.b, 0.0, 1.0))
        .and_then(|()| check_range("--rho-theta", args.rho_theta, -0.5, 0.5))
        .and_then(|()| check_range("--rho-phi", args.rho_phi, -0.5, 0.5));
    if let Err(msg) = checks {
        return usage(msg);
    }
    let config = SimulationConfig {
        gamma: args.gamma,
        a: args.a,
        b: args.b,
        rho_theta: args.rho_theta,
        mu_theta: Angle::new(args.mu_theta),
        rho_phi: args.rho_phi,
        mu_phi: Angle::new(args.mu_phi),
        n: args.n,
        seed: args.seed,
    };
    let set = match simulate(&config) {
        Ok(set) => set,
        Err(e) => return usage(e),
    };
    let path = args.output.unwrap_or_else(|| default_output("simulate.csv"));
    match csv::write_sample(&path, &set) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => io_failure(format!("cannot write {}: {e}", path.display())),
    }
}

fn run_eval(args: EvalArgs) -> ExitCode {
    match eval_value(&args) {
        Ok(value) => {
            println!("{}", fmt15(value));
            ExitCode::SUCCESS
        }
        Err(msg) => usage(msg),
    }
}

fn eval_value(args: &EvalArgs) -> Result<f64, String> {
    check_range("u", args.u, 0.0, 1.0)?;
    check_range("v", args.v, 0.0, 1.0)?;
    let copula: Box<dyn Copula> = match args.copula.as_str() {
        "Pi" => Box::new(Independence),
        "M" => Box::new(FrechetUpper),
        "W" => Box::new(FrechetLower),
        "M_a" => {
            let a = args.a.ok_or("--copula M_a needs --a")?;
            check_range("--a", a, 0.0, 1.0)?;
            Box::new(CircularUpperBound::new(a).map_err(|e| e.to_string())?)
        }
        "W_a" => {
            let a = args.a.ok_or("--copula W_a needs --a")?;
            check_range("--a", a, 0.0, 1.0)?;
            Box::new(CircularLowerBound::new(a).map_err(|e| e.to_string())?)
        }
        "mardia" => {
            let gamma = args.gamma.ok_or("--copula mardia needs --gamma")?;
            check_range("--gamma", gamma, -1.0, 1.0)?;
            let a = args.a.unwrap_or(0.7);
            let b = args.b.unwrap_or(0.4);
            check_range("--a", a, 0.0, 1.0)?;
            check_range("--b", b, 0.0, 1.0)?;
            Box::new(MardiaMixture::new(gamma, a, b).map_err(|e| e.to_string())?)
        }
        other => {
            return Err(format!(
                "unknown copula `{other}`; expected Pi, M, W, M_a, W_a, or mardia"
            ))
        }
    };
    Ok(copula.value(args.u, args.v))
}

fn run_verify_shift(args: VerifyShiftArgs) -> ExitCode {
    let checks = check_range("--rho-theta", args.rho_theta, -0.5, 0.5)
        .and_then(|()| check_range("--rho-phi", args.rho_phi, -0.5, 0.5));
    if let Err(msg) = checks {
        return usage(msg);
    }
    if args.grid < 2 {
        return usage("--grid must be at least 2");
    }
    let f = Cardioid::new(args.rho_theta, Angle::new(args.mu_theta)).expect("range checked");
    let g = Cardioid::new(args.rho_phi, Angle::new(args.mu_phi)).expect("range checked");
    let alpha = Angle::new(args.alpha);
    let beta = Angle::new(args.beta);

    let joint = CircularJoint::new(FrechetUpper, f, g);
    let shifted = joint.shift(alpha, beta);
    let grid = match shifted.copula_grid(args.grid) {
        Ok(grid) => grid,
        Err(e) => return usage(e),
    };
    let a = shifted_upper_parameter(f.eval(alpha).value(), g.eval(beta).value());
    let family = CircularUpperBound::new(a).expect("parameter map stays in [0, 1]");
    let deviation = grid_max_deviation(&grid, args.grid, &family);

    println!("max deviation {deviation:e}");
    println!("derived a {a}");
    if deviation < 1e-8 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run_check_monotone(args: CheckMonotoneArgs) -> ExitCode {
    let rows = match csv::read_pairs(&args.input) {
        Ok(rows) => rows,
        Err(csv::ReadError::Io(e)) => {
            return io_failure(format!("cannot read {}: {e}", args.input.display()))
        }
        Err(e) => return usage(format!("{}: {e}", args.input.display())),
    };
    let points = rows
        .into_iter()
        .map(|(t, p)| (Angle::new(t), Angle::new(p)))
        .collect();
    let support = match SupportSet::new(points) {
        Ok(support) => support,
        Err(e) => return usage(e),
    };
    let support = match args.snap {
        Some(tolerance) => {
            if !(tolerance >= 0.0 && tolerance.is_finite()) {
                return usage("--snap must be a nonnegative number");
            }
            support.snapped(tolerance)
        }
        None => support,
    };
    let verdict = classify_support(&support);
    match (verdict.direction, verdict.witness_cut) {
        (MonotoneClass::NonDecreasing, Some((a, b))) => {
            println!("nondecreasing at cut alpha={} beta={}", a.radians(), b.radians());
        }
        (MonotoneClass::NonIncreasing, Some((a, b))) => {
            println!("nonincreasing at cut alpha={} beta={}", a.radians(), b.radians());
        }
        (MonotoneClass::Both, Some((a, b))) => {
            println!("both directions at cut alpha={} beta={}", a.radians(), b.radians());
        }
        _ => println!("neither"),
    }
    let satisfied = match args.direction {
        DirectionArg::Any => verdict.direction != MonotoneClass::Neither,
        DirectionArg::Nondecreasing => matches!(
            verdict.direction,
            MonotoneClass::NonDecreasing | MonotoneClass::Both
        ),
        DirectionArg::Nonincreasing => matches!(
            verdict.direction,
            MonotoneClass::NonIncreasing | MonotoneClass::Both
        ),
    };
    if satisfied {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run_plot(args: PlotArgs) -> ExitCode {
    let rows = match csv::read_pairs(&args.input) {
        Ok(rows) => rows,
        Err(csv::ReadError::Io(e)) => {
            return io_failure(format!("cannot read {}: {e}", args.input.display()))
        }
        Err(e) => return usage(format!("{}: {e}", args.input.display())),
    };
    let points: Vec<(f64, f64)> = rows
        .into_iter()
        .map(|(t, p)| (Angle::new(t).radians(), Angle::new(p).radians()))
        .collect();
    let path = args.output.unwrap_or_else(|| default_output("plot.svg"));
    match std::fs::write(&path, svg::scatter(&points)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => io_failure(format!("cannot write {}: {e}", path.display())),
    }
}

/// Parses `pi` expressions: a plain number, or `[coef]pi[/denom]` with
/// an optional sign, so `pi`, `pi/3`, `3pi/2`, `-pi/4`, `0.5pi` all work.
fn parse_angle_expr(text: &str) -> Result<f64, String> {
    let trimmed = text.trim();
    let (sign, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, trimmed),
    };
    let value = if let Some(at) = body.find("pi") {
        let (coef_text, rest) = body.split_at(at);
        let tail = &rest[2..];
        let coef: f64 = if coef_text.is_empty() {
            1.0
        } else {
            coef_text
                .parse()
                .map_err(|_| format!("`{text}` has a bad coefficient before `pi`"))?
        };
        let denom: f64 = if tail.is_empty() {
            1.0
        } else if let Some(d) = tail.strip_prefix('/') {
            d.parse()
                .map_err(|_| format!("`{text}` has a bad denominator after `pi/`"))?
        } else {
            return Err(format!("`{text}` is not a pi expression like 3pi/2"));
        };
        if denom == 0.0 {
            return Err(format!("`{text}` divides by zero"));
        }
        coef * PI / denom
    } else {
        body.parse::<f64>()
            .map_err(|_| format!("`{text}` is neither a number nor a pi expression"))?
    };
    let signed = sign * value;
    if signed.is_finite() {
        Ok(signed)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

/// Rounds to 15 significant digits and prints the shortest decimal
/// that parses back to the rounded value.
fn fmt15(value: f64) -> String {
    let rounded: f64 = format!("{value:.14e}").parse().expect("own format");
    format!("{rounded}")
}

fn check_range(flag: &str, value: f64, lo: f64, hi: f64) -> Result<(), String> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(format!("{flag} must lie in [{lo}, {hi}], got {value}"))
    }
}

fn default_output(file: &str) -> PathBuf {
    match env::var_os("CIRCOPULA_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(file),
        None => PathBuf::from(file),
    }
}

fn usage(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn io_failure(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}
