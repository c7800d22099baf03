//! `anglat`: evaluate angular lattice sums and reproduce the analyses built
//! on them from the command line.
//!
//! Exit codes: 0 success, 1 numerical failure or failed check, 2 usage error.

mod commands;
mod parse;
mod selfcheck;

use std::path::PathBuf;
use std::process::ExitCode;

use anglat_core::Complex64;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "anglat", version, about = "Angular lattice sums and the zeros of their combinations")]
pub struct Cli {
    /// Worker threads (overrides ANGLAT_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(subcommand)]
    command: Command,
}

/// Truncation settings shared by every command.
#[derive(Args, Debug, Clone)]
pub struct PolicyArgs {
    /// Relative change accepted between successive truncations.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Starting cutoff P of the Bessel double sum.
    #[arg(long, global = true, default_value_t = 8)]
    pub p_cap: usize,
    /// Use exactly --p-cap instead of doubling until stable.
    #[arg(long, global = true)]
    pub fixed_p: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one lattice sum or L-function at s.
    Eval(EvalArgs),
    /// Evaluate Δ₃(2,2m;s).
    Delta3(Delta3Args),
    /// List critical-line zeros of one family as CSV.
    Zeros(ZerosArgs),
    /// Zero counts per interval for ζ, L₋₄, C(1,4), C(1,8), C(1,12).
    Table1(Table1Args),
    /// Spacing histogram of one family's zeros against the Wigner surmise, as CSV.
    Hist(HistArgs),
    /// Null contours of Re Δ₃ and Im Δ₃ on a grid, as JSON.
    Contours(ContoursArgs),
    /// Run the invariant checks of every module.
    Selfcheck(SelfcheckArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFamily {
    /// C(n,m;s): cosⁿ(mθ) numerator.
    #[value(name = "C")]
    Cos,
    /// S(n,m;s): sinⁿ(mθ) numerator.
    #[value(name = "S")]
    Sin,
    /// p₁^{2a} p₂^{2b} numerator.
    #[value(name = "M")]
    Mixed,
    /// C(0,1;s).
    C01,
    /// C(2n,1;s).
    C2n1,
    /// C(1,4m;s).
    C14,
    Zeta,
    Beta,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub family: EvalFamily,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub a: u32,
    #[arg(long, default_value_t = 0)]
    pub b: u32,
}

#[derive(Args, Debug)]
pub struct Delta3Args {
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub s: Complex64,
    /// Also report C̃ and S̃.
    #[arg(long)]
    pub parts: bool,
    /// Also report the functional-equation residual.
    #[arg(long)]
    pub residual: bool,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    /// zeta, beta4, c01, c14 (with --m), c18, c112, ...
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    #[arg(long)]
    pub tmax: f64,
    #[arg(long, default_value_t = anglat_core::zeroscan::DEFAULT_STEP)]
    pub step: f64,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Table1Args {
    #[arg(long, default_value_t = 300.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 10.0)]
    pub width: f64,
    #[arg(long, default_value_t = anglat_core::zeroscan::DEFAULT_STEP)]
    pub step: f64,
    /// Machine-readable CSV instead of the aligned layout.
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HistArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 300.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 0.2)]
    pub bin: f64,
    #[arg(long, default_value_t = anglat_core::zeroscan::DEFAULT_STEP)]
    pub step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Re,
    Im,
    Both,
}

#[derive(Args, Debug)]
pub struct ContoursArgs {
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
    pub sigma: (f64, f64),
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true)]
    pub t: (f64, f64),
    #[arg(long, default_value_t = 640)]
    pub nx: usize,
    #[arg(long, default_value_t = 800)]
    pub nt: usize,
    #[arg(long, value_enum, default_value_t = FieldChoice::Both)]
    pub field: FieldChoice,
    /// Trace the large-σ prefactor instead of Δ₃ (needs σ ≥ 3.5).
    #[arg(long)]
    pub prefactor: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Perturb the leading coefficient of T₈ before the C(1,8) check.
    Chebyshev,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    /// Cheaper subset of the checks.
    #[arg(long)]
    pub quick: bool,
    /// Deliberately break one ingredient to confirm the checks catch it.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

fn threads(cli: Option<usize>) -> Result<Option<usize>, String> {
    if let Some(n) = cli {
        return Ok(Some(n));
    }
    match std::env::var("ANGLAT_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("ANGLAT_THREADS must be a positive integer, got '{v}'")),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match threads(cli.threads) {
        Ok(Some(0)) => {
            eprintln!("error: worker count must be at least 1");
            return ExitCode::from(2);
        }
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("error: cannot start worker pool: {e}");
                return ExitCode::from(1);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let policy = match commands::policy(&cli.policy) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a, &policy),
        Command::Delta3(a) => commands::delta3(&a, &policy),
        Command::Zeros(a) => commands::zeros(&a, &policy),
        Command::Table1(a) => commands::table1(&a, &policy),
        Command::Hist(a) => commands::hist(&a, &policy),
        Command::Contours(a) => commands::contours(&a, &policy),
        Command::Selfcheck(a) => selfcheck::run(&a, &policy),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
