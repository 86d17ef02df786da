//! `bergman`: command-line experiments for multiplication operators between
//! weighted Bergman spaces. Every subcommand prints one report (JSON by
//! default, CSV on request) to stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 2 invalid parameters or domain errors, 3 numeric
//! non-convergence.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "bergman", version, about = "Weighted Bergman space multiplier norms and related checks")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    /// Series truncation / matrix size; commands pick their own default when unset.
    #[arg(long, env = "BERGMAN_TRUNC", global = true)]
    trunc: Option<usize>,
    /// Tolerance for commands that take one (e.g. distance to the unit circle).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Report `runtime_ms` as null so that reruns are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm of a single function: Bergman series, Dirichlet, disk quadrature or growth.
    #[command(allow_negative_numbers = true)]
    Norm(commands::NormArgs),
    /// Lower bound (and closed form when known) for the multiplier norm of a symbol.
    #[command(allow_negative_numbers = true)]
    MultNorm(commands::MultNormArgs),
    /// Closed-form squared norm of S(κ) from A²_α to A²_{α+4}.
    #[command(allow_negative_numbers = true)]
    KoebeTable(commands::KoebeTableArgs),
    /// Closed-form squared norm of (1-z²)^{-(β-α)/2} from A²_α to A²_β.
    #[command(allow_negative_numbers = true)]
    G0Table(commands::G0TableArgs),
    /// Rayleigh quotients of a symbol at the test functions (1 - r z^k)^{-λ}.
    #[command(allow_negative_numbers = true)]
    TestFamily(commands::TestFamilyArgs),
    /// Norms of (1 - r z^k)^{-λ} against their predicted growth as r → 1.
    #[command(allow_negative_numbers = true)]
    Asymptotics(commands::AsymptoticsArgs),
    /// Schwarzian and pre-Schwarzian derivative of a rational map or series.
    #[command(allow_negative_numbers = true)]
    Schwarzian(commands::MapArgs),
    /// Critical points of a rational map on the unit circle.
    #[command(allow_negative_numbers = true)]
    CriticalPoints(commands::MapArgs),
    /// Leading Laurent coefficient of S(R) (or of the given function) at a pole.
    #[command(allow_negative_numbers = true)]
    Laurent(commands::LaurentArgs),
    /// Weighted Hardy inequality for Riemann–Liouville integrals.
    #[command(allow_negative_numbers = true)]
    Hardy(commands::HardyArgs),
    /// Laplace isometry between weighted L² on (0, ∞) and the half-plane Bergman space.
    #[command(allow_negative_numbers = true)]
    LaplaceCheck(commands::LaplaceArgs),
    /// Integral means spectrum by regression over r = 1 - 2^{-k}.
    #[command(allow_negative_numbers = true)]
    Spectrum(commands::SpectrumArgs),
    /// Norms of the Volterra-type operators I_g and J_g.
    #[command(allow_negative_numbers = true)]
    Volterra(commands::VolterraArgs),
    /// Remainder integrals T1..T4 of the test-family lower-bound argument.
    #[command(allow_negative_numbers = true)]
    ClaimProbe(commands::ClaimArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = commands::run(&cli.command, &cli.global);
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bergman: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    report.meta.runtime_ms = (!cli.global.reproducible).then(|| started.elapsed().as_secs_f64() * 1e3);
    let text = match cli.global.output {
        Output::Json => report.to_json(),
        Output::Csv => match report.to_csv() {
            Ok(t) => t,
            Err(e) => {
                eprintln!("bergman: {}", CliError::Output(e.to_string()));
                return ExitCode::from(1);
            }
        },
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
