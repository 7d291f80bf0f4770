use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod figures;
mod output;
mod verify;

/// Exit status for malformed invocations (sysexits `EX_USAGE`).
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "expwell", version, allow_negative_numbers = true, about = "Exact and approximate solutions for exponential potential wells")]
pub struct Cli {
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Physical scales. Computation is always dimensionless; these only rescale
/// energies (by `U_0`) and positions (by `1/α`) on output. With `--mass`
/// the depth parameter follows from `a = sqrt(8 m U_0)/(ħ α)`, `ħ = 1`.
#[derive(Args, Debug, Clone, Copy)]
pub struct UnitArgs {
    #[arg(long, global = true, default_value_t = 1.0)]
    pub u0: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Well {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    Ii,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    GaussX,
    ExpX,
    GaussIi,
    Antisym,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Integral,
    Printed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    #[value(name = "1")]
    F1,
    #[value(name = "2")]
    F2,
    #[value(name = "3a")]
    F3a,
    #[value(name = "3b")]
    F3b,
    #[value(name = "4")]
    F4,
    #[value(name = "5")]
    F5,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Exact,
    Susy,
    Variational,
    Semiclassical,
    Scatter,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bound-state spectrum with parities.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long, value_enum)]
        well: Well,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Reflection on the symmetric well at one point, or a map over (a, beta).
    #[command(allow_negative_numbers = true)]
    Scatter {
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[command(subcommand)]
        map: Option<ScatterCommand>,
    },
    /// Partner hierarchy with grid verification of each rung.
    #[command(allow_negative_numbers = true)]
    Susy {
        #[arg(long, value_enum)]
        well: Well,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        emit_potentials: Option<PathBuf>,
    },
    /// Variational ground-state estimate for one trial family.
    #[command(allow_negative_numbers = true)]
    Variational {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: Option<f64>,
    },
    /// Semiclassical spectra compared with the exact one.
    #[command(allow_negative_numbers = true)]
    Semiclassical {
        #[arg(long, value_enum)]
        well: Well,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "wkb,jwkb,swkb")]
        schemes: Vec<String>,
        #[arg(long, value_enum, default_value_t = Form::Integral)]
        jwkb_form: Form,
    },
    /// Write the dataset behind one figure, with a manifest.
    Figure {
        #[arg(long, value_enum)]
        id: FigureId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an invariant suite; exit 2 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
pub enum ScatterCommand {
    /// `|r|²` on a Cartesian grid, written as (a, beta, R) triplets.
    #[command(allow_negative_numbers = true)]
    Map {
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long)]
        a_steps: usize,
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long)]
        beta_steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
    Verification(String),
}

impl From<expwell_core::Error> for Failure {
    fn from(e: expwell_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(format!("json: {e}"))
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
