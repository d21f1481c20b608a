//! Command-line front end for the nilrigid analyses.
//!
//! [`run`] takes the argument list and returns the text for stdout and stderr
//! with the exit code, so that the binary and the tests share one path.
//! Exit codes: 0 success, 1 parse error, 2 invalid automorphism, lattice or
//! analysis precondition, 3 undecided.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use error::CliError;
pub use input::{BracketEntry, Format, InputDocument, Loaded, RatValue, Source};

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "nilrigid", version, about = "Lyapunov spectrum rigidity of Anosov nilmanifold automorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra (antisymmetry, Jacobi, nilpotency) and the automorphism.
    Validate(Common),
    /// Grading and certified spectrum.
    Analyze(Common),
    /// Rigidity verdict: RIGID, NOT RIGID, INAPPLICABLE or UNDECIDED.
    Verdict(Common),
    /// Lower central series and the grading by spectral factors.
    Grading(Common),
    /// Weak-distance scaling, escape speeds and stable/unstable brackets.
    GeometryCheck(Common),
    /// Shear data and the Fourier witness against Lipschitz conjugacy.
    PerturbWitness(PerturbArgs),
    /// Print a built-in example as an input document.
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input document (TOML, or JSON by extension).
    pub input: Option<PathBuf>,
    /// Built-in example instead of an input file.
    #[arg(long)]
    pub example: Option<String>,
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
    /// Certification radius for eigenvalues.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub common: Common,
    /// Power of the base map in the test function.
    #[arg(long = "K", default_value_t = 5)]
    pub k: usize,
    /// Frequency of the mode `cos 2π⟨m, x⟩`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mode: Option<Vec<i64>>,
    /// Search the inverse automorphism only.
    #[arg(long)]
    pub invert: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    /// One of smale, free32, heisenberg, cat2.
    pub name: String,
    /// Emit JSON instead of TOML.
    #[arg(long)]
    pub json: bool,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: 0 }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { stdout: String::new(), stderr: text, code: 1 },
            };
        }
    };
    commands::dispatch(&cli.command)
}
