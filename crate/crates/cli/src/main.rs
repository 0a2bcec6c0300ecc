//! `rpf`: exact computations with Hecke groups and rational period functions.
//!
//! Exit status is 0 on success, 1 when `verify` or `audit` reports a failing
//! function, and 2 on a usage or input error. Results go to stdout and
//! diagnostics to stderr.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rpf", version, about = "Hecke groups, λ-binary quadratic forms and rational period functions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,

    /// Interval precision in bits for numeric cross-checks.
    #[arg(long, env = "RPF_PRECISION_BITS", default_value_t = 128, global = true,
          value_parser = clap::value_parser!(u32).range(32..=4096))]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal polynomial of λ_p, coefficients in descending powers.
    Minpoly(PArg),
    /// The generators S, T, U of G_p and the powers U^n for 0 ≤ n ≤ p.
    Generators(PArg),
    /// The Φ_p cycle of a simple form.
    Cycle {
        #[command(flatten)]
        p: PArg,
        /// Seed form A,B,C; each coefficient is rat(:rat)* in powers of λ.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Cycles reached from hyperbolic words U^{j1}T…U^{jm}T, sorted by class tag.
    Classes {
        #[command(flatten)]
        p: PArg,
        /// Maximal number of U^jT blocks in the generating words.
        #[arg(long, default_value_t = 4)]
        word_len: usize,
    },
    /// Build a rational period function from a spec file.
    Build {
        /// Spec file, or - for stdin.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Decide both defining relations exactly and audit the poles.
    Verify(CheckArgs),
    /// Pole audit only.
    Audit(CheckArgs),
}

#[derive(Args, Debug)]
struct PArg {
    /// Hecke group index p ≥ 3.
    #[arg(long)]
    p: i64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["spec", "function"])))]
pub struct CheckArgs {
    /// Spec file to build and check, or - for stdin.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Function file: the output of `rpf build` or a bare rational function.
    #[arg(long)]
    function: Option<PathBuf>,
    /// Expected p; must agree with the input.
    #[arg(long)]
    p: Option<i64>,
    /// Weight parameter k (weight 2k).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: Option<u32>,
    /// Enumerate audit candidates from words of this length when the input
    /// names none.
    #[arg(long)]
    word_len: Option<usize>,
    /// Also evaluate both relations at N random points (never affects the verdict).
    #[arg(long, value_name = "N")]
    numeric_check: Option<usize>,
}

pub enum Outcome {
    Ok(String),
    Failed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.output;
    let result = match &cli.command {
        Command::Minpoly(a) => commands::minpoly(a.p, fmt),
        Command::Generators(a) => commands::generators(a.p, fmt),
        Command::Cycle { p, form } => commands::cycle(p.p, form, fmt),
        Command::Classes { p, word_len } => commands::classes(p.p, *word_len, fmt),
        Command::Build { spec } => commands::build(spec, fmt),
        Command::Verify(a) => commands::verify(a, fmt, cli.precision_bits),
        Command::Audit(a) => commands::audit(a, fmt),
    };
    match result {
        Ok(Outcome::Ok(s)) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(s)) => {
            println!("{s}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
