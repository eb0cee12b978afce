use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ratexp", version, about = "Guaranteed rational enclosures of exponentials and logarithms")]
pub struct Cli {
    /// Absolute width bound for every enclosure, e.g. 1e-6 or 1/1000.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub prec: Option<String>,

    /// Width at most 10^-n, printed with certified digits where possible.
    #[arg(long, global = true)]
    pub digits: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Print certified digits of e (default 12 with no --digits).
    E,
    /// Emit curve, lattice and tangent data for y = a^x.
    Figures {
        /// Comma-separated bases; `e` is accepted.
        #[arg(long, value_delimiter = ',', default_value = "1/2,2,5,e")]
        bases: Vec<String>,
        /// Abscissa range as LO,HI.
        #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 61)]
        samples: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every identity and inequality sweep.
    Crosscheck {
        #[arg(long, default_value_t = 500)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum EvalKind {
    /// a^q
    Pow {
        a: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// ln x from the difference-quotient bracket
    Ln { x: String },
    /// log_b x; b may be `e`
    Log { base: String, x: String },
    /// e^x by the series and as a power of e
    Exp {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// ln x as the integral of 1/t from 1 to x
    IntegralLn { x: String },
    /// (1 + x/n)^n, exact
    Compound {
        #[arg(allow_hyphen_values = true)]
        x: String,
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
