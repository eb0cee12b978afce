//! Command implementations behind the `ratexp` binary.
//!
//! Exit codes: 0 success (inconclusive checks included), 1 when any check
//! is falsified, 2 for usage and domain errors.

pub mod args;
pub mod commands;
pub mod error;
pub mod figure_io;
pub mod report;

use clap::Parser;

use args::{Cli, Command};
use commands::Settings;
pub use error::CliError;
pub use report::RunReport;

pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let settings = Settings::resolve(cli.prec.as_deref(), cli.digits)?;
    match &cli.command {
        Command::Eval { kind } => commands::eval(kind, &settings),
        Command::E => commands::e(cli.digits.unwrap_or(12)),
        Command::Figures { bases, range, samples, format, out } => {
            commands::figures(bases, range, *samples, *format, out.as_deref(), &settings)
        }
        Command::Crosscheck { trials, seed } => commands::crosscheck(*trials, *seed, &settings),
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut stderr = report.timing_text();
            if report.falsified() {
                stderr.push_str("falsified checks present\n");
            }
            Outcome { code: report.exit_code(), stdout: report.text, stderr }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
