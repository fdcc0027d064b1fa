//! Command-line front end for derizero: text formats, reports and the
//! worked-example corpus.

pub mod commands;
pub mod corpus;
pub mod formats;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use commands::{Cli, CliError};

/// Exit code for malformed input or usage.
pub const EXIT_PARSE: i32 = 64;
/// Exit code for an exhausted enumeration budget.
pub const EXIT_BUDGET: i32 = 65;
/// Exit code for any other failure.
pub const EXIT_ERROR: i32 = 70;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::execute(&cli) {
        Ok((code, text)) => Output { code, stdout: text, stderr: String::new() },
        Err(e) => Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
