//! Command-line front end, configuration files and output formats for
//! `interest-core`.

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod output;
pub mod panel_csv;

pub use error::CliError;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code: 0 on success, 2 for input errors, 3 for computation
/// errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match cli::Cli::try_parse_from(args) {
        Ok(parsed) => parsed,
        Err(err) => {
            let text = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return err.exit_code();
        }
    };
    match commands::execute(&parsed, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}
