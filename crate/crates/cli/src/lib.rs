//! Command-line surface of b0lab: argument handling, the result cache and
//! report emission.

pub mod cache;
pub mod commands;
pub mod config;
pub mod record;
pub mod source;

use std::fmt;
use std::io::Write;

pub use config::{Cli, RunConfig};
pub use record::ResultRecord;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    CapExceeded = 1,
    InvalidInput = 2,
    Mismatch = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::InvalidInput,
            message: msg.into(),
        }
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Mismatch,
            message: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<b0lab::Error> for CliError {
    fn from(e: b0lab::Error) -> Self {
        use b0lab::Error as E;
        let status = match e {
            E::SizeCap { .. } | E::ClassCap(_) | E::SearchBudget(_) => ExitStatus::CapExceeded,
            E::Guard(_) => ExitStatus::Mismatch,
            _ => ExitStatus::InvalidInput,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::invalid(e.to_string())
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = RunConfig::from(&cli.global);
    if let Some(j) = cfg.jobs {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let mut diag = Vec::new();
    let result = commands::dispatch(&cli.command, &cfg, &mut diag);
    for d in diag {
        let _ = writeln!(err, "warning: {d}");
    }
    match result {
        Ok(Outcome { text, status }) => {
            let _ = out.write_all(text.as_bytes());
            if let Some(e) = status {
                let _ = writeln!(err, "error: {}", e.message);
                return e.status as i32;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.status as i32
        }
    }
}

/// Rendered output plus an optional failure to report after printing it.
pub struct Outcome {
    pub text: String,
    pub status: Option<CliError>,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Self { text, status: None }
    }
}
