mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use log::error;

use lad_core::ErrorKind;

/// Why a run did not succeed; each variant has a fixed exit code.
#[derive(Debug)]
pub enum Failure {
    Core(lad_core::Error),
    Io(String),
    Usage(String),
}

impl From<lad_core::Error> for Failure {
    fn from(e: lad_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.kind() == ErrorKind::Resource => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(m) | Failure::Usage(m) => f.write_str(m),
        }
    }
}

pub enum Status {
    Verified,
    /// An equality or inequality check failed (exit 1).
    CheckFailed,
    /// Declarations did not validate (exit 2); the report explains.
    Invalid(String),
}

/// A rendered report and the verdict it carries.
pub struct Outcome {
    pub report: String,
    pub status: Status,
}

fn emit(out: &Outcome, path: Option<&std::path::Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, &out.report)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.report.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let level = match cli.common.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    let result = commands::run(&cli).and_then(|out| {
        emit(&out, cli.common.output.as_deref())?;
        Ok(out.status)
    });
    match result {
        Ok(Status::Verified) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Ok(Status::Invalid(msg)) => {
            error!("{msg}");
            ExitCode::from(2)
        }
        Err(f) => {
            error!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
