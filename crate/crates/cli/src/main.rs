mod args;
mod commands;
mod config;
mod output;

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

/// Failures, split by exit code: usage problems exit 2, data and I/O problems 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    /// A failure while reading `path`.
    pub fn data(path: &Path, e: streamlens::Error) -> Self {
        match e {
            streamlens::Error::Io(_) => CliError::Io(format!("{}: {e}", path.display())),
            _ => CliError::Data(format!("{}: {e}", path.display())),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<streamlens::Error> for CliError {
    fn from(e: streamlens::Error) -> Self {
        match e {
            streamlens::Error::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn threads_from_env() -> Result<(), CliError> {
    match std::env::var("STREAMLENS_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v.trim().parse().map_err(|_| {
                CliError::Usage(format!("STREAMLENS_THREADS must be a non-negative integer, got `{v}`"))
            })?;
            streamlens::configure_threads(n).map_err(|e| CliError::Usage(e.to_string()))
        }
        _ => Ok(()),
    }
}

fn run() -> Result<(), CliError> {
    let argv = config::expand(std::env::args_os().collect()).map_err(CliError::Usage)?;
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            std::process::exit(if code == 0 { 0 } else { 2 });
        }
    };
    threads_from_env()?;
    for path in commands::run(cli.command)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("streamlens: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
