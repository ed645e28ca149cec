mod args;
mod commands;
mod config;
mod error;
mod parallel;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::{CliError, EXIT_USAGE};

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("rbf: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn run() -> Result<i32, CliError> {
    let argv = config::expand(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return Ok(code);
        }
    };
    let threads = parallel::thread_budget()?;
    let out = commands::run(&cli.command, cli.format, threads)?;
    match &cli.output {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(out.code)
}
