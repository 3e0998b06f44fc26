mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::CliError;

fn run() -> Result<i32, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return Ok(code);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w as usize);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Resource(format!("cannot start worker pool: {e}")))?;
    let outcome = pool.install(|| commands::execute(&cli.command))?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    if let Err(e) = outcome.output.write(cli.format, &mut lock).and_then(|_| lock.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            return Err(CliError::Resource(format!("write failed: {e}")));
        }
    }
    Ok(if outcome.failed { 1 } else { 0 })
}

fn main() -> ExitCode {
    let code = match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
