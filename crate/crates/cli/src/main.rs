use std::io::ErrorKind;
use std::process::ExitCode;

use clap::Parser;
use relkin_cli::cli::{run, Cli};
use relkin_cli::error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => ExitCode::from(code as u8),
        // Output piped into something like `head` that exited early.
        Err(CliError::Io(e)) if e.kind() == ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("relkin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
