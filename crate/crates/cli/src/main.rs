use std::process::ExitCode;

use clap::Parser;
use sigmalat::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sigmalat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
