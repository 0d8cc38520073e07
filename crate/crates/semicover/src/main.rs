use std::process::ExitCode;

use clap::Parser;
use semicover::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::execute(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("semicover: {e}");
            ExitCode::from(2)
        }
    }
}
