use std::process::ExitCode;

use clap::Parser;
use gyroball::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::run(&args) {
        Ok(out) => {
            println!("{}", out.json);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("gyroball: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
