use std::process::ExitCode;

use clap::Parser;
use multifan::app::{error_json, exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let err = match run(&cli) {
        Ok(out) => {
            let text = out.render();
            match &cli.out {
                Some(path) => match std::fs::write(path, text) {
                    Ok(()) => return ExitCode::SUCCESS,
                    Err(e) => multifan_core::Error::Invalid(format!("{}: {e}", path.display())),
                },
                None => {
                    print!("{text}");
                    return ExitCode::SUCCESS;
                }
            }
        }
        Err(e) => e,
    };
    eprintln!("{}", error_json(&err));
    ExitCode::from(exit_code(&err) as u8)
}
