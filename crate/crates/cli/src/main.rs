use std::process::ExitCode;

use clap::Parser;
use sspforge_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if !cli.quiet {
        eprint!("{}", report.summary());
    }
    let json = report.to_json();
    match &cli.report {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
