use std::io::Write;
use std::process::ExitCode;

use beckner_cli::args::Command;
use beckner_cli::{exit_code, run, write_csv, write_json, Cli, Format, Status};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match cli.format {
        Format::Json => write_json(&records, &mut out),
        Format::Csv => write_csv(&records, &mut out),
    };
    if let Err(e) = written.map_err(|e| e.to_string()).and_then(|_| out.flush().map_err(|e| e.to_string())) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for r in &records {
        for d in r.diagnostics.iter().filter(|_| r.status == Status::Error) {
            eprintln!("{}: {d}", r.command);
        }
    }
    if let Command::Verify(_) = cli.command {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        eprintln!("verify: {} passed, {} failed, {} errors", count(Status::Ok), count(Status::Fail), count(Status::Error));
    }
    ExitCode::from(exit_code(&records) as u8)
}
