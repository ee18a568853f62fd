use std::process::ExitCode;

use clap::Parser;

use symtc_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.status.code());
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let rendered = match report.render(cli.format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.status.code());
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::BadArguments.code());
            }
            if report.command == "plan" {
                let r = report.result();
                eprintln!("rule {}, endpoint residual {}", r["rule"], r["endpoint_residual"]);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.status.code())
}
