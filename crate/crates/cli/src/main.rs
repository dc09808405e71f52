mod bench;
mod cli;
mod commands;
mod io;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use report::Diagnostic;

fn kind_of(e: &anyhow::Error) -> &'static str {
    match e.downcast_ref::<specrad::Error>() {
        Some(specrad::Error::InvalidInput(_)) => "invalid_input",
        Some(specrad::Error::NumericalFailure { .. }) => "numerical_failure",
        Some(specrad::Error::Overflow { .. }) => "overflow",
        Some(specrad::Error::EnumerationCap { .. }) => "enumeration_cap",
        Some(specrad::Error::Lp { .. }) => "lp_failure",
        Some(specrad::Error::Restart { .. }) => "restart_failure",
        None if e.downcast_ref::<std::io::Error>().is_some() => "io",
        None if e.downcast_ref::<serde_json::Error>().is_some() => "invalid_input",
        None => "error",
    }
}

fn fail(error: String, kind: &'static str) -> ExitCode {
    let diag = Diagnostic { error, kind };
    println!(
        "{}",
        serde_json::to_string(&diag).expect("diagnostic serializes")
    );
    eprintln!("error: {}", diag.error);
    ExitCode::from(1)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e.to_string().trim().to_string(), "usage"),
    };
    let result = match &cli.command {
        Command::Lsr(a) => commands::lsr(a, &argv),
        Command::Jsr(a) => commands::jsr(a, &argv),
        Command::Bench(a) => bench::bench(a).map(|csv| (csv, 0)),
        Command::Gen(a) => commands::gen(a),
    };
    match result {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            let kind = kind_of(&e);
            fail(format!("{e:#}"), kind)
        }
    }
}
