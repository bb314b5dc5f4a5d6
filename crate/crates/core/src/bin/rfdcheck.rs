use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use rfd_core::cli::{error_status, execute, exit_status, ExecOptions, RunConfig};

/// Build exact matrix models of semigroup operator algebras and check their
/// identities.
#[derive(Debug, Parser)]
#[command(name = "rfdcheck", version)]
struct Args {
    /// Run configuration (JSON); read from standard input when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on the number of words visited while enumerating.
    #[arg(long, default_value_t = 1_000_000)]
    max_words: u64,
    /// Relative tolerance for iterative operator norms.
    #[arg(long, default_value_t = 1e-9)]
    norm_tol: f64,
    /// Record wall-clock time in the report's `ms` field (makes reports
    /// differ between runs).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("rfdcheck: cannot read config: {e}");
            return ExitCode::from(2);
        }
    };
    let config = match RunConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rfdcheck: {e}");
            return ExitCode::from(error_status(&e) as u8);
        }
    };
    let opts = ExecOptions {
        max_words: args.max_words,
        norm_tol: args.norm_tol,
    };
    let start = Instant::now();
    let mut outcome = execute(&config, opts);
    if let Ok(report) = &mut outcome {
        if args.timing {
            report.ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
    }
    let status = exit_status(&outcome);
    match &outcome {
        Ok(report) => {
            let json = report.to_json();
            let target = args.out.as_ref().or(config.output.as_ref());
            match target {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, json) {
                        eprintln!("rfdcheck: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{json}"),
            }
            for check in report.failed() {
                eprintln!("rfdcheck: check failed: {} ({})", check.name, check.witness);
            }
        }
        Err(e) => eprintln!("rfdcheck: {e}"),
    }
    ExitCode::from(status as u8)
}
