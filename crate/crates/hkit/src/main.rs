use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hkit::cli::{run, Cli, BUDGET_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_budget = std::env::var(BUDGET_ENV).ok();
    let job = match cli.into_job(env_budget.as_deref()) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("hkit: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&job);
    // a failed picture still leaves its report on stderr
    if outcome.svg.is_none() && job.format == hkit::cli::Format::Svg {
        eprint!("{}", outcome.report.to_json());
    }
    let text = outcome.output();
    let written = match &job.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("hkit: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.status as u8)
}
