//! `ore-curvature`: desingularization and p-curvature of recurrence operators.
//!
//! Exit codes: 0 ok, 1 invariant failure, 2 parse or input error,
//! 3 precondition, 4 resource limit, 5 internal error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ore_curvature_cli::bench::{run_bench, write_csv, write_table, BenchArgs};
use ore_curvature_cli::commands::{render, run_chi, run_desing, ChiArgs, DesingArgs};
use ore_curvature_cli::error::{CliError, CliResult, EXIT_INTERNAL, EXIT_INVARIANT};
use ore_curvature_cli::report::Report;
use ore_curvature_cli::verify::{run_verify, VerifyArgs};

#[derive(Debug, Parser)]
#[command(name = "ore-curvature", version, about = "Desingularization and p-curvature of recurrence operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Essential part lc1 and removable part rp1 of the leading coefficient.
    Desing(DesingArgs),
    /// Characteristic polynomial of the p-curvature and its denominator.
    Chi(ChiArgs),
    /// Run property suites over a corpus or random operators.
    Verify(VerifyArgs),
    /// Time the exact and the reduced-precision computation of prim(chi).
    Bench(BenchArgs),
}

fn emit(report: &Report, json: bool) -> CliResult<()> {
    let text = if json {
        serde_json::to_string_pretty(report).map_err(|e| CliError::new(EXIT_INTERNAL, e.to_string()))?
    } else {
        render(report)
    };
    out(&text);
    Ok(())
}

/// Prints a line; a closed pipe is not an error.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Desing(a) => emit(&run_desing(&a)?, a.json),
        Command::Chi(a) => emit(&run_chi(&a)?, a.json),
        Command::Verify(a) => {
            let res = run_verify(&a)?;
            if a.json {
                let text = serde_json::to_string_pretty(&res.summary)
                    .map_err(|e| CliError::new(EXIT_INTERNAL, e.to_string()))?;
                out(&text);
            } else {
                out(&format!(
                    "{} operators, {} checks passed, {} failed",
                    res.summary.operators, res.summary.passed, res.summary.failed
                ));
            }
            let mut err = std::io::stderr().lock();
            for (id, detail, text) in &res.failures {
                let _ = writeln!(err, "FAIL {id}: {detail}");
                let _ = writeln!(err, "counterexample: {text}");
            }
            match res.failures.len() {
                0 => Ok(()),
                n => Err(CliError::new(EXIT_INVARIANT, format!("{n} checks failed"))),
            }
        }
        Command::Bench(a) => {
            let rows = run_bench(&a)?;
            let stdout = std::io::stdout().lock();
            if a.csv {
                write_csv(&rows, stdout)
            } else {
                write_table(&rows, stdout)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ore_curvature_cli::error::EXIT_PARSE } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
