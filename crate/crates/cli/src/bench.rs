use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;

use ore_curvature::{chi, xi_p_desing, PCurvOptions};

use crate::error::{CliError, CliResult, EXIT_INTERNAL, EXIT_INVARIANT};
use crate::input::{corpus_files, load, modular, select};

pub const CSV_HEADER: &str = "name,order,xdeg,d1,t_exact_ms,t_xi_desing_ms";

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of operator files, or one file.
    pub corpus: PathBuf,
    /// Runs averaged per operator.
    #[arg(long, default_value_t = 10)]
    pub repeat: usize,
    #[arg(long)]
    pub csv: bool,
    #[arg(long = "mod")]
    pub modp: Option<u64>,
    #[arg(long, default_value_t = 211)]
    pub prime_cap: u64,
    #[arg(long)]
    pub compose_lclm: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub name: String,
    pub order: usize,
    pub xdeg: usize,
    pub d1: usize,
    pub t_exact_ms: f64,
    pub t_xi_desing_ms: f64,
}

pub fn run_bench(args: &BenchArgs) -> CliResult<Vec<Row>> {
    if args.repeat == 0 {
        return Err(CliError::precondition("--repeat must be positive"));
    }
    let opts = PCurvOptions { prime_cap: args.prime_cap };
    let mut rows = Vec::new();
    for path in corpus_files(&args.corpus)? {
        let loaded = load(&path)?;
        let l = modular(&select(&loaded, args.compose_lclm)?, args.modp)?;
        let mut t_exact = 0.0;
        let mut t_xi = 0.0;
        let mut d1 = 0;
        for _ in 0..args.repeat {
            let t = Instant::now();
            let exact = chi(&l, &opts)?;
            t_exact += t.elapsed().as_secs_f64();
            let t = Instant::now();
            let xi = xi_p_desing(&l, &opts)?;
            t_xi += t.elapsed().as_secs_f64();
            if xi.prim_chi != exact.prim_chi {
                return Err(CliError::new(EXIT_INVARIANT, format!("pipelines disagree on {}", path.display())));
            }
            d1 = xi.d1;
        }
        let runs = args.repeat as f64;
        rows.push(Row {
            name: loaded.label(),
            order: l.order().unwrap_or(0),
            xdeg: l.x_degree(),
            d1,
            t_exact_ms: 1e3 * t_exact / runs,
            t_xi_desing_ms: 1e3 * t_xi / runs,
        });
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(internal)?;
    }
    for r in rows {
        w.serialize(r).map_err(internal)?;
    }
    w.flush().map_err(|e| CliError::new(EXIT_INTERNAL, e.to_string()))
}

fn internal(e: csv::Error) -> CliError {
    CliError::new(EXIT_INTERNAL, e.to_string())
}

pub fn write_table(rows: &[Row], mut out: impl Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::new(EXIT_INTERNAL, e.to_string());
    writeln!(out, "{:<24} {:>5} {:>5} {:>4} {:>12} {:>14}", "name", "order", "xdeg", "d1", "exact ms", "xi_desing ms")
        .map_err(io)?;
    for r in rows {
        writeln!(
            out,
            "{:<24} {:>5} {:>5} {:>4} {:>12.3} {:>14.3}",
            r.name, r.order, r.xdeg, r.d1, r.t_exact_ms, r.t_xi_desing_ms
        )
        .map_err(io)?;
    }
    Ok(())
}
