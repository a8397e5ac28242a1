use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use theodorus_cli::{run, CliError, Command, Format, RunConfig};

/// Spiral of Theodorus: point tables, non-collinearity certificates, plots.
#[derive(Debug, Parser)]
#[command(name = "theodorus", version)]
struct Args {
    /// What to run.
    #[arg(value_enum)]
    command: Command,

    /// Largest spiral index (default: 8 for plot, 100 otherwise).
    #[arg(long)]
    max_n: Option<u64>,

    /// Initial working precision in bits.
    #[arg(long, default_value_t = 64)]
    precision: u32,

    /// Highest precision the certifier may escalate to.
    #[arg(long, env = "THEODORUS_PRECISION_CAP", default_value_t = 8192)]
    precision_cap: u32,

    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Significant digits for interval endpoints.
    #[arg(long, default_value_t = 30)]
    digits: usize,

    /// Worker threads for certify and audit.
    #[arg(long)]
    workers: Option<usize>,
}

impl Args {
    fn into_config(self) -> RunConfig {
        let default_n = if self.command == Command::Plot {
            8
        } else {
            100
        };
        RunConfig {
            command: self.command,
            max_n: self.max_n.unwrap_or(default_n),
            precision_bits: self.precision,
            precision_cap: self.precision_cap,
            output_path: self.out,
            format: self.format,
            digits: self.digits,
            workers: self
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cfg = Args::parse().into_config();
    let result = run(&cfg).and_then(|outcome| {
        emit(&cfg, &outcome.body)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
