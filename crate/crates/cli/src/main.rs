use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod error;
mod examples;
mod output;
mod spec;

use error::{CliError, CliResult};
use spec::WalkSpecDocument;

/// Exact analysis of random walks on finitely-generated abelian groups.
#[derive(Debug, Parser)]
#[command(name = "dancewalk", version)]
struct Cli {
    /// Walk specification as JSON: a file path, or `-` for standard input.
    #[arg(long, global = true, value_name = "PATH|-")]
    spec: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Walk subgroup, dance normalization, Omega, spectral gap and classification.
    Analyze,
    /// Exact convolution power p^(n).
    Convolve {
        #[arg(long)]
        n: u64,
    },
    /// Exact p^(n) against the attractor for each requested n.
    Compare {
        /// Comma-separated list of steps.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Attractor values on the live-coset window at step n.
    Attractor {
        #[arg(long)]
        n: u64,
    },
    /// Exact total variation to the uniform distribution on the moving coset.
    Tv {
        #[arg(long)]
        n: u64,
    },
    /// Unimodular change of coordinates flattening a point set.
    Twist {
        /// Points as JSON, for example `[[1,0],[0,1]]`.
        #[arg(long)]
        points: String,
    },
    /// Sample paths with a seeded generator.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        paths: u64,
    },
    /// Run a named scenario and check it against embedded expected values.
    Examples {
        /// One of: z12, z9-a1b3, z9-a1b4, z9-a0b3, z4z6, z4z6-table, elevator1, elevator2, spitzer.
        name: String,
    },
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Invariant(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn load(spec: &Option<String>) -> CliResult<dancewalk::measure::Distribution> {
    let path = spec
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --spec PATH|-".into()))?;
    WalkSpecDocument::load(path)?.to_distribution()
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("DANCEWALK_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("DANCEWALK_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invariant(e.to_string()))
}

fn run(cli: &Cli) -> CliResult<String> {
    configure_threads()?;
    match &cli.command {
        Command::Analyze => json(&commands::analyze(&load(&cli.spec)?)?),
        Command::Convolve { n } => json(&commands::convolve(&load(&cli.spec)?, *n)),
        Command::Compare { n, format } => {
            let p = load(&cli.spec)?;
            let records = commands::compare(&p, n)?;
            match format {
                Format::Json => json(&records),
                Format::Csv => commands::compare_csv(&records, p.group().dim()),
            }
        }
        Command::Attractor { n } => json(&commands::attractor(&load(&cli.spec)?, *n)?),
        Command::Tv { n } => json(&commands::tv(&load(&cli.spec)?, *n)?),
        Command::Twist { points } => json(&commands::twist(points)?),
        Command::Sample { n, seed, paths } => {
            json(&commands::sample(&load(&cli.spec)?, *n, *seed, *paths))
        }
        Command::Examples { name } => {
            let golden = examples::run(name)?;
            let mut text = golden.lines.join("\n");
            text.push('\n');
            if golden.failures > 0 {
                print!("{text}");
                return Err(CliError::Mismatch(format!(
                    "{name}: {} check(s) failed",
                    golden.failures
                )));
            }
            text.push_str(&format!("{name}: all {} checks passed\n", golden.lines.len()));
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
