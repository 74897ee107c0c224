//! Command-line front end. Every subcommand builds one emission and prints
//! it in the requested format; failures map to exit codes through
//! `Error::exit_code` (2 usage/domain, 3 size guard, 4 failed verification).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hermicode::emit::{self, Emission, Format};
use hermicode::prospector::Criterion;
use hermicode::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hermicode",
    version,
    about = "One-point algebraic-geometry codes on Hermitian curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: json, csv or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the size guards (distance enumeration, search width, table degree).
    #[arg(long)]
    force_size: bool,
}

#[derive(Subcommand)]
enum Command {
    /// L-polynomial, class number and the A-table with per-degree bound checks.
    Zeta {
        /// Base prime power; the curve lives over the field with q^2 elements.
        #[arg(long)]
        q: u64,
        /// Largest degree in the A-table.
        #[arg(long, default_value_t = 10)]
        kmax: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Parameters of the one-point code of pole degree t.
    Code {
        #[arg(long)]
        q: u64,
        /// Pole degree at infinity; must satisfy 0 <= t < q^3.
        #[arg(long)]
        t: u64,
        /// Run the exact minimum-distance enumeration.
        #[arg(long)]
        exact_distance: bool,
        /// Include the generator matrix in the emission.
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scan (l, t) pairs whose criterion certifies distance n - l + 1.
    Prospect {
        #[arg(long)]
        q: u64,
        /// Certifying criterion: prop23 (closed form) or exact (A-table).
        #[arg(long, default_value = "exact")]
        criterion: String,
        /// Keep only rows with dimension at least this value.
        #[arg(long, default_value_t = 1)]
        k_min: u64,
        /// Cap on t; defaults to 2g.
        #[arg(long)]
        t: Option<u64>,
        /// Cap on l; defaults to the full frontier scan.
        #[arg(long)]
        l: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the affine-places lemma on the toy q = 2 curve.
    VerifyLemma {
        /// Only q = 2 is in scope for the toy verifier.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Evaluation set size: the first points in canonical order.
        #[arg(long, default_value_t = 4)]
        eval: usize,
        /// Pole budget at infinity.
        #[arg(long)]
        s: u64,
        /// Number of affine places pulled out of the evaluation set.
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The distance-improvement profile at l = 2 places (needs q >= 4).
    Asymptotic {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Zeta { output, .. }
            | Command::Code { output, .. }
            | Command::Prospect { output, .. }
            | Command::VerifyLemma { output, .. }
            | Command::Asymptotic { output, .. } => output,
        }
    }
}

fn build(command: Command) -> Result<Emission> {
    match command {
        Command::Zeta { q, kmax, output } => emit::build_zeta(q, kmax, output.force_size),
        Command::Code {
            q,
            t,
            exact_distance,
            matrix,
            output,
        } => emit::build_code(q, t, exact_distance, matrix, output.force_size),
        Command::Prospect {
            q,
            criterion,
            k_min,
            t,
            l,
            output,
        } => {
            let criterion: Criterion = criterion.parse()?;
            emit::build_prospect(q, criterion, k_min, t, l, output.force_size)
        }
        Command::VerifyLemma { q, eval, s, m, .. } => emit::build_lemma(q, eval, s, m),
        Command::Asymptotic { q, .. } => emit::build_asymptotic(q),
    }
}

fn run(cli: Cli) -> Result<()> {
    let format: Format = cli.command.output().format.parse()?;
    let out = cli.command.output().out.clone();
    let emission = build(cli.command)?;
    let rendered = emit::render(&emission, format)?;
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{}", rendered),
    }
    Ok(())
}

fn main() {
    match run(Cli::parse()) {
        Ok(()) => {}
        Err(e) => {
            if matches!(e, Error::SizeGuard(_)) {
                eprintln!("error: {} (pass --force-size to lift the guard)", e);
            } else {
                eprintln!("error: {}", e);
            }
            std::process::exit(e.exit_code().into());
        }
    }
}
