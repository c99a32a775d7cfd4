use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use afmm::{generate, multiply, GeneratorSpec, KernelId, Seed, ValueDistribution, DEFAULT_STRASSEN_CUTOFF};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::harness::run_plan_with;
use crate::plan::BenchArgs;
use crate::records::{emit_csv, load_csv, write_csv};
use crate::report::{emit_plot_data, emit_table};
use crate::textfmt::{format_matrix, read_matrix, write_matrix};
use crate::verify::{run_suite, Suite};

/// Matrix multiplication by repeated addition: kernels, benchmarks, reports.
#[derive(Debug, Parser)]
#[command(name = "afmm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random matrix in the text format.
    Gen(GenArgs),
    /// Multiply two matrix files and print the product and operation counts.
    Mul(MulArgs),
    /// Run an experiment plan and emit one CSV row per timed run.
    Bench(BenchArgs),
    /// Summarize a benchmark CSV as a markdown table of mean times.
    Report {
        csv: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write per-configuration `n mean stddev` series for plotting.
    PlotData {
        csv: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run an acceptance suite; exits nonzero if any criterion fails.
    Verify {
        /// counts, oracle, scaling, strassen-compare, timing, report or all.
        suite: Suite,
    },
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
    /// Integer entries uniform on {1, …, 2·mu − 1}.
    #[arg(long = "mu", conflicts_with = "real")]
    pub mu_prime: Option<f64>,
    /// Real entries uniform on [low, high].
    #[arg(long)]
    pub real: bool,
    #[arg(long, default_value_t = 0.5)]
    pub low: f64,
    #[arg(long, default_value_t = 1.5)]
    pub high: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct MulArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    #[arg(long, default_value = "afmm-a")]
    pub kernel: KernelId,
    #[arg(long, default_value_t = DEFAULT_STRASSEN_CUTOFF)]
    pub cutoff: usize,
}

const USAGE_ERROR: u8 = 2;

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => {
            let values = if args.real {
                ValueDistribution::Real { low: args.low, high: args.high }
            } else {
                let mu = args.mu_prime.unwrap_or(1.0);
                GeneratorSpec::integer(args.n, args.density, mu)?.values
            };
            let m = generate(&GeneratorSpec::new(args.n, args.density, values)?, Seed(args.seed))?;
            match args.out {
                Some(path) => write_matrix(&m, &path)?,
                None => io::stdout().write_all(format_matrix(&m).as_bytes())?,
            }
        }
        Command::Mul(args) => {
            let x = read_matrix(&args.left)?;
            let y = read_matrix(&args.right)?;
            let r = multiply(args.kernel, &x, &y, args.cutoff)
                .with_context(|| format!("{} failed", args.kernel))?;
            let mut out = io::stdout().lock();
            out.write_all(format_matrix(&r.product).as_bytes())?;
            writeln!(out, "# additions {}", r.counts.additions)?;
            writeln!(out, "# multiplications {}", r.counts.multiplications)?;
            writeln!(out, "# zero_skips {}", r.counts.zero_skips)?;
        }
        Command::Bench(args) => {
            let plan = match args.to_plan() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(USAGE_ERROR));
                }
            };
            let records = run_plan_with(&plan, |r| {
                if !r.valid {
                    eprintln!(
                        "warning: n={} rep={} ran {:.3e} s, below timer granularity; excluded",
                        r.n, r.rep, r.elapsed_seconds
                    );
                }
            })?;
            let valid: Vec<_> = records.into_iter().filter(|r| r.valid).collect();
            match args.out {
                Some(path) => emit_csv(&valid, &path)?,
                None => write_csv(&valid, io::stdout().lock())?,
            }
        }
        Command::Report { csv, out } => {
            let table = emit_table(&load_csv(&csv)?)?;
            match out {
                Some(path) => std::fs::write(&path, table).with_context(|| path.display().to_string())?,
                None => print!("{table}"),
            }
        }
        Command::PlotData { csv, out_dir } => {
            for path in emit_plot_data(&load_csv(&csv)?, &out_dir)? {
                println!("{}", path.display());
            }
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(suite);
            let mut failed = 0;
            for o in &outcomes {
                println!("{o}");
                failed += usize::from(!o.passed);
            }
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}
