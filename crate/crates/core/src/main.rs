use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bcgsemo::algorithms::{run_with_observer, Algorithm, RunConfig, DEFAULT_BUDGET, DEFAULT_T_EPOCH};
use bcgsemo::benchmark::{pareto_front, scalarize, ProblemParams};
use bcgsemo::harness::{self, CsvTrace, RawRow, SweepConfig};
use bcgsemo::oracle::{self, VerifyOptions};
use bcgsemo::{Execution, RandomSource};

#[derive(Parser)]
#[command(name = "bcgsemo", version, about = "GSEMO and BC-GSEMO on the blockwise LeadingOnes benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single trial and print its raw CSV row.
    Run(RunArgs),
    /// Run a grid of trials and write raw and summary CSVs.
    Sweep(SweepArgs),
    /// Print the Pareto front as CSV.
    Front(InstanceArgs),
    /// Check the closed forms against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_algorithm)]
    algo: Algorithm,
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = DEFAULT_T_EPOCH)]
    t_epoch: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Snapshot period in evaluations.
    #[arg(long)]
    trace_every: Option<u64>,
    /// Where to write trace rows; stderr when omitted.
    #[arg(long, requires = "trace_every")]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML sweep description; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    summary: PathBuf,
    /// Worker threads (0 = one per core, 1 = sequential).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    k_values: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    r_values: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algorithms: Option<Vec<Algorithm>>,
    #[arg(long)]
    t_epoch: Option<u64>,
    #[arg(long)]
    runs_per_cell: Option<u64>,
    #[arg(long)]
    base_seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n enumerated by the front oracle (at most 20).
    #[arg(long, default_value_t = 16)]
    max_n: usize,
    /// Random pairs per parameter set for the comparator check.
    #[arg(long, default_value_t = 100_000)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: bcgsemo::Error| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Front(args) => cmd_front(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let InstanceArgs { n, k, r } = args.instance;
    let params = ProblemParams::new(n, k, r)?;
    let mut cfg = RunConfig::new(params, args.algo)
        .with_t_epoch(args.t_epoch)
        .with_seed(args.seed)
        .with_budget(args.budget);
    cfg.trace_every = args.trace_every;

    let sink: Box<dyn Write> = match &args.trace_out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None if args.trace_every.is_some() => Box::new(io::stderr()),
        None => Box::new(io::sink()),
    };
    let mut trace = CsvTrace::new(sink)?;
    let res = run_with_observer(&cfg, &mut trace)?;
    trace.finish()?;

    log::info!("generator {}", RandomSource::ALGORITHM);
    harness::write_raw_csv(io::stdout().lock(), &[RawRow::from_result(&res, 0)])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let mut cfg = match &args.config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    macro_rules! override_field {
        ($($field:ident),*) => { $( if let Some(v) = args.$field { cfg.$field = v; } )* };
    }
    override_field!(n_values, k_values, r_values, algorithms, t_epoch, runs_per_cell, base_seed, budget, jobs);

    let out = harness::run_sweep_to_files(&cfg, Execution::from_jobs(cfg.jobs), &args.out, &args.summary)?;
    eprintln!(
        "{} trials in {} cells written (generator {})",
        out.trials.len(),
        out.summaries.len(),
        RandomSource::ALGORITHM
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_front(args: InstanceArgs) -> anyhow::Result<ExitCode> {
    let params = ProblemParams::new(args.n, args.k, args.r)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["f1", "f2", "witness"])?;
    for point in pareto_front(&params)? {
        let (f1, f2) = scalarize(&point.key, &params)?;
        w.write_record([f1.to_string(), f2.to_string(), point.witness.to_string()])?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let opts = VerifyOptions {
        max_n: args.max_n,
        pairs_per_set: args.pairs,
        execution: Execution::from_jobs(args.jobs),
        ..VerifyOptions::default()
    };
    let checks = oracle::verify(&opts)?;
    let mut all = true;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        all &= c.passed;
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
