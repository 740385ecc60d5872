//! `tspga` - benchmark and solver CLI.
//!
//! Three subcommands: `bench` runs an (instances x operators x seeds) grid
//! and writes the CSV/manifest bundle, `solve` runs the GA once and prints
//! the best tour, `validate` parse-checks an instance file. Any failure is
//! reported on standard error with a nonzero exit code.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use tspga_core::{run, ExperimentError, ExperimentSpec, GaConfig, Instance, Metric, Operator};

#[derive(Parser)]
#[command(name = "tspga", version, about = "Mutation-driven genetic algorithm for symmetric TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark grid and write summary/runs/convergence CSVs
    Bench(BenchArgs),
    /// Run the GA once on one instance and print the best tour found
    Solve(SolveArgs),
    /// Parse-check a TSPLIB instance file
    Validate {
        /// TSPLIB instance file
        instance: PathBuf,
    },
}

#[derive(Args)]
struct GaArgs {
    /// Population size
    #[arg(long = "pop", default_value_t = 100, value_name = "N")]
    population: usize,
    /// Generations to evolve
    #[arg(long, default_value_t = 2000, value_name = "N")]
    generations: usize,
    /// Base RNG seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Distance metric: "rounded" (TSPLIB nearest-integer) or "real"
    #[arg(long, default_value = "rounded", value_parser = parse_metric)]
    metric: Metric,
}

#[derive(Args)]
struct BenchArgs {
    /// TSPLIB instance files to benchmark
    #[arg(long, num_args = 1.., required = true, value_name = "FILE")]
    instances: Vec<PathBuf>,
    /// Operators to compare (comma separated or repeated)
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "slide,inversion,rgibnnm,irgibnnm,sbm",
        value_parser = parse_operator
    )]
    operators: Vec<Operator>,
    /// Runs per (instance, operator) cell; run r uses seed + r
    #[arg(long, default_value_t = 10, value_name = "N")]
    repeats: usize,
    #[command(flatten)]
    ga: GaArgs,
    /// Output directory for the CSV/manifest bundle
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Known optimum for an instance outside the bundled table (repeatable)
    #[arg(long = "optimal", value_parser = parse_optimal, value_name = "NAME=VALUE")]
    optimal: Vec<(String, f64)>,
    /// Cap on worker threads (default: one per CPU)
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// TSPLIB instance file
    instance: PathBuf,
    /// Mutation operator to drive the run
    #[arg(long, default_value = "sbm", value_parser = parse_operator)]
    operator: Operator,
    #[command(flatten)]
    ga: GaArgs,
}

fn parse_operator(s: &str) -> Result<Operator, String> {
    Operator::from_str(s)
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    Metric::from_str(s)
}

fn parse_optimal(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad optimum value {value:?}: {e}"))?;
    if !(value > 0.0) {
        return Err(format!("optimum for {name} must be positive, got {value}"));
    }
    Ok((name.to_string(), value))
}

fn cost_display(v: f64, metric: Metric) -> String {
    match metric {
        Metric::Euc2dRounded => format!("{}", v.round() as i64),
        Metric::Euc2dReal => format!("{v}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Solve(args) => solve(args),
        Command::Validate { instance } => validate(instance),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn ga_config(ga: &GaArgs, operator: Operator) -> Result<GaConfig, String> {
    let config = GaConfig {
        population_size: ga.population,
        generations: ga.generations,
        operator,
        seed: ga.seed,
        metric: ga.metric,
    };
    config.validate()?;
    Ok(config)
}

fn bench(args: BenchArgs) -> Result<(), String> {
    let spec = ExperimentSpec {
        instances: args.instances,
        operators: args.operators,
        repeats: args.repeats,
        base: ga_config(&args.ga, Operator::Sbm)?,
        out_dir: args.out.clone(),
        optimal_overrides: args.optimal,
        workers: args.workers,
    };
    let summaries = tspga_core::run_experiment(&spec).map_err(|e| match e {
        ExperimentError::MissingOptimum(name) => {
            format!("no known optimum for instance {name:?}; pass --optimal {name}=VALUE")
        }
        other => other.to_string(),
    })?;

    println!(
        "{:<12} {:<10} {:>10} {:>10} {:>10} {:>12} {:>8}",
        "instance", "operator", "optimal", "best", "worst", "average", "err%"
    );
    for s in &summaries {
        println!(
            "{:<12} {:<10} {:>10} {:>10} {:>10} {:>12.3} {:>8.3}",
            s.instance,
            s.operator.name(),
            cost_display(s.optimal, spec.base.metric),
            cost_display(s.best, spec.base.metric),
            cost_display(s.worst, spec.base.metric),
            s.average,
            s.error_rate_pct,
        );
    }
    println!("wrote {}", args.out.join("summary.csv").display());
    Ok(())
}

fn solve(args: SolveArgs) -> Result<(), String> {
    let config = ga_config(&args.ga, args.operator)?;
    let instance =
        Instance::from_file(&args.instance, Some(args.ga.metric)).map_err(|e| e.to_string())?;
    let stats = run(&config, &instance);

    println!(
        "{}: {} cities, operator {}, seed {}, {} generations, population {}",
        instance.name(),
        instance.dimension(),
        config.operator,
        config.seed,
        config.generations,
        config.population_size
    );
    println!("best cost: {}", cost_display(stats.best_fitness, args.ga.metric));
    if let Some(optimal) = instance.known_optimal() {
        let gap = 100.0 * (stats.best_fitness - optimal) / optimal;
        println!("known optimum: {} (gap {:.2}%)", cost_display(optimal, args.ga.metric), gap);
    }
    let ids: Vec<String> = stats.best_tour.order().iter().map(u32::to_string).collect();
    println!("tour: {}", ids.join(" "));
    Ok(())
}

fn validate(path: PathBuf) -> Result<(), String> {
    let instance = Instance::from_file(&path, None).map_err(|e| e.to_string())?;
    match instance.known_optimal() {
        Some(opt) => println!(
            "ok: {} ({} cities, known optimum {})",
            instance.name(),
            instance.dimension(),
            opt
        ),
        None => println!("ok: {} ({} cities)", instance.name(), instance.dimension()),
    }
    Ok(())
}
