//! Batch experiments: instances x operators x seeds, with CSV outputs.
//!
//! A run grid is flattened into (instance, operator, seed) triples, fanned
//! out across a rayon pool, then re-sorted into grid order so the emitted
//! files are byte-identical no matter how the scheduler interleaved the
//! work. Repeat `r` of a grid cell runs with `base.seed + r`.
//!
//! Output directory layout:
//!
//! * `summary.csv` - one row per (instance, operator) aggregate;
//! * `runs.csv` - one row per run;
//! * `convergence/<instance>_<operator>_<seed>.csv` - per-generation best;
//! * `manifest.json` - tool version, RNG algorithm, full configuration.
//!
//! Per-run costs are printed as integers under the rounded metric and in
//! full precision under the real metric; averages and error rates always
//! keep full precision.

use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distance::DistanceOracle;
use crate::engine::{run_with_oracle, GaConfig, Operator};
use crate::rng::RNG_ALGORITHM;
use crate::tsplib::{Instance, LoadError, Metric};

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub instances: Vec<PathBuf>,
    pub operators: Vec<Operator>,
    /// Runs per (instance, operator) cell; repeat r uses seed `base.seed + r`.
    pub repeats: usize,
    /// Template config; its `operator` field is overridden per grid cell.
    pub base: GaConfig,
    pub out_dir: PathBuf,
    /// Known-optimum overrides keyed by instance name, for instances outside
    /// the bundled table.
    pub optimal_overrides: Vec<(String, f64)>,
    /// Worker-thread cap for the fan-out; `None` uses the rayon default.
    pub workers: Option<usize>,
}

/// Aggregate over the per-run best fitnesses of one (instance, operator)
/// cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub instance: String,
    pub operator: Operator,
    pub optimal: f64,
    pub best: f64,
    pub worst: f64,
    pub average: f64,
    pub error_rate_pct: f64,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    InstanceLoad(#[from] LoadError),
    #[error("no known optimum for instance {0:?}; supply one explicitly")]
    MissingOptimum(String),
    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid experiment: {0}")]
    Config(String),
}

/// Percentage by which `average` exceeds `optimal`.
pub fn error_rate(average: f64, optimal: f64) -> f64 {
    assert!(optimal > 0.0, "error_rate needs a positive optimum");
    100.0 * (average - optimal) / optimal
}

fn fmt_cost(v: f64, metric: Metric) -> String {
    match metric {
        Metric::Euc2dRounded => format!("{}", v.round() as i64),
        Metric::Euc2dReal => format!("{v}"),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    std::fs::write(path, contents).map_err(|source| ExperimentError::Output {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
struct ManifestInstance {
    name: String,
    path: String,
    dimension: usize,
    optimal: f64,
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    rng_algorithm: &'static str,
    population_size: usize,
    generations: usize,
    repeats: usize,
    base_seed: u64,
    metric: &'static str,
    operators: Vec<&'static str>,
    instances: Vec<ManifestInstance>,
}

/// Runs the full grid and writes `summary.csv`, `runs.csv`, per-run
/// convergence traces and `manifest.json` into `spec.out_dir`. Instances are
/// loaded (and the output directory created) before any run starts, so
/// misconfiguration fails fast. Returns the summaries in grid order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentSummary>, ExperimentError> {
    spec.base
        .validate()
        .map_err(ExperimentError::Config)?;
    if spec.repeats < 1 {
        return Err(ExperimentError::Config("repeats must be >= 1".into()));
    }
    if spec.instances.is_empty() {
        return Err(ExperimentError::Config("no instances given".into()));
    }
    if spec.operators.is_empty() {
        return Err(ExperimentError::Config("no operators given".into()));
    }
    for (name, value) in &spec.optimal_overrides {
        if *value <= 0.0 {
            return Err(ExperimentError::Config(format!(
                "optimum override for {name:?} must be positive, got {value}"
            )));
        }
    }

    let mut instances = Vec::with_capacity(spec.instances.len());
    for path in &spec.instances {
        let mut inst = Instance::from_file(path, Some(spec.base.metric))?;
        if let Some((_, v)) = spec
            .optimal_overrides
            .iter()
            .find(|(name, _)| name.eq_ignore_ascii_case(inst.name()))
        {
            inst.set_known_optimal(Some(*v));
        }
        if inst.known_optimal().is_none() {
            return Err(ExperimentError::MissingOptimum(inst.name().to_string()));
        }
        instances.push(inst);
    }

    let conv_dir = spec.out_dir.join("convergence");
    std::fs::create_dir_all(&conv_dir).map_err(|source| ExperimentError::Output {
        path: conv_dir.clone(),
        source,
    })?;

    let oracles: Vec<DistanceOracle> = instances
        .iter()
        .map(|inst| DistanceOracle::build_with_metric(inst, spec.base.metric))
        .collect();

    let mut triples = Vec::with_capacity(instances.len() * spec.operators.len() * spec.repeats);
    for ii in 0..instances.len() {
        for (oi, &op) in spec.operators.iter().enumerate() {
            for r in 0..spec.repeats {
                triples.push((ii, oi, op, spec.base.seed + r as u64));
            }
        }
    }

    let execute = || {
        triples
            .par_iter()
            .map(|&(ii, oi, op, seed)| {
                let config = GaConfig {
                    operator: op,
                    seed,
                    ..spec.base.clone()
                };
                (ii, oi, seed, run_with_oracle(&config, &oracles[ii]))
            })
            .collect::<Vec<_>>()
    };
    let mut outcomes = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| ExperimentError::Config(e.to_string()))?
            .install(execute),
        None => execute(),
    };
    outcomes.sort_by_key(|&(ii, oi, seed, _)| (ii, oi, seed));

    let metric = spec.base.metric;
    let mut runs_csv = String::from("instance,operator,seed,best_fitness,worst_in_final_pop\n");
    for (ii, oi, seed, stats) in &outcomes {
        let instance = instances[*ii].name();
        let operator = spec.operators[*oi];
        runs_csv.push_str(&format!(
            "{instance},{operator},{seed},{},{}\n",
            fmt_cost(stats.best_fitness, metric),
            fmt_cost(stats.worst_fitness, metric),
        ));
        let mut conv = String::from("generation,best_cost\n");
        for (g, cost) in &stats.convergence {
            conv.push_str(&format!("{g},{}\n", fmt_cost(*cost, metric)));
        }
        write_file(&conv_dir.join(format!("{instance}_{operator}_{seed}.csv")), &conv)?;
    }
    write_file(&spec.out_dir.join("runs.csv"), &runs_csv)?;

    let mut summaries = Vec::with_capacity(instances.len() * spec.operators.len());
    let mut summary_csv =
        String::from("instance,operator,optimal,best,worst,average,error_rate_pct\n");
    for (ii, inst) in instances.iter().enumerate() {
        for (oi, &op) in spec.operators.iter().enumerate() {
            let cell = &outcomes[(ii * spec.operators.len() + oi) * spec.repeats..][..spec.repeats];
            let bests: Vec<f64> = cell.iter().map(|(_, _, _, s)| s.best_fitness).collect();
            let best = bests.iter().copied().fold(f64::INFINITY, f64::min);
            let worst = bests.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let average = bests.iter().sum::<f64>() / bests.len() as f64;
            let optimal = inst.known_optimal().expect("checked at load");
            let summary = ExperimentSummary {
                instance: inst.name().to_string(),
                operator: op,
                optimal,
                best,
                worst,
                average,
                error_rate_pct: error_rate(average, optimal),
            };
            summary_csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                summary.instance,
                summary.operator,
                fmt_cost(summary.optimal, metric),
                fmt_cost(summary.best, metric),
                fmt_cost(summary.worst, metric),
                summary.average,
                summary.error_rate_pct,
            ));
            summaries.push(summary);
        }
    }
    write_file(&spec.out_dir.join("summary.csv"), &summary_csv)?;

    let manifest = Manifest {
        tool: "tspga",
        version: env!("CARGO_PKG_VERSION"),
        rng_algorithm: RNG_ALGORITHM,
        population_size: spec.base.population_size,
        generations: spec.base.generations,
        repeats: spec.repeats,
        base_seed: spec.base.seed,
        metric: metric.name(),
        operators: spec.operators.iter().map(|op| op.name()).collect(),
        instances: instances
            .iter()
            .zip(&spec.instances)
            .map(|(inst, path)| ManifestInstance {
                name: inst.name().to_string(),
                path: path.display().to_string(),
                dimension: inst.dimension(),
                optimal: inst.known_optimal().expect("checked at load"),
            })
            .collect(),
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail");
    write_file(&spec.out_dir.join("manifest.json"), &format!("{manifest_json}\n"))?;

    Ok(summaries)
}
