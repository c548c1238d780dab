//! Experiment runner: every (instance, configuration, permutation seed)
//! combination is one run, results go to CSV and are summarised per
//! instance and configuration.

use std::collections::HashMap;
use std::io;
use std::path::Path;
use std::sync::Arc;

use crossmin_core::heuristics::{run, HeuristicConfig, Initialization, RunStats};
use crossmin_core::instances::preprocess;
use crossmin_core::{Graph, InstanceError, InstanceSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("instance {spec}: {source}")]
    Instance { spec: String, source: InstanceError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("at least one permutation is required")]
    NoPermutations,
}

/// A graph with the initialization shared by all of its runs.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Arc<Graph>,
    pub init: Arc<Initialization>,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph, init_seed: u64) -> Self {
        let init = Initialization::new(&graph, init_seed);
        Instance {
            id: id.into(),
            graph: Arc::new(graph),
            init: Arc::new(init),
        }
    }

    /// Builds the instance(s) for a spec. With `split`, the graph is cut
    /// into its non-planar biconnected components, numbered `id#k`.
    pub fn from_spec(spec: &InstanceSpec, split: bool, init_seed: u64) -> Result<Vec<Instance>, BenchError> {
        let id = spec.to_string();
        let g = spec.build().map_err(|source| BenchError::Instance {
            spec: id.clone(),
            source,
        })?;
        if !split {
            return Ok(vec![Instance::new(id, g, init_seed)]);
        }
        Ok(preprocess(&g)
            .into_iter()
            .enumerate()
            .map(|(k, part)| Instance::new(format!("{id}#{k}"), part, init_seed))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub config: String,
    pub seed: u64,
    pub crossings: usize,
    pub time_us: u64,
    pub alpha_removed: usize,
    pub beta_removed: usize,
    pub sweeps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRecord {
    pub instance: String,
    pub config: String,
    pub permutations: usize,
    pub best: usize,
    pub mean: f64,
    /// `best / mean`; 1 when every run is crossing-free.
    pub relative_improvement: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestRecord {
    pub instance: String,
    pub best: usize,
    /// First configuration, in record order, reaching `best`.
    pub config: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFailure {
    pub instance: String,
    pub config: String,
    pub seed: u64,
    pub message: String,
}

/// A finished run with the full statistics behind its record.
#[derive(Debug, Clone)]
pub struct MatrixRun {
    pub record: RunRecord,
    pub stats: RunStats,
}

#[derive(Debug, Clone, Default)]
pub struct MatrixOutput {
    pub runs: Vec<MatrixRun>,
    pub failures: Vec<RunFailure>,
}

impl MatrixOutput {
    pub fn records(&self) -> Vec<RunRecord> {
        self.runs.iter().map(|r| r.record.clone()).collect()
    }
}

/// Seed of permutation `index` in a matrix with the given master seed.
pub fn permutation_seed(master: u64, index: usize) -> u64 {
    master.rotate_left(32) ^ index as u64
}

/// Runs every configuration `perms` times on every instance, on `jobs`
/// worker threads (0 picks the rayon default). Output order is instance,
/// then configuration, then permutation, whatever the thread count.
pub fn run_matrix(
    instances: &[Instance],
    configs: &[HeuristicConfig],
    perms: usize,
    master_seed: u64,
    jobs: usize,
) -> Result<MatrixOutput, BenchError> {
    if perms == 0 {
        return Err(BenchError::NoPermutations);
    }
    let mut tasks = Vec::new();
    for inst in instances {
        for cfg in configs {
            for k in 0..perms {
                tasks.push((inst, cfg, permutation_seed(master_seed, k)));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let results: Vec<Result<MatrixRun, RunFailure>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(inst, cfg, seed)| {
                let cfg = cfg.clone().with_seed(seed);
                let name = cfg.to_string();
                match run(&cfg, &inst.graph, &inst.init) {
                    Ok(out) => Ok(MatrixRun {
                        record: RunRecord {
                            instance: inst.id.clone(),
                            config: name,
                            seed,
                            crossings: out.crossings,
                            time_us: out.elapsed.as_micros() as u64,
                            alpha_removed: out.stats.alpha_removed,
                            beta_removed: out.stats.beta_removed,
                            sweeps: out.stats.sweeps,
                        },
                        stats: out.stats,
                    }),
                    Err(e) => Err(RunFailure {
                        instance: inst.id.clone(),
                        config: name,
                        seed,
                        message: e.to_string(),
                    }),
                }
            })
            .collect()
    });
    let mut out = MatrixOutput::default();
    for r in results {
        match r {
            Ok(run) => out.runs.push(run),
            Err(f) => out.failures.push(f),
        }
    }
    Ok(out)
}

/// Groups records by instance and configuration, in order of first
/// appearance.
pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateRecord> {
    let mut order: Vec<(&str, &str)> = Vec::new();
    let mut groups: HashMap<(&str, &str), Vec<usize>> = HashMap::new();
    for r in records {
        let key = (r.instance.as_str(), r.config.as_str());
        let group = groups.entry(key).or_default();
        if group.is_empty() {
            order.push(key);
        }
        group.push(r.crossings);
    }
    order
        .into_iter()
        .map(|key| {
            let xs = &groups[&key];
            let best = *xs.iter().min().expect("groups are never empty");
            let mean = xs.iter().sum::<usize>() as f64 / xs.len() as f64;
            AggregateRecord {
                instance: key.0.to_string(),
                config: key.1.to_string(),
                permutations: xs.len(),
                best,
                mean,
                relative_improvement: if mean == 0.0 { 1.0 } else { best as f64 / mean },
            }
        })
        .collect()
}

/// Fewest crossings per instance over all configurations and seeds.
pub fn best_overall(records: &[RunRecord]) -> Vec<BestRecord> {
    let mut out: Vec<BestRecord> = Vec::new();
    for r in records {
        match out.iter_mut().find(|b| b.instance == r.instance) {
            Some(b) if r.crossings < b.best => {
                b.best = r.crossings;
                b.config = r.config.clone();
            }
            Some(_) => {}
            None => out.push(BestRecord {
                instance: r.instance.clone(),
                best: r.crossings,
                config: r.config.clone(),
            }),
        }
    }
    out
}

/// Writes serializable rows as CSV with a header, even when empty.
pub fn write_csv<T: Serialize>(rows: &[T], out: impl io::Write, header: &[&str]) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const RECORD_HEADER: [&str; 8] = [
    "instance",
    "config",
    "seed",
    "crossings",
    "time_us",
    "alpha_removed",
    "beta_removed",
    "sweeps",
];

pub const AGGREGATE_HEADER: [&str; 6] = [
    "instance",
    "config",
    "permutations",
    "best",
    "mean",
    "relative_improvement",
];

pub fn write_records(records: &[RunRecord], path: impl AsRef<Path>) -> Result<(), BenchError> {
    write_csv(records, std::fs::File::create(path)?, &RECORD_HEADER)
}

pub fn write_aggregates(rows: &[AggregateRecord], path: impl AsRef<Path>) -> Result<(), BenchError> {
    write_csv(rows, std::fs::File::create(path)?, &AGGREGATE_HEADER)
}

pub fn read_records(input: impl io::Read) -> Result<Vec<RunRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn read_records_from(path: impl AsRef<Path>) -> Result<Vec<RunRecord>, BenchError> {
    read_records(std::fs::File::open(path)?)
}

pub fn read_aggregates(input: impl io::Read) -> Result<Vec<AggregateRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
