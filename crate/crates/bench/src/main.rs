use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use crossmin_bench::{
    aggregate, best_overall, read_records_from, run_matrix, write_aggregates, write_records, Instance,
};
use crossmin_core::heuristics::HeuristicConfig;
use crossmin_core::instances::write_graph;
use crossmin_core::InstanceSpec;

#[derive(Parser)]
#[command(name = "crossmin", version, about = "Crossing minimization heuristics and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configuration on every instance for a batch of seeds.
    Run {
        /// Instance specs such as `complete:8`, `random_regular:30,4,1`,
        /// or graph file paths.
        #[arg(long, num_args = 1.., required = true)]
        instances: Vec<InstanceSpec>,
        /// Configurations such as `fix-all`, `mim-both-srm`, `ccm-srm`.
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<HeuristicConfig>,
        #[arg(long, default_value_t = 50)]
        perms: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        /// Seed of the shared planar subgraph of each instance.
        #[arg(long, default_value_t = 0)]
        init_seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, env = "CROSSMIN_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Replace each instance by its non-planar biconnected components.
        #[arg(long)]
        split: bool,
    },
    /// Write a generated graph in the edge-list format.
    Gen {
        #[arg(long)]
        family: InstanceSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarise a results file per instance and configuration.
    Aggregate {
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            instances,
            configs,
            perms,
            out,
            master_seed,
            init_seed,
            jobs,
            split,
        } => {
            let mut built = Vec::new();
            for spec in &instances {
                built.extend(Instance::from_spec(spec, split, init_seed)?);
            }
            if built.is_empty() {
                bail!("no instances to run (all components planar?)");
            }
            let output = run_matrix(&built, &configs, perms, master_seed, jobs)?;
            for f in &output.failures {
                eprintln!("failed: {} {} seed {}: {}", f.instance, f.config, f.seed, f.message);
            }
            let records = output.records();
            write_records(&records, &out).with_context(|| format!("writing {}", out.display()))?;
            for a in aggregate(&records) {
                println!(
                    "{:<28} {:<18} best {:>6}  mean {:>9.2}  ratio {:.3}",
                    a.instance, a.config, a.best, a.mean, a.relative_improvement
                );
            }
            if !output.failures.is_empty() {
                bail!("{} runs failed", output.failures.len());
            }
        }
        Command::Gen { family, out } => {
            let g = family.build()?;
            write_graph(&g, &out).with_context(|| format!("writing {}", out.display()))?;
            println!("{family}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
        }
        Command::Aggregate { results, out } => {
            let records = read_records_from(&results).with_context(|| format!("reading {}", results.display()))?;
            write_aggregates(&aggregate(&records), &out)?;
            for b in best_overall(&records) {
                println!("{:<28} best {:>6}  ({})", b.instance, b.best, b.config);
            }
        }
    }
    Ok(())
}
