use std::process::Command;

use crossmin_bench::*;
use crossmin_core::heuristics::HeuristicConfig;
use crossmin_core::instances::{complete, complete_bipartite, cycle_product};
use crossmin_core::{Graph, InstanceSpec};

fn configs(names: &[&str]) -> Vec<HeuristicConfig> {
    names.iter().map(|s| s.parse().unwrap()).collect()
}

fn record(instance: &str, config: &str, seed: u64, crossings: usize) -> RunRecord {
    RunRecord {
        instance: instance.into(),
        config: config.into(),
        seed,
        crossings,
        time_us: 10,
        alpha_removed: 0,
        beta_removed: 0,
        sweeps: 1,
    }
}

#[test]
fn one_record_per_seed_in_matrix_order() {
    let insts = vec![
        Instance::new("k6", complete(6), 0),
        Instance::new("k33", complete_bipartite(3, 3), 0),
    ];
    let out = run_matrix(&insts, &configs(&["fix-none", "mim-both"]), 3, 7, 1).unwrap();
    assert!(out.failures.is_empty());
    let keys: Vec<(String, String, u64)> = out
        .records()
        .into_iter()
        .map(|r| (r.instance, r.config, r.seed))
        .collect();
    let mut expected = Vec::new();
    for i in ["k6", "k33"] {
        for c in ["fix-none", "mim-both"] {
            for k in 0..3 {
                expected.push((i.to_string(), c.to_string(), permutation_seed(7, k)));
            }
        }
    }
    assert_eq!(keys, expected);
}

#[test]
fn planar_instances_have_no_crossings() {
    let insts = vec![Instance::new("grid", Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(), 0)];
    let out = run_matrix(&insts, &configs(&["fix-all", "ccm-srm", "mim-lowF"]), 4, 0, 1).unwrap();
    assert_eq!(out.runs.len(), 12);
    assert!(out.records().iter().all(|r| r.crossings == 0));
}

#[test]
fn matrices_are_reproducible_across_thread_counts() {
    let insts = vec![
        Instance::new("c3c4", cycle_product(3, 4), 1),
        Instance::new("k7", complete(7), 1),
    ];
    let cfgs = configs(&["fix-none-srm", "ccm", "mim-random"]);
    let strip = |out: MatrixOutput| -> Vec<RunRecord> {
        out.records()
            .into_iter()
            .map(|mut r| {
                r.time_us = 0;
                r
            })
            .collect()
    };
    let a = strip(run_matrix(&insts, &cfgs, 3, 42, 1).unwrap());
    let b = strip(run_matrix(&insts, &cfgs, 3, 42, 2).unwrap());
    assert_eq!(a, b);
    let c = strip(run_matrix(&insts, &cfgs, 3, 43, 1).unwrap());
    assert_ne!(a.iter().map(|r| r.seed).collect::<Vec<_>>(), c.iter().map(|r| r.seed).collect::<Vec<_>>());
}

#[test]
fn failed_runs_do_not_stop_the_matrix() {
    let insts = vec![
        Instance::new("split", Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 0),
        Instance::new("k5", complete(5), 0),
    ];
    let out = run_matrix(&insts, &configs(&["fix-none"]), 2, 0, 1).unwrap();
    assert_eq!(out.failures.len(), 2);
    assert!(out.failures.iter().all(|f| f.instance == "split"));
    assert_eq!(out.runs.len(), 2);
    assert!(matches!(run_matrix(&insts, &configs(&["ccm"]), 0, 0, 1), Err(BenchError::NoPermutations)));
}

#[test]
fn aggregate_examples() {
    let recs = vec![
        record("a", "fix-none", 0, 4),
        record("a", "fix-none", 1, 5),
        record("a", "fix-none", 2, 6),
        record("a", "ccm", 0, 3),
        record("b", "ccm", 0, 7),
        record("b", "ccm", 1, 7),
        record("c", "ccm", 0, 0),
    ];
    let agg = aggregate(&recs);
    assert_eq!(agg.len(), 4);
    assert_eq!((agg[0].best, agg[0].mean, agg[0].permutations), (4, 5.0, 3));
    assert!((agg[0].relative_improvement - 0.8).abs() < 1e-12);
    assert_eq!((agg[1].config.as_str(), agg[1].relative_improvement), ("ccm", 1.0));
    assert_eq!(agg[2].relative_improvement, 1.0);
    assert_eq!(agg[3].relative_improvement, 1.0);
    for a in &agg {
        assert!(a.best as f64 <= a.mean);
        assert!(a.relative_improvement > 0.0 && a.relative_improvement <= 1.0);
    }

    let best = best_overall(&recs);
    assert_eq!(best.len(), 3);
    assert_eq!((best[0].best, best[0].config.as_str()), (3, "ccm"));
    for b in &best {
        assert!(recs.iter().filter(|r| r.instance == b.instance).all(|r| r.crossings >= b.best));
    }
}

#[test]
fn csv_round_trips() {
    let mut buf = Vec::new();
    write_csv::<RunRecord>(&[], &mut buf, &RECORD_HEADER).unwrap();
    assert_eq!(
        String::from_utf8(buf.clone()).unwrap(),
        "instance,config,seed,crossings,time_us,alpha_removed,beta_removed,sweeps\n"
    );
    assert!(read_records(&buf[..]).unwrap().is_empty());

    let recs = vec![record("complete:6", "mim-both-srm", 3, 3), record("cycle_product:3,4", "fix-all", 9, 4)];
    let mut buf = Vec::new();
    write_csv(&recs, &mut buf, &RECORD_HEADER).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.contains("\ncomplete:6,mim-both-srm,3,3,10,0,0,1\n"));
    assert_eq!(read_records(&buf[..]).unwrap(), recs);
    for r in &recs {
        assert_eq!(r.config.parse::<HeuristicConfig>().unwrap().to_string(), r.config);
    }

    let agg = aggregate(&recs);
    let mut buf = Vec::new();
    write_csv(&agg, &mut buf, &AGGREGATE_HEADER).unwrap();
    assert_eq!(read_aggregates(&buf[..]).unwrap(), agg);
}

#[test]
fn split_instances_are_nonplanar_blocks() {
    let spec: InstanceSpec = "complete:5".parse().unwrap();
    let parts = Instance::from_spec(&spec, true, 0).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].id, "complete:5#0");
    let planar: InstanceSpec = "petersen:4,1".parse().unwrap();
    assert!(Instance::from_spec(&planar, true, 0).unwrap().is_empty());
    assert_eq!(Instance::from_spec(&planar, false, 0).unwrap().len(), 1);
    let bad: InstanceSpec = "petersen:4,2".parse().unwrap();
    assert!(Instance::from_spec(&bad, false, 0).is_err());
}

#[test]
fn command_line_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_crossmin");
    let graph = dir.path().join("g.txt");
    let results = dir.path().join("r.csv");
    let agg = dir.path().join("a.csv");

    let gen = Command::new(bin)
        .args(["gen", "--family", "complete_bipartite:3,4", "--out"])
        .arg(&graph)
        .output()
        .unwrap();
    assert!(gen.status.success());
    assert!(std::fs::read_to_string(&graph).unwrap().starts_with("7 12\n"));

    let run = Command::new(bin)
        .args(["run", "--instances", "complete:6"])
        .arg(&graph)
        .args(["--configs", "fix-none", "ccm-srm", "--perms", "3", "--out"])
        .arg(&results)
        .env("CROSSMIN_JOBS", "1")
        .output()
        .unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let recs = read_records_from(&results).unwrap();
    assert_eq!(recs.len(), 12);

    let summary = Command::new(bin).arg("aggregate").arg(&results).arg("--out").arg(&agg).output().unwrap();
    assert!(summary.status.success());
    let stdout = String::from_utf8(summary.stdout).unwrap();
    assert!(stdout.contains("complete:6"));
    let rows = read_aggregates(std::fs::File::open(&agg).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().filter(|r| r.instance == "complete:6").all(|r| r.best >= 3));

    let bad = Command::new(bin)
        .args(["run", "--instances", "complete:6", "--configs", "fix-bogus", "--out"])
        .arg(&results)
        .output()
        .unwrap();
    assert!(!bad.status.success());
}
