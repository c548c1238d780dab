use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::instances::{complete, complete_bipartite, petersen};
use crate::testutil::*;

fn cfg(s: &str, seed: u64) -> HeuristicConfig {
    s.parse::<HeuristicConfig>().unwrap().with_seed(seed)
}

fn go(s: &str, g: &Arc<Graph>, seed: u64) -> RunOutcome {
    let init = Initialization::new(g, 0);
    let out = run(&cfg(s, seed), g, &init).unwrap();
    assert_eq!(out.stats.monotone_violations, 0, "{s} seed {seed}");
    out
}

/// Known crossing number of K_n for n <= 12.
fn guy(n: usize) -> usize {
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

const ALL: [&str; 13] = [
    "fix-none", "fix-all", "fix-inc", "fix-none-srm", "ccm", "ccm-srm", "mim-random", "mim-highG",
    "mim-lowG", "mim-highF", "mim-lowF", "mim-both", "mim-both-srm",
];

#[test]
fn config_strings_round_trip() {
    for s in ALL {
        assert_eq!(cfg(s, 0).to_string(), s);
    }
    for s in ["fix-all-srm-keepns", "ccm-keepns", "mim-lowF-srm"] {
        assert_eq!(cfg(s, 0).to_string(), s);
    }
    assert_eq!(cfg("mim-high_G", 0).mim_variant, MimVariant::HighG);
    assert_eq!(cfg("mim", 0).to_string(), "mim-both");
    assert_eq!(cfg("fix", 0).to_string(), "fix-none");
    let c = cfg("fix-inc-srm", 9);
    assert_eq!((c.base, c.post, c.srm, c.remove_nonsimple, c.seed), (Base::PlmFix, Post::Inc, true, true, 9));

    assert_eq!("".parse::<HeuristicConfig>(), Err(ConfigError::Empty));
    assert!(matches!("var-none".parse::<HeuristicConfig>(), Err(ConfigError::UnknownBase(_))));
    for bad in ["mim-all", "fix-both", "ccm-none", "fix-srm-none", "mim-both-srm-srm", "fix-none-"] {
        assert!(
            matches!(bad.parse::<HeuristicConfig>(), Err(ConfigError::Unexpected { .. })),
            "{bad}"
        );
    }
}

#[test]
fn planar_inputs_stay_planar() {
    let inputs = [Arc::new(wheel(6)), Arc::new(cycle(5)), Arc::new(petersen(4, 1).unwrap())];
    for g in inputs {
        for s in ALL {
            assert_eq!(go(s, &g, 3).crossings, 0, "{s}");
        }
    }
    let tree = Arc::new(Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap());
    for s in ALL {
        assert_eq!(go(s, &tree, 1).crossings, 0, "{s}");
    }
}

#[test]
fn k5_needs_exactly_one() {
    let g = Arc::new(complete(5));
    for seed in 0..5 {
        for s in ALL {
            assert_eq!(go(s, &g, seed).crossings, 1, "{s} seed {seed}");
        }
    }
}

#[test]
fn k6_never_beats_the_crossing_number() {
    let g = Arc::new(complete(6));
    for seed in 0..20 {
        for s in ["fix-none", "ccm", "mim-both"] {
            assert!(go(s, &g, seed).crossings >= guy(6));
        }
    }
}

#[test]
fn srm_repairs_bad_k6_drawings() {
    let g = Arc::new(complete(6));
    let mut repaired = 0;
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = crate::embed::maximal_planar_subgraph(&g, seed);
        let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept).unwrap();
        for &f in &sub.deleted {
            let [a, b] = g.endpoints(f);
            let path = random_walk_path(&p, a, b, &mut rng).unwrap_or_else(|| eif(&p, a, b).unwrap());
            p.realize_path(f, &path).unwrap();
        }
        let start = p.crossing_count();
        if start <= guy(6) {
            continue;
        }
        let mut h = Heuristic::new(cfg("fix-none-srm", seed));
        h.srm(&mut p).unwrap();
        assert!(p.crossing_count() >= guy(6));
        assert!(h.stats.improvements <= start);
        assert_eq!(h.stats.monotone_violations, 0);
        if p.crossing_count() == guy(6) {
            repaired += 1;
        }
    }
    assert!(repaired > 0);
}

#[test]
fn srm_ends_locally_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..12 {
        let n = rng.gen_range(7..11);
        let g = Arc::new(random_connected(n, 0.6, seed));
        let init = Initialization::new(&g, seed);
        let mut h = Heuristic::new(cfg("fix-none-srm", seed));
        let mut p = h.plm_fix(&g, &init.subgraph).unwrap();
        let before = p.crossing_count();
        h.srm(&mut p).unwrap();
        assert!(p.crossing_count() <= before);
        let candidates: Vec<VertexId> = g.vertices().collect();
        assert_eq!(h.find_improving(&p, &candidates).unwrap(), None);
        assert!(p.validate().is_ok());
    }
}

#[test]
fn srm_on_a_planar_drawing_is_one_sweep() {
    let g = Arc::new(wheel(5));
    let init = Initialization::new(&g, 0);
    let mut h = Heuristic::new(cfg("fix-none", 0));
    let mut p = h.plm_fix(&g, &init.subgraph).unwrap();
    let sweeps = h.stats.sweeps;
    h.srm(&mut p).unwrap();
    assert_eq!(h.stats.sweeps, sweeps + 1);
    assert_eq!(p.crossing_count(), 0);
}

#[test]
fn postprocessing_sweeps_until_stable() {
    let mut found = false;
    for seed in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Arc::new(random_connected(8, 0.6, seed));
        let sub = crate::embed::maximal_planar_subgraph(&g, seed);
        let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept).unwrap();
        for &f in &sub.deleted {
            let [a, b] = g.endpoints(f);
            let path = random_walk_path(&p, a, b, &mut rng).unwrap_or_else(|| eif(&p, a, b).unwrap());
            p.realize_path(f, &path).unwrap();
        }
        let mut h = Heuristic::new(cfg("fix-all", seed));
        let before = p.crossing_count();
        let sweeps = h.postprocess_all(&mut p).unwrap();
        assert_eq!(h.stats.monotone_violations, 0);
        if p.crossing_count() < before {
            found = true;
            assert!(sweeps >= 2);
        }
        let settled = p.crossing_count();
        h.postprocess_all(&mut p).unwrap();
        assert!(p.crossing_count() <= settled);
    }
    assert!(found);

    let g = Arc::new(cycle(4));
    let mut p = Planarization::from_planar_subgraph(g.clone(), &g.edges().collect::<Vec<_>>()).unwrap();
    assert_eq!(Heuristic::new(cfg("fix-all", 0)).postprocess_all(&mut p).unwrap(), 1);
}

#[test]
fn ccm_examples() {
    assert_eq!(go("ccm", &Arc::new(cycle(5)), 0).crossings, 0);
    let w5 = Arc::new(wheel(5));
    assert_eq!(go("ccm", &w5, 0).crossings, 0);
    let k5 = Arc::new(complete(5));
    let mut h = Heuristic::new(cfg("ccm", 4));
    let p = h.ccm(&k5, Some(&[v(0), v(1), v(2)])).unwrap();
    assert_eq!(p.crossing_count(), 1);
    assert_eq!(h.stats.star_insertions, 2);
    assert_eq!(
        h.ccm(&k5, Some(&[v(0), v(0)])).unwrap_err(),
        HeuristicError::NotACycle
    );
}

#[test]
fn mim_on_complete_bipartite_needs_no_single_edges() {
    for (a, b) in [(3, 3), (4, 4), (4, 5)] {
        let g = Arc::new(complete_bipartite(a, b));
        for seed in 0..3 {
            for variant in MimVariant::ALL {
                let mut c = HeuristicConfig::new(Base::Mim).with_seed(seed);
                c.mim_variant = variant;
                let out = run(&c, &g, &Initialization::new(&g, seed)).unwrap();
                assert_eq!(out.stats.edge_insertions, 0);
                assert!(out.stats.star_insertions > 0);
            }
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let g = Arc::new(complete_bipartite(4, 5));
    let init = Initialization::new(&g, 2);
    for s in ALL {
        let a = run(&cfg(s, 11), &g, &init).unwrap();
        let b = run(&cfg(s, 11), &g, &init).unwrap();
        assert_eq!(a.crossings, b.crossings);
        assert_eq!(a.stats, b.stats);
        assert_eq!(a.planarization.dump(), b.planarization.dump());
    }
}

#[test]
fn disconnected_input_is_rejected() {
    let g = Arc::new(Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
    let init = Initialization::new(&g, 0);
    for s in ["fix-none", "ccm", "mim-both"] {
        assert_eq!(run(&cfg(s, 0), &g, &init).unwrap_err(), HeuristicError::Disconnected);
    }
}

#[test]
fn keeping_nonsimple_crossings_shows_them() {
    let g = Arc::new(complete_bipartite(7, 7));
    let init = Initialization::new(&g, 0);
    let mut kept = 0;
    for seed in 0..10 {
        let dirty = run(&cfg("fix-none-keepns", seed), &g, &init).unwrap();
        kept += dirty.stats.residual_nonsimple;
        assert_eq!(dirty.stats.alpha_removed + dirty.stats.beta_removed, 0);
        let clean = run(&cfg("fix-none", seed), &g, &init).unwrap();
        assert_eq!(clean.stats.residual_nonsimple, 0);
    }
    assert!(kept > 0);
}

#[test]
fn upper_bounds_are_sound_on_small_families() {
    for n in 5..=7 {
        let g = Arc::new(complete(n));
        for s in ALL {
            assert!(go(s, &g, 1).crossings >= guy(n), "{s} K{n}");
        }
    }
    let k33 = Arc::new(complete_bipartite(3, 3));
    for s in ALL {
        assert_eq!(go(s, &k33, 1).crossings, 1, "{s}");
    }
}
