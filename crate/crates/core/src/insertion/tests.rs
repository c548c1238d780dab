use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::embed::maximal_planar_subgraph;
use crate::graph::{EdgeId, Graph};
use crate::instances::{complete, cycle_product};
use crate::testutil::*;

fn full(g: Graph) -> Planarization {
    let edges: Vec<EdgeId> = g.edges().collect();
    Planarization::from_planar_subgraph(g, &edges).unwrap()
}

#[test]
fn dual_bfs_examples() {
    let k4 = full(complete(4));
    let d = dual_bfs(&k4, v(0)).unwrap();
    assert_eq!(d.len(), 4);
    let mut sorted = d.as_slice().to_vec();
    sorted.sort();
    assert_eq!(sorted, vec![0, 0, 0, 1]);

    // a tree has one face and no dual edges
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let d = dual_bfs(&full(star), v(2)).unwrap();
    assert_eq!(d.as_slice(), &[0]);

    let c4 = full(cycle(4));
    assert_eq!(dual_bfs(&c4, v(1)).unwrap().as_slice(), &[0, 0]);
    assert_eq!(dual_bfs(&c4, v(9)), Err(InsertionError::UnknownVertex(v(9))));
}

#[test]
fn eif_examples() {
    let c4 = full(cycle(4));
    let path = eif(&c4, v(0), v(2)).unwrap();
    assert_eq!(path.crossings(), 0);
    assert_eq!(path.faces().len(), 1);
    assert_eq!(eif(&c4, v(1), v(1)).unwrap_err(), InsertionError::SameEndpoints(v(1)));

    let k5 = Arc::new(complete(5));
    let sub = maximal_planar_subgraph(&k5, 0);
    let p = Planarization::from_planar_subgraph(k5.clone(), &sub.kept).unwrap();
    let [a, b] = k5.endpoints(sub.deleted[0]);
    let path = eif(&p, a, b).unwrap();
    assert_eq!(path.crossings(), 1);
    let faces = p.faces();
    for (i, d) in path.crossed().iter().enumerate() {
        assert_eq!(faces.face_of(*d), path.faces()[i]);
        assert_eq!(faces.face_of(d.twin()), path.faces()[i + 1]);
    }

    // 4x4 grid of vertices: corners meet in the outer face, an inner vertex
    // is one crossing away from it
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let id = r * 4 + c;
            if c < 3 {
                edges.push((id, id + 1));
            }
            if r < 3 {
                edges.push((id, id + 4));
            }
        }
    }
    let grid = full(Graph::from_edges(16, &edges).unwrap());
    assert_eq!(eif(&grid, v(0), v(15)).unwrap().crossings(), 0);
    assert_eq!(eif(&grid, v(5), v(15)).unwrap().crossings(), 1);
    assert_eq!(eif(&grid, v(5), v(10)).unwrap().crossings(), 0);
    assert_eq!(eif(&grid, v(5), v(0)).unwrap().crossings(), 0);
}

#[test]
fn eif_is_deterministic() {
    let p = random_planarization(12, 0.4, 3, 60);
    let a = eif(&p, v(0), v(11)).unwrap();
    let b = eif(&p, v(0), v(11)).unwrap();
    assert_eq!(a.faces(), b.faces());
    assert_eq!(a.crossed(), b.crossed());
}

#[test]
fn sif_examples() {
    let w = Arc::new(wheel(5));
    let rim: Vec<EdgeId> = (0..5).map(e).collect();
    let p = Planarization::from_partial(w.clone(), &rim, &(0..5).map(v).collect::<Vec<_>>()).unwrap();
    let star = Star::full(&w, v(5));
    let spider = sif(&p, &star).unwrap();
    assert_eq!(spider.cost(), 0);
    assert_eq!(spider.rays().len(), 5);

    let k5 = Arc::new(complete(5));
    let k4: Vec<EdgeId> = k5.edges().filter(|&x| !k5.endpoints(x).contains(&v(4))).collect();
    let p = Planarization::from_partial(k5.clone(), &k4, &(0..4).map(v).collect::<Vec<_>>()).unwrap();
    let spider = sif(&p, &Star::full(&k5, v(4))).unwrap();
    assert_eq!(spider.cost(), 1);
    for (e, path) in spider.rays() {
        assert_eq!(path.target(), v(4));
        assert_eq!(path.source(), k5.opposite(*e, v(4)));
        assert_eq!(*path.faces().last().unwrap(), spider.center_face());
    }

    assert_eq!(
        sif(&p, &Star::new(&k5, v(4), vec![]).unwrap()).unwrap_err(),
        InsertionError::EmptyStar
    );
    assert_eq!(
        sif(&p, &Star::full(&k5, v(0))).unwrap_err(),
        InsertionError::CenterEmbedded(v(0))
    );
}

#[test]
fn single_ray_star_is_free() {
    for seed in 0..30 {
        let mut p = random_planarization(9, 0.5, seed, 40);
        let g = p.original_arc().clone();
        let c = v(seed as usize % 9);
        p.remove_star(c).unwrap();
        let Some(&ray) = g
            .incident(c)
            .iter()
            .find(|&&r| p.is_vertex_embedded(g.opposite(r, c)))
        else {
            continue;
        };
        let spider = sif(&p, &Star::new(&g, c, vec![ray]).unwrap()).unwrap();
        // joining a lone vertex costs nothing: it can sit in any face at the
        // ray's other end
        assert_eq!(spider.cost(), 0);
    }
}

#[test]
fn randomized_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for seed in 0..80u64 {
        let n = rng.gen_range(6..12);
        let mut p = random_planarization(n, 0.45, seed, 50);
        let g = p.original_arc().clone();
        for _ in 0..3 {
            let a = v(rng.gen_range(0..n));
            let b = v(rng.gen_range(0..n));
            if a != b {
                assert_eq!(eif(&p, a, b).unwrap().crossings(), oracle_eif(&p, a, b), "seed {seed}");
            }
        }
        let c = v(rng.gen_range(0..n));
        p.remove_star(c).unwrap();
        let rays: Vec<EdgeId> = g
            .incident(c)
            .iter()
            .copied()
            .filter(|&r| p.is_vertex_embedded(g.opposite(r, c)))
            .collect();
        if rays.is_empty() {
            continue;
        }
        let ends: Vec<VertexId> = rays.iter().map(|&r| g.opposite(r, c)).collect();
        let spider = sif(&p, &Star::new(&g, c, rays).unwrap()).unwrap();
        assert_eq!(spider.cost(), oracle_sif(&p, &ends), "seed {seed}");
        let before = p.crossing_count();
        p.realize_spider(&spider).unwrap();
        assert_eq!(p.crossing_count(), before + spider.cost());
    }
}

#[test]
fn torus_grid_star_costs() {
    // star reinsertion into a planarized C3 x C3
    let g = Arc::new(cycle_product(3, 3));
    let sub = maximal_planar_subgraph(&g, 0);
    let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept).unwrap();
    for &f in &sub.deleted {
        let [a, b] = g.endpoints(f);
        let path = eif(&p, a, b).unwrap();
        p.realize_path(f, &path).unwrap();
    }
    p.remove_star(v(0)).unwrap();
    let spider = sif(&p, &Star::full(&g, v(0))).unwrap();
    let ends: Vec<VertexId> = g.neighbors(v(0)).collect();
    assert_eq!(spider.cost(), oracle_sif(&p, &ends));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distances_match_oracle(seed in 0u64..10_000, n in 5usize..11) {
        let p = random_planarization(n, 0.4, seed, 45);
        let src = v(seed as usize % n);
        let fast = dual_bfs(&p, src).unwrap();
        prop_assert_eq!(fast.as_slice(), &oracle_distances(&p, src)[..]);
    }

    #[test]
    fn eif_path_is_consistent(seed in 0u64..10_000) {
        let p = random_planarization(9, 0.5, seed, 45);
        let path = eif(&p, v(0), v(8)).unwrap();
        let faces = p.faces();
        prop_assert_eq!(path.faces().len(), path.crossings() + 1);
        prop_assert!(faces.faces_at(p.rotation(), v(0)).contains(&path.faces()[0]));
        prop_assert!(faces.faces_at(p.rotation(), v(8)).contains(path.faces().last().unwrap()));
        for (i, d) in path.crossed().iter().enumerate() {
            prop_assert_eq!(faces.face_of(*d), path.faces()[i]);
            prop_assert_eq!(faces.face_of(d.twin()), path.faces()[i + 1]);
        }
    }

    #[test]
    fn realized_edge_adds_its_cost(seed in 0u64..10_000) {
        let g = Arc::new(random_connected(9, 0.5, seed));
        let sub = maximal_planar_subgraph(&g, seed);
        let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept).unwrap();
        for &f in &sub.deleted {
            let [a, b] = g.endpoints(f);
            let path = eif(&p, a, b).unwrap();
            let before = p.crossing_count();
            p.realize_path(f, &path).unwrap();
            prop_assert_eq!(p.crossing_count(), before + path.crossings());
            prop_assert_eq!(p.edge_crossings(f), path.crossings());
        }
        prop_assert!(p.is_complete());
        prop_assert!(p.validate().is_ok());
    }
}
