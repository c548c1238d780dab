//! Shared helpers for unit tests: random inputs, hand-made insertion paths
//! and brute-force dual distances.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{maximal_planar_subgraph, Dart, FaceId};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::insertion::{eif, DualView};
use crate::planarization::{InsertionPath, Planarization};

pub fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

pub fn e(i: usize) -> EdgeId {
    EdgeId::new(i)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Wheel with hub `n` and rim `0..n`; rim edges come first.
pub fn wheel(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (n, i)));
    Graph::from_edges(n + 1, &edges).unwrap()
}

/// Connected random graph: a random spanning tree plus G(n, p) edges.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((j, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.insert((i, j));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Planarization of a random connected graph built by optimal edge
/// insertion, stopping once the host reaches `max_host` vertices.
pub fn random_planarization(n: usize, p: f64, seed: u64, max_host: usize) -> Planarization {
    let g = Arc::new(random_connected(n, p, seed));
    let sub = maximal_planar_subgraph(&g, seed);
    let mut pl = Planarization::from_planar_subgraph(g.clone(), &sub.kept).unwrap();
    let mut rest = sub.deleted.clone();
    rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    for f in rest {
        if pl.host().vertex_count() >= max_host {
            break;
        }
        let [a, b] = g.endpoints(f);
        let path = eif(&pl, a, b).unwrap();
        pl.realize_path(f, &path).unwrap();
    }
    pl
}

fn build_path(pl: &Planarization, view: &DualView, s: VertexId, t: VertexId, faces: Vec<FaceId>, crossed: Vec<Dart>) -> InsertionPath {
    let rot = pl.rotation();
    InsertionPath {
        source_corner: view.faces().corner(rot, s, faces[0]),
        target_corner: view.faces().corner(rot, t, *faces.last().unwrap()),
        faces,
        crossed,
        source: s,
        target: t,
        version: pl.version(),
    }
}

/// A path from `s` to `t` crossing exactly the given host edges in order,
/// if some choice of sides makes it consistent.
pub fn manual_path(pl: &Planarization, s: VertexId, t: VertexId, edges: &[EdgeId]) -> Option<InsertionPath> {
    let view = DualView::new(pl);
    let faces = view.faces();
    let at_s = faces.faces_at(pl.rotation(), s);
    let at_t = faces.faces_at(pl.rotation(), t);
    for mask in 0u32..(1 << edges.len()) {
        let crossed: Vec<Dart> = edges
            .iter()
            .enumerate()
            .map(|(i, &h)| Dart::new(h, ((mask >> i) & 1) as usize))
            .collect();
        let mut seq = Vec::new();
        let ok = if let Some(first) = crossed.first() {
            seq.push(faces.face_of(*first));
            let mut good = at_s.contains(&seq[0]);
            for w in crossed.windows(2) {
                good &= faces.face_of(w[0].twin()) == faces.face_of(w[1]);
                seq.push(faces.face_of(w[1]));
            }
            let last = faces.face_of(crossed.last().unwrap().twin());
            seq.push(last);
            good && at_t.contains(&last)
        } else {
            match at_s.iter().find(|f| at_t.contains(f)) {
                Some(&f) => {
                    seq.push(f);
                    true
                }
                None => false,
            }
        };
        if ok {
            return Some(build_path(pl, &view, s, t, seq, crossed));
        }
    }
    None
}

/// A self-avoiding random walk in the dual from a face at `s` to a face at
/// `t`; usually far from shortest.
pub fn random_walk_path(pl: &Planarization, s: VertexId, t: VertexId, rng: &mut ChaCha8Rng) -> Option<InsertionPath> {
    let view = DualView::new(pl);
    let at_s = view.faces().faces_at(pl.rotation(), s);
    let at_t = view.faces().faces_at(pl.rotation(), t);
    let mut cur = *at_s.choose(rng)?;
    let mut seen = BTreeSet::from([cur]);
    let mut faces = vec![cur];
    let mut crossed = Vec::new();
    loop {
        if at_t.contains(&cur) && (crossed.len() >= 3 || rng.gen_bool(0.3)) {
            return Some(build_path(pl, &view, s, t, faces, crossed));
        }
        let options: Vec<(FaceId, Dart)> = view
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|(f, _)| !seen.contains(f))
            .collect();
        let Some(&(next, d)) = options.choose(rng) else {
            return at_t
                .contains(&cur)
                .then(|| build_path(pl, &view, s, t, faces, crossed));
        };
        seen.insert(next);
        faces.push(next);
        crossed.push(d);
        cur = next;
    }
}

/// Unit-cost dual distances from the faces at `src` by repeated
/// relaxation over face pairs sharing an edge.
pub fn oracle_distances(pl: &Planarization, src: VertexId) -> Vec<usize> {
    let faces = pl.faces();
    let n = faces.len();
    let boundary: Vec<BTreeSet<Dart>> = faces
        .ids()
        .map(|f| faces.boundary(f).iter().copied().collect())
        .collect();
    let mut adjacent = vec![vec![false; n]; n];
    for f in 0..n {
        for g in 0..n {
            adjacent[f][g] = f != g && boundary[f].iter().any(|d| boundary[g].contains(&d.twin()));
        }
    }
    let mut dist = vec![usize::MAX; n];
    let host = pl.host();
    let mut any = false;
    for f in 0..n {
        if boundary[f].iter().any(|d| d.tail(host) == src) {
            dist[f] = 0;
            any = true;
        }
    }
    if !any {
        dist.iter_mut().for_each(|d| *d = 0);
    }
    loop {
        let mut changed = false;
        for f in 0..n {
            for g in 0..n {
                if adjacent[f][g] && dist[f] != usize::MAX && dist[f] + 1 < dist[g] {
                    dist[g] = dist[f] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// Brute-force optimal edge insertion cost.
pub fn oracle_eif(pl: &Planarization, a: VertexId, b: VertexId) -> usize {
    let da = oracle_distances(pl, a);
    let db = oracle_distances(pl, b);
    da.iter()
        .zip(&db)
        .filter(|(_, &y)| y == 0)
        .map(|(&x, _)| x)
        .min()
        .unwrap()
}

/// Brute-force optimal star insertion cost over all faces.
pub fn oracle_sif(pl: &Planarization, ends: &[VertexId]) -> usize {
    let maps: Vec<Vec<usize>> = ends.iter().map(|&w| oracle_distances(pl, w)).collect();
    (0..maps[0].len())
        .map(|f| maps.iter().map(|m| m[f]).sum::<usize>())
        .min()
        .unwrap()
}
