use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::faces::UnionFind;
use super::planarity::planar_rotation;
use super::{Dart, EmbedError, Faces, Rotation};
use crate::graph::{EdgeId, Graph, VertexId};

/// A spanning planar subgraph to which no deleted edge can be added back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarSubgraph {
    pub kept: Vec<EdgeId>,
    pub deleted: Vec<EdgeId>,
}

/// Inserts edges in a seed-shuffled order, keeping each one that leaves the
/// subgraph planar. Rejection is monotone (a superset of a non-planar graph
/// is non-planar), so one pass already yields inclusion-wise maximality.
///
/// The current embedding is kept between steps: an edge joining two
/// components, or two vertices on a common face, is spliced in directly;
/// only the remaining candidates trigger a full planarity test.
pub fn maximal_planar_subgraph(g: &Graph, order_seed: u64) -> PlanarSubgraph {
    let mut order: Vec<EdgeId> = g.edges().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(order_seed));

    let n = g.vertex_count();
    let simple = g.is_simple();
    let mut rot = Rotation::new();
    let mut uf = UnionFind::new(g.vertex_bound());
    let mut kept: Vec<EdgeId> = Vec::new();
    let mut deleted = Vec::new();

    for e in order {
        let [u, v] = g.endpoints(e);
        let (du, dv) = (Dart::new(e, 0), Dart::new(e, 1));
        if u == v {
            rot.insert_at(u, None, du);
            rot.insert_after(du, dv);
            kept.push(e);
            continue;
        }
        if uf.union(u.index(), v.index()) {
            rot.insert_at(u, None, du);
            rot.insert_at(v, None, dv);
            kept.push(e);
            continue;
        }
        if simple && n >= 3 && kept.len() >= 3 * n - 6 {
            deleted.push(e);
            continue;
        }
        let faces = Faces::trace(&rot);
        let at_u = faces.faces_at(&rot, u);
        let at_v = faces.faces_at(&rot, v);
        if let Some(&f) = at_u.iter().find(|f| at_v.contains(f)) {
            let cu = faces.corner(&rot, u, f);
            let cv = faces.corner(&rot, v, f);
            rot.insert_at(u, cu, du);
            rot.insert_at(v, cv, dv);
            kept.push(e);
            continue;
        }
        let mut trial: Vec<(usize, usize)> = kept
            .iter()
            .map(|&k| {
                let [a, b] = g.endpoints(k);
                (a.index(), b.index())
            })
            .collect();
        trial.push((u.index(), v.index()));
        match planar_rotation(g.vertex_bound(), &trial) {
            Some(orders) => {
                kept.push(e);
                rot = Rotation::from_orders(orders.into_iter().enumerate().map(|(x, ds)| {
                    let darts = ds
                        .into_iter()
                        .map(|d| Dart::new(kept[d / 2], d % 2))
                        .collect();
                    (VertexId::new(x), darts)
                }));
            }
            None => deleted.push(e),
        }
    }
    kept.sort_unstable();
    deleted.sort_unstable();
    PlanarSubgraph { kept, deleted }
}

/// A cycle with no chords: a fundamental cycle of a BFS tree, shortcut
/// across chords until none remain.
pub fn chordless_cycle(g: &Graph) -> Result<Vec<VertexId>, EmbedError> {
    let mut cycle = fundamental_cycle(g).ok_or(EmbedError::Acyclic)?;
    loop {
        let k = cycle.len();
        if k <= 3 {
            return Ok(cycle);
        }
        let mut pos = vec![usize::MAX; g.vertex_bound()];
        for (i, &v) in cycle.iter().enumerate() {
            pos[v.index()] = i;
        }
        let chord = cycle.iter().enumerate().find_map(|(i, &v)| {
            g.neighbors(v).find_map(|w| {
                let j = pos[w.index()];
                if j == usize::MAX || j == i || j == (i + 1) % k || i == (j + 1) % k {
                    return None;
                }
                Some((i.min(j), i.max(j)))
            })
        });
        let Some((i, j)) = chord else {
            return Ok(cycle);
        };
        let inner = j - i + 1;
        let outer = k - (j - i) + 1;
        cycle = if inner <= outer {
            cycle[i..=j].to_vec()
        } else {
            let mut c = cycle[j..].to_vec();
            c.extend_from_slice(&cycle[..=i]);
            c
        };
    }
}

fn fundamental_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let bound = g.vertex_bound();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; bound];
    let mut depth = vec![usize::MAX; bound];
    for root in g.vertices() {
        if depth[root.index()] != usize::MAX {
            continue;
        }
        depth[root.index()] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut incident = g.incident(v).to_vec();
            incident.sort_unstable();
            for e in incident {
                if parent[v.index()].is_some_and(|(_, pe)| pe == e) {
                    continue;
                }
                let w = g.opposite(e, v);
                if w == v {
                    continue;
                }
                if depth[w.index()] == usize::MAX {
                    depth[w.index()] = depth[v.index()] + 1;
                    parent[w.index()] = Some((v, e));
                    queue.push_back(w);
                } else {
                    return Some(tree_cycle(&parent, &depth, v, w));
                }
            }
        }
    }
    None
}

fn tree_cycle(
    parent: &[Option<(VertexId, EdgeId)>],
    depth: &[usize],
    mut a: VertexId,
    mut b: VertexId,
) -> Vec<VertexId> {
    let mut left = vec![a];
    let mut right = vec![b];
    let up = |x: VertexId| parent[x.index()].unwrap().0;
    while depth[a.index()] > depth[b.index()] {
        a = up(a);
        left.push(a);
    }
    while depth[b.index()] > depth[a.index()] {
        b = up(b);
        right.push(b);
    }
    while a != b {
        a = up(a);
        b = up(b);
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// True when `cycle` is a cycle of `g` without chords.
pub fn is_chordless_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().collect::<HashSet<_>>().len() != k {
        return false;
    }
    let on: HashSet<VertexId> = cycle.iter().copied().collect();
    for i in 0..k {
        let (v, w) = (cycle[i], cycle[(i + 1) % k]);
        if g.find_edge(v, w).is_none() {
            return false;
        }
        let cycle_nbrs = g.neighbors(v).filter(|x| on.contains(x) && *x != v);
        if cycle_nbrs.filter(|&x| x != w && x != cycle[(i + k - 1) % k]).count() > 0 {
            return false;
        }
    }
    true
}
