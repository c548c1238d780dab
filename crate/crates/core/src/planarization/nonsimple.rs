use std::collections::{BTreeSet, HashMap};

use super::Planarization;
use crate::graph::{EdgeId, VertexId};

/// Two original edges crossing more than once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaPair {
    pub edges: (EdgeId, EdgeId),
    pub dummies: Vec<VertexId>,
}

/// Crossings a simple drawing never has: between edges sharing an endpoint
/// (alpha) and repeated crossings of one edge pair (beta).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NonSimple {
    pub alphas: Vec<VertexId>,
    pub betas: Vec<BetaPair>,
}

impl NonSimple {
    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty() && self.betas.is_empty()
    }
}

/// Outcome of [`Planarization::remove_nonsimple`]. `alpha` counts removed
/// alpha crossings, `beta` counts crossings removed in beta pairs (two per
/// swap), `total` is the overall drop of the crossing count including
/// crossings that vanished as a side effect.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NonSimpleRemoval {
    pub alpha: usize,
    pub beta: usize,
    pub total: usize,
}

impl Planarization {
    fn adjacent(&self, (e, f): (EdgeId, EdgeId)) -> Option<VertexId> {
        let [a, b] = self.original.endpoints(e);
        let other = self.original.endpoints(f);
        [a, b].into_iter().find(|x| other.contains(x))
    }

    pub fn detect_nonsimple(&self) -> NonSimple {
        let mut alphas = Vec::new();
        let mut by_pair: Vec<((EdgeId, EdgeId), VertexId)> = Vec::with_capacity(self.dummies.len());
        for (&x, &p) in &self.dummies {
            if self.adjacent(p).is_some() {
                alphas.push(x);
            }
            by_pair.push((p, x));
        }
        by_pair.sort_unstable();
        let betas = by_pair
            .chunk_by(|a, b| a.0 == b.0)
            .filter(|run| run.len() >= 2)
            .map(|run| BetaPair {
                edges: run[0].0,
                dummies: run.iter().map(|&(_, x)| x).collect(),
            })
            .collect();
        NonSimple { alphas, betas }
    }

    /// Removes alpha and beta crossings by reassigning chain pieces between
    /// the two edges involved, repeating until none are left.
    pub fn remove_nonsimple(&mut self) -> NonSimpleRemoval {
        let start = self.crossing_count();
        let mut stats = NonSimpleRemoval::default();
        loop {
            let found = self.detect_nonsimple();
            if found.is_empty() {
                break;
            }
            for x in found.alphas {
                if let Some(&p) = self.dummies.get(&x) {
                    if let Some(u) = self.adjacent(p) {
                        self.remove_alpha(x, p, u);
                        stats.alpha += 1;
                    }
                }
            }
            for beta in found.betas {
                let (e, _) = beta.edges;
                let current: Vec<VertexId> = self
                    .dummies
                    .iter()
                    .filter(|(_, &p)| p == beta.edges)
                    .map(|(&x, _)| x)
                    .collect();
                if current.len() < 2 {
                    continue;
                }
                let walk = self.chain_vertices(e).unwrap();
                let pos: HashMap<VertexId, usize> =
                    walk.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let mut along = current;
                along.sort_by_key(|x| pos[x]);
                self.remove_beta(beta.edges, along[0], along[1]);
                stats.beta += 2;
            }
        }
        stats.total = start - self.crossing_count();
        if stats.total > 0 {
            self.version += 1;
        }
        self.debug_check();
        stats
    }

    /// `e` and `f` share endpoint `u` and cross at `x`: each takes over the
    /// other's piece from `u` to `x`, turning the crossing into a touch.
    fn remove_alpha(&mut self, x: VertexId, (e, f): (EdgeId, EdgeId), u: VertexId) {
        let (we, ve) = self.walk_from(e, u);
        let (wf, vf) = self.walk_from(f, u);
        let pe = ve.iter().position(|&v| v == x).unwrap();
        let pf = vf.iter().position(|&v| v == x).unwrap();
        let new_e = [&wf[..pf], &we[pe..]].concat();
        let new_f = [&we[..pe], &wf[pf..]].concat();
        self.set_chain_from(e, u, new_e);
        self.set_chain_from(f, u, new_f);
        self.normalize(&[e, f]);
    }

    /// `e` and `f` cross at `x` and `y`, with `x` first along `e`: the
    /// pieces between the two dummies are exchanged.
    fn remove_beta(&mut self, (e, f): (EdgeId, EdgeId), x: VertexId, y: VertexId) {
        let we = self.chain(e).unwrap().to_vec();
        let ve = self.chain_vertices(e).unwrap();
        let wf = self.chain(f).unwrap().to_vec();
        let vf = self.chain_vertices(f).unwrap();
        let at = |vs: &[VertexId], z: VertexId| vs.iter().position(|&v| v == z).unwrap();
        let (px, py) = (at(&ve, x), at(&ve, y));
        let (qx, qy) = (at(&vf, x), at(&vf, y));
        let rev = |s: &[EdgeId]| s.iter().rev().copied().collect::<Vec<_>>();
        let (new_e, new_f) = if qx < qy {
            (
                [&we[..px], &wf[qx..qy], &we[py..]].concat(),
                [&wf[..qx], &we[px..py], &wf[qy..]].concat(),
            )
        } else {
            (
                [&we[..px], &rev(&wf[qy..qx])[..], &we[py..]].concat(),
                [&wf[..qy], &rev(&we[px..py])[..], &wf[qx..]].concat(),
            )
        };
        let [se, _] = self.original.endpoints(e);
        let [sf, _] = self.original.endpoints(f);
        self.set_chain_from(e, se, new_e);
        self.set_chain_from(f, sf, new_f);
        self.normalize(&[e, f]);
    }

    /// Makes the given chains simple paths again and settles every dummy
    /// they touch.
    fn normalize(&mut self, chains: &[EdgeId]) {
        let mut touched = BTreeSet::new();
        for &e in chains {
            self.cut_loops(e, &mut touched);
            let vs = self.chain_vertices(e).unwrap();
            touched.extend(vs[1..vs.len() - 1].iter().copied());
        }
        for x in touched {
            self.settle(x);
        }
    }

    /// Removes closed detours from the chain of `e`.
    fn cut_loops(&mut self, e: EdgeId, touched: &mut BTreeSet<VertexId>) {
        loop {
            let vs = self.chain_vertices(e).unwrap();
            let mut last = HashMap::new();
            for (i, &v) in vs.iter().enumerate() {
                last.insert(v, i);
            }
            let Some((i, j)) = vs
                .iter()
                .enumerate()
                .map(|(i, v)| (i, last[v]))
                .find(|&(i, j)| j > i)
            else {
                return;
            };
            let removed: Vec<EdgeId> = self.chain[e.index()].as_mut().unwrap().drain(i..j).collect();
            for h in removed {
                for v in self.host.endpoints(h) {
                    if self.is_dummy(v) {
                        touched.insert(v);
                    }
                }
                self.drop_host_edge(h);
            }
        }
    }
}
