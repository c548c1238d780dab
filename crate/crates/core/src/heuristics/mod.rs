//! Heuristic pipelines assembled from planar subgraphs, edge insertion and
//! star insertion, with optional local search on top.
//!
//! Every run is driven by one seeded generator, so a configuration, a seed
//! and a shared [`Initialization`] always reproduce the same drawing.

mod config;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use config::{Base, ConfigError, HeuristicConfig, MimVariant, Post};

use crate::embed::{chordless_cycle, maximal_planar_subgraph, PlanarSubgraph};
use crate::graph::{EdgeId, Graph, GraphError, Star, VertexId};
use crate::insertion::{eif, sif, InsertionError};
use crate::planarization::{Planarization, PlanarizationError, Violation};

/// Cap on reinsertion sweeps in `all`/`inc` postprocessing.
pub const MAX_POSTPROCESS_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Planarization(#[from] PlanarizationError),
    #[error(transparent)]
    Insertion(#[from] InsertionError),
    #[error("result failed validation: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("start cycle is not a cycle of the graph")]
    NotACycle,
    #[error("edge {0} was never embedded")]
    Incomplete(EdgeId),
}

/// Work shared by all runs on one instance: a maximal planar subgraph and a
/// chordless cycle (absent for forests).
#[derive(Debug, Clone)]
pub struct Initialization {
    pub subgraph: PlanarSubgraph,
    pub cycle: Option<Vec<VertexId>>,
}

impl Initialization {
    pub fn new(g: &Graph, seed: u64) -> Self {
        Initialization {
            subgraph: maximal_planar_subgraph(g, seed),
            cycle: chordless_cycle(g).ok(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Crossings removed between adjacent edges.
    pub alpha_removed: usize,
    /// Crossings removed between edges that crossed more than once.
    pub beta_removed: usize,
    /// Postprocessing and star reinsertion sweeps.
    pub sweeps: usize,
    /// Local search steps that raised the crossing count.
    pub monotone_violations: usize,
    /// Strictly improving local search steps.
    pub improvements: usize,
    /// Edges inserted on their own by the base pipeline.
    pub edge_insertions: usize,
    /// Star insertions and reinsertions, local search included.
    pub star_insertions: usize,
    /// Non-simple crossings left in the final drawing.
    pub residual_nonsimple: usize,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub crossings: usize,
    pub stats: RunStats,
    /// Time spent in the heuristic, excluding initialization and validation.
    pub elapsed: Duration,
    pub planarization: Planarization,
}

/// Runs one configured pipeline on a connected graph.
pub fn run(cfg: &HeuristicConfig, g: &Arc<Graph>, init: &Initialization) -> Result<RunOutcome, HeuristicError> {
    if !g.is_connected() {
        return Err(HeuristicError::Disconnected);
    }
    let start = Instant::now();
    let mut h = Heuristic::new(cfg.clone());
    let mut p = match cfg.base {
        Base::PlmFix => h.plm_fix(g, &init.subgraph)?,
        Base::Ccm => h.ccm(g, init.cycle.as_deref())?,
        Base::Mim => h.mim(g, &init.subgraph)?,
    };
    if cfg.srm {
        h.srm(&mut p)?;
    }
    let elapsed = start.elapsed();
    p.validate().map_err(HeuristicError::Invalid)?;
    if let Some(e) = g.edges().find(|&e| !p.is_edge_embedded(e)) {
        return Err(HeuristicError::Incomplete(e));
    }
    let left = p.detect_nonsimple();
    h.stats.residual_nonsimple = left.alphas.len() + left.betas.iter().map(|b| b.dummies.len()).sum::<usize>();
    Ok(RunOutcome {
        crossings: p.crossing_count(),
        stats: h.stats,
        elapsed,
        planarization: p,
    })
}

/// State of one pipeline run. The building blocks are public so that
/// callers can compose them differently.
#[derive(Debug, Clone)]
pub struct Heuristic {
    cfg: HeuristicConfig,
    rng: ChaCha8Rng,
    pub stats: RunStats,
}

impl Heuristic {
    pub fn new(cfg: HeuristicConfig) -> Self {
        Heuristic {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
            stats: RunStats::default(),
        }
    }

    pub fn config(&self) -> &HeuristicConfig {
        &self.cfg
    }

    fn tidy(&mut self, p: &mut Planarization) {
        if self.cfg.remove_nonsimple {
            let r = p.remove_nonsimple();
            self.stats.alpha_removed += r.alpha;
            self.stats.beta_removed += r.beta;
        }
    }

    fn insert_edge(&mut self, p: &mut Planarization, e: EdgeId) -> Result<(), HeuristicError> {
        self.stats.edge_insertions += 1;
        self.route_edge(p, e)
    }

    fn route_edge(&mut self, p: &mut Planarization, e: EdgeId) -> Result<(), HeuristicError> {
        let [a, b] = p.original().endpoints(e);
        let path = eif(p, a, b)?;
        p.realize_path(e, &path)?;
        self.tidy(p);
        Ok(())
    }

    /// Inserts `v` with rays to all of its embedded neighbours. `v` must
    /// not be embedded.
    fn insert_star(&mut self, p: &mut Planarization, v: VertexId) -> Result<(), HeuristicError> {
        let g = p.original_arc().clone();
        let rays: Vec<EdgeId> = g
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| p.is_vertex_embedded(g.opposite(e, v)))
            .collect();
        let spider = sif(p, &Star::new(&g, v, rays)?)?;
        p.realize_spider(&spider)?;
        self.stats.star_insertions += 1;
        self.tidy(p);
        Ok(())
    }

    fn reinsert(&mut self, p: &mut Planarization, v: VertexId) -> Result<(), HeuristicError> {
        p.remove_star(v)?;
        self.insert_star(p, v)
    }

    /// Inserts the deleted edges one by one in random order.
    pub fn plm_fix(&mut self, g: &Arc<Graph>, sub: &PlanarSubgraph) -> Result<Planarization, HeuristicError> {
        let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept)?;
        let mut rest = sub.deleted.clone();
        rest.shuffle(&mut self.rng);
        for e in rest {
            self.insert_edge(&mut p, e)?;
            if self.cfg.post == Post::Inc {
                self.postprocess_all(&mut p)?;
            }
        }
        if self.cfg.post == Post::All {
            self.postprocess_all(&mut p)?;
        }
        Ok(p)
    }

    /// Deletes and reinserts every embedded edge in random order, sweeping
    /// until a sweep brings no improvement. Returns the number of sweeps.
    pub fn postprocess_all(&mut self, p: &mut Planarization) -> Result<usize, HeuristicError> {
        let g = p.original_arc().clone();
        let mut sweeps = 0;
        while sweeps < MAX_POSTPROCESS_SWEEPS {
            sweeps += 1;
            let mut order: Vec<EdgeId> = g.edges().filter(|&e| p.is_edge_embedded(e)).collect();
            order.shuffle(&mut self.rng);
            let mut improved = false;
            for e in order {
                if p.edge_crossings(e) == 0 {
                    continue;
                }
                let before = p.crossing_count();
                p.remove_edge(e)?;
                self.route_edge(p, e)?;
                let after = p.crossing_count();
                if after > before {
                    self.stats.monotone_violations += 1;
                }
                if after < before {
                    improved = true;
                    self.stats.improvements += 1;
                }
            }
            if !improved {
                break;
            }
        }
        self.stats.sweeps += sweeps;
        Ok(sweeps)
    }

    /// Grows a drawing from a chordless cycle, inserting one vertex at a
    /// time as a star towards its embedded neighbours. Vertices are taken
    /// by a random but fixed priority among those touching the drawing.
    /// Without a cycle the drawing starts from the lowest vertex.
    pub fn ccm(&mut self, g: &Arc<Graph>, cycle: Option<&[VertexId]>) -> Result<Planarization, HeuristicError> {
        if !g.is_connected() {
            return Err(HeuristicError::Disconnected);
        }
        let start: Vec<VertexId> = match cycle {
            Some(c) if !c.is_empty() => c.to_vec(),
            _ => g.vertices().take(1).collect(),
        };
        let mut kept = Vec::new();
        if start.len() > 1 {
            for (i, &a) in start.iter().enumerate() {
                let b = start[(i + 1) % start.len()];
                let e = g
                    .incident(a)
                    .iter()
                    .copied()
                    .find(|&e| g.opposite(e, a) == b && !kept.contains(&e))
                    .ok_or(HeuristicError::NotACycle)?;
                kept.push(e);
            }
        }
        let mut p = Planarization::from_partial(g.clone(), &kept, &start)?;
        let mut rank: Vec<usize> = (0..g.vertex_bound()).collect();
        rank.shuffle(&mut self.rng);
        let mut queue: BTreeSet<(usize, VertexId)> = BTreeSet::new();
        let touch = |p: &Planarization, queue: &mut BTreeSet<(usize, VertexId)>, v: VertexId| {
            for w in g.neighbors(v) {
                if !p.is_vertex_embedded(w) {
                    queue.insert((rank[w.index()], w));
                }
            }
        };
        for &v in &start {
            touch(&p, &mut queue, v);
        }
        while let Some((_, v)) = queue.pop_first() {
            self.insert_star(&mut p, v)?;
            touch(&p, &mut queue, v);
        }
        let rest: Vec<EdgeId> = g.edges().filter(|&e| !p.is_edge_embedded(e)).collect();
        for e in rest {
            self.insert_edge(&mut p, e)?;
        }
        Ok(p)
    }

    /// Starts from the planar subgraph and handles each deleted edge by
    /// reinserting one or both endpoints as stars. Cut vertices of the
    /// subgraph are never reinserted; an edge between two of them is
    /// inserted on its own.
    pub fn mim(&mut self, g: &Arc<Graph>, sub: &PlanarSubgraph) -> Result<Planarization, HeuristicError> {
        let mut p = Planarization::from_planar_subgraph(g.clone(), &sub.kept)?;
        let (kept_graph, _) = g.edge_subgraph(&sub.kept);
        let mut cut = vec![false; g.vertex_bound()];
        for v in kept_graph.cut_vertices()? {
            cut[v.index()] = true;
        }
        let mut fdeg = vec![0usize; g.vertex_bound()];
        for &e in &sub.deleted {
            let [a, b] = g.endpoints(e);
            if !cut[a.index()] && !cut[b.index()] {
                fdeg[a.index()] += 1;
                fdeg[b.index()] += 1;
            }
        }
        let gdeg: Vec<usize> = (0..g.vertex_bound())
            .map(|i| {
                let v = VertexId::new(i);
                if g.contains_vertex(v) {
                    g.degree(v)
                } else {
                    0
                }
            })
            .collect();
        let mut order = sub.deleted.clone();
        order.shuffle(&mut self.rng);
        for e in order {
            if p.is_edge_embedded(e) {
                continue;
            }
            let [a, b] = g.endpoints(e);
            let by = |key: &[usize], high: bool| {
                let (ka, kb) = (key[a.index()], key[b.index()]);
                if ka == kb {
                    a.min(b)
                } else if (ka > kb) == high {
                    a
                } else {
                    b
                }
            };
            match (cut[a.index()], cut[b.index()]) {
                (true, true) => self.insert_edge(&mut p, e)?,
                (true, false) => self.reinsert(&mut p, b)?,
                (false, true) => self.reinsert(&mut p, a)?,
                (false, false) => {
                    let pick = match self.cfg.mim_variant {
                        MimVariant::Random => {
                            if self.rng.gen_bool(0.5) {
                                a
                            } else {
                                b
                            }
                        }
                        MimVariant::HighG => by(&gdeg, true),
                        MimVariant::LowG => by(&gdeg, false),
                        MimVariant::HighF => by(&fdeg, true),
                        MimVariant::LowF => by(&fdeg, false),
                        MimVariant::Both => {
                            self.reinsert(&mut p, a)?;
                            b
                        }
                    };
                    self.reinsert(&mut p, pick)?;
                }
            }
        }
        Ok(p)
    }

    /// Star reinsertion local search. Each visit removes a vertex with all
    /// its edges and reinserts it optimally, keeping the new drawing even
    /// when it is no better. A strict improvement restarts the sweep with
    /// a fresh order. When a sweep ends without improving, a check on the
    /// final drawing confirms that no single reinsertion would help.
    pub fn srm(&mut self, p: &mut Planarization) -> Result<(), HeuristicError> {
        let g = p.original_arc().clone();
        let cut: BTreeSet<VertexId> = g.cut_vertices()?.into_iter().collect();
        let candidates: Vec<VertexId> = g
            .vertices()
            .filter(|&v| g.degree(v) > 0 && !cut.contains(&v))
            .collect();
        loop {
            self.stats.sweeps += 1;
            let mut order = candidates.clone();
            order.shuffle(&mut self.rng);
            let mut improved = false;
            for v in order {
                if p.vertex_crossings(v) == 0 {
                    continue;
                }
                if self.visit(p, v)? {
                    improved = true;
                    break;
                }
            }
            if improved {
                continue;
            }
            match self.find_improving(p, &candidates)? {
                Some(v) => {
                    self.visit(p, v)?;
                }
                None => return Ok(()),
            }
        }
    }

    /// One reinsertion of `v`; true when it strictly improved.
    fn visit(&mut self, p: &mut Planarization, v: VertexId) -> Result<bool, HeuristicError> {
        let before = p.crossing_count();
        self.reinsert(p, v)?;
        let after = p.crossing_count();
        if after > before {
            self.stats.monotone_violations += 1;
        }
        if after < before {
            self.stats.improvements += 1;
        }
        Ok(after < before)
    }

    /// First candidate whose optimal reinsertion beats its current
    /// crossings, evaluated without touching `p`.
    pub fn find_improving(&self, p: &Planarization, candidates: &[VertexId]) -> Result<Option<VertexId>, HeuristicError> {
        let g = p.original_arc();
        for &v in candidates {
            let current = p.vertex_crossings(v);
            if current == 0 {
                continue;
            }
            let mut q = p.clone();
            q.remove_star(v)?;
            let rays: Vec<EdgeId> = g.incident(v).to_vec();
            let cost = sif(&q, &Star::new(g, v, rays)?)?.cost();
            if cost < current {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests;
