//! Undirected multigraph with stable identifiers and the connectivity
//! queries the heuristics rely on.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Vertex handle. Never reused within one [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(usize);

/// Edge handle. Never reused within one [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(usize);

impl VertexId {
    pub const fn new(index: usize) -> Self {
        VertexId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub const fn new(index: usize) -> Self {
        EdgeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {edge} is not incident to star center {center}")]
    NotARay { center: VertexId, edge: EdgeId },
}

/// Undirected multigraph. Parallel edges and self-loops are allowed; a
/// self-loop appears twice in its vertex's incidence list.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    incidence: Vec<Option<Vec<EdgeId>>>,
    endpoints: Vec<Option<[VertexId; 2]>>,
    vertex_count: usize,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on vertices `0..n` from index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.incidence.push(Some(Vec::new()));
        self.vertex_count += 1;
        VertexId(self.incidence.len() - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = EdgeId(self.endpoints.len());
        self.endpoints.push(Some([u, v]));
        self.incidence[u.0].as_mut().unwrap().push(e);
        self.incidence[v.0].as_mut().unwrap().push(e);
        self.edge_count += 1;
        Ok(e)
    }

    pub fn delete_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        let [u, v] = self.try_endpoints(e)?;
        self.endpoints[e.0] = None;
        for w in [u, v] {
            let inc = self.incidence[w.0].as_mut().unwrap();
            let pos = inc.iter().position(|&x| x == e).unwrap();
            inc.swap_remove(pos);
        }
        self.edge_count -= 1;
        Ok(())
    }

    /// Removes `v` together with all incident edges.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        let mut inc = self.incidence[v.0].clone().unwrap();
        inc.sort_unstable();
        inc.dedup();
        for e in inc {
            self.delete_edge(e)?;
        }
        self.incidence[v.0] = None;
        self.vertex_count -= 1;
        Ok(())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        matches!(self.incidence.get(v.0), Some(Some(_)))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.endpoints.get(e.0), Some(Some(_)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// One past the largest vertex index ever handed out.
    pub fn vertex_bound(&self) -> usize {
        self.incidence.len()
    }

    /// One past the largest edge index ever handed out.
    pub fn edge_bound(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_some())
            .map(|(i, _)| VertexId(i))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.endpoints
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_some())
            .map(|(i, _)| EdgeId(i))
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Result<[VertexId; 2], GraphError> {
        self.endpoints
            .get(e.0)
            .copied()
            .flatten()
            .ok_or(GraphError::UnknownEdge(e))
    }

    /// Endpoints in insertion order. Panics on a dead edge.
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.endpoints[e.0].expect("dead edge")
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.endpoints(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence[v.0].as_deref().expect("dead vertex")
    }

    /// Loops count twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of distinct edges of `subset` incident to `v`; a loop counts once.
    pub fn degree_in_subset(&self, v: VertexId, subset: &HashSet<EdgeId>) -> usize {
        let mut seen: Vec<EdgeId> = self
            .incident(v)
            .iter()
            .copied()
            .filter(|e| subset.contains(e))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |&e| self.opposite(e, v))
    }

    /// First edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incident(u)
            .iter()
            .copied()
            .filter(|&e| self.opposite(e, u) == v)
            .min()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges().all(|e| {
            let [a, b] = self.endpoints(e);
            a != b && seen.insert((a.min(b), a.max(b)))
        })
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return true;
        };
        let mut seen = vec![false; self.vertex_bound()];
        let mut stack = vec![start];
        seen[start.0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Articulation points of a connected graph.
    pub fn cut_vertices(&self) -> Result<Vec<VertexId>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let (n, edges, _) = self.index_view();
        let bc = biconnected(n, &edges);
        Ok(self.vertices().filter(|v| bc.cut[v.0]).collect())
    }

    /// Partition of the edge set into biconnected components. Bridges and
    /// self-loops form singleton components.
    pub fn biconnected_components(&self) -> Vec<Vec<EdgeId>> {
        let (n, edges, ids) = self.index_view();
        biconnected(n, &edges)
            .components
            .into_iter()
            .map(|c| {
                let mut c: Vec<EdgeId> = c.into_iter().map(|i| ids[i]).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// The subgraph on all vertex slots of `self` containing only `edges`,
    /// with the same vertex ids. Edge ids are fresh; the returned vector maps
    /// new edge index to the original edge.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> (Graph, Vec<EdgeId>) {
        let mut g = Graph::with_vertices(self.vertex_bound());
        for i in 0..self.vertex_bound() {
            if !self.contains_vertex(VertexId(i)) {
                g.incidence[i] = None;
                g.vertex_count -= 1;
            }
        }
        let mut back = Vec::with_capacity(edges.len());
        for &e in edges {
            let [u, v] = self.endpoints(e);
            g.add_edge(u, v).unwrap();
            back.push(e);
        }
        (g, back)
    }

    /// Vertex-slot count, live edges as index pairs, and their ids.
    pub(crate) fn index_view(&self) -> (usize, Vec<(usize, usize)>, Vec<EdgeId>) {
        let ids: Vec<EdgeId> = self.edges().collect();
        let edges = ids
            .iter()
            .map(|&e| {
                let [u, v] = self.endpoints(e);
                (u.0, v.0)
            })
            .collect();
        (self.vertex_bound(), edges, ids)
    }
}

/// A vertex with a subset of its incident edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: VertexId,
    pub rays: Vec<EdgeId>,
}

impl Star {
    pub fn new(g: &Graph, center: VertexId, rays: Vec<EdgeId>) -> Result<Self, GraphError> {
        if !g.contains_vertex(center) {
            return Err(GraphError::UnknownVertex(center));
        }
        for &e in &rays {
            let [a, b] = g.try_endpoints(e)?;
            if a != center && b != center {
                return Err(GraphError::NotARay { center, edge: e });
            }
        }
        Ok(Star { center, rays })
    }

    /// The star of `v` with all incident edges.
    pub fn full(g: &Graph, center: VertexId) -> Self {
        let mut rays = g.incident(center).to_vec();
        rays.sort_unstable();
        rays.dedup();
        Star { center, rays }
    }
}

pub(crate) struct Biconnectivity {
    pub components: Vec<Vec<usize>>,
    pub cut: Vec<bool>,
}

/// Iterative Hopcroft–Tarjan over an index edge list.
pub(crate) fn biconnected(n: usize, edges: &[(usize, usize)]) -> Biconnectivity {
    const NONE: usize = usize::MAX;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut components = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            components.push(vec![i]);
        } else {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
    }
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut cut = vec![false; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    // (vertex, tree edge into it, next adjacency index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != NONE || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, NONE, 0));
        while let Some(frame) = stack.last_mut() {
            let v = frame.0;
            if frame.2 < adj[v].len() {
                let (w, e) = adj[v][frame.2];
                frame.2 += 1;
                if e == frame.1 {
                    continue;
                }
                if disc[w] == NONE {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let (_, tree_edge, _) = stack.pop().unwrap();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(x) = edge_stack.pop() {
                            comp.push(x);
                            if x == tree_edge {
                                break;
                            }
                        }
                        components.push(comp);
                        if u == root {
                            root_children += 1;
                        } else {
                            cut[u] = true;
                        }
                    }
                }
            }
        }
        if root_children > 1 {
            cut[root] = true;
        }
    }
    Biconnectivity { components, cut }
}
