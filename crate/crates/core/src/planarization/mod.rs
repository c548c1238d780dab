//! Planarizations: a planar host graph whose degree-4 dummy vertices stand
//! for crossings of the original graph, with each original edge realized
//! as a chain of host edges.

mod nonsimple;
mod path;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::embed::{compute_faces, CombinatorialEmbedding, Dart, EmbedError, Faces, Rotation};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::insertion::{self, InsertionError};

pub use nonsimple::{BetaPair, NonSimple, NonSimpleRemoval};
pub use path::{InsertionPath, InsertionSpider};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarizationError {
    #[error("kept edges do not form a planar subgraph")]
    NonPlanar,
    #[error("self-loop {0} cannot be planarized")]
    SelfLoop(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("{0} is a dummy vertex")]
    Dummy(VertexId),
    #[error("vertex {0} is not embedded")]
    NotEmbedded(VertexId),
    #[error("vertex {0} is already embedded")]
    AlreadyEmbedded(VertexId),
    #[error("edge {0} is already embedded")]
    EdgeAlreadyEmbedded(EdgeId),
    #[error("path or spider was computed for an older state of the planarization")]
    StalePath,
    #[error("invalid insertion path: {0}")]
    InvalidPath(String),
    #[error("ray {ray} needs {found} crossings, spider promised {expected}")]
    SpiderConflict {
        ray: EdgeId,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Insertion(#[from] InsertionError),
}

/// A broken planarization invariant, as reported by [`Planarization::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("rotation does not match the host graph")]
    RotationMismatch,
    #[error("host embedding: {0}")]
    Embedding(EmbedError),
    #[error("dummy {dummy} has degree {degree}")]
    DummyDegree { dummy: VertexId, degree: usize },
    #[error("chains do not alternate around dummy {0}")]
    NotAlternating(VertexId),
    #[error("dummy {0} registered with the wrong edge pair")]
    Registry(VertexId),
    #[error("chain of {0} is not a path between its endpoints through dummies")]
    BrokenChain(EdgeId),
    #[error("host edge {0} has an inconsistent origin")]
    Origin(EdgeId),
    #[error("unembedded vertex {0} still has host edges")]
    Unembedded(VertexId),
    #[error("{found} dummies registered, chains have {interior} interior vertices")]
    Count { found: usize, interior: usize },
}

/// A drawing of `original` encoded as a planar host graph.
///
/// Original vertices keep their ids in the host. Dummies get fresh ids at
/// or above the original vertex bound. Vertices that are not embedded stay
/// in the host as isolated vertices without a position.
#[derive(Debug, Clone)]
pub struct Planarization {
    original: Arc<Graph>,
    host: Graph,
    rotation: Rotation,
    chain: Vec<Option<Vec<EdgeId>>>,
    origin: Vec<Option<EdgeId>>,
    dummies: BTreeMap<VertexId, (EdgeId, EdgeId)>,
    embedded: Vec<bool>,
    version: u64,
}

fn pair(a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
    (a.min(b), a.max(b))
}

impl Planarization {
    /// Starts from a planar spanning subgraph: every vertex embedded, every
    /// kept edge a single-edge chain, no crossings.
    pub fn from_planar_subgraph(
        original: impl Into<Arc<Graph>>,
        kept: &[EdgeId],
    ) -> Result<Self, PlanarizationError> {
        let original = original.into();
        let vertices: Vec<VertexId> = original.vertices().collect();
        Self::from_partial(original, kept, &vertices)
    }

    /// Starts from a planar subgraph on a subset of the vertices. The kept
    /// edges must have both endpoints in `vertices`.
    pub fn from_partial(
        original: impl Into<Arc<Graph>>,
        kept: &[EdgeId],
        vertices: &[VertexId],
    ) -> Result<Self, PlanarizationError> {
        let original: Arc<Graph> = original.into();
        if let Some(e) = original.edges().find(|&e| {
            let [a, b] = original.endpoints(e);
            a == b
        }) {
            return Err(PlanarizationError::SelfLoop(e));
        }
        let bound = original.vertex_bound();
        let mut host = Graph::with_vertices(bound);
        for i in 0..bound {
            let v = VertexId::new(i);
            if !original.contains_vertex(v) {
                host.delete_vertex(v).unwrap();
            }
        }
        let mut embedded = vec![false; bound];
        for &v in vertices {
            if !original.contains_vertex(v) {
                return Err(PlanarizationError::UnknownVertex(v));
            }
            embedded[v.index()] = true;
        }
        let mut chain = vec![None; original.edge_bound()];
        let mut origin = Vec::with_capacity(kept.len());
        let mut pairs = Vec::with_capacity(kept.len());
        for &e in kept {
            let [a, b] = original
                .try_endpoints(e)
                .map_err(|_| PlanarizationError::UnknownEdge(e))?;
            for x in [a, b] {
                if !embedded[x.index()] {
                    return Err(PlanarizationError::NotEmbedded(x));
                }
            }
            if chain[e.index()].is_some() {
                return Err(PlanarizationError::EdgeAlreadyEmbedded(e));
            }
            let h = host.add_edge(a, b).unwrap();
            chain[e.index()] = Some(vec![h]);
            origin.push(Some(e));
            pairs.push((a.index(), b.index()));
        }
        let orders = crate::embed::planar_rotation(bound, &pairs).ok_or(PlanarizationError::NonPlanar)?;
        let rotation = Rotation::from_orders(orders.into_iter().enumerate().map(|(v, ds)| {
            (VertexId::new(v), ds.into_iter().map(Dart::from_index).collect())
        }));
        let p = Planarization {
            original,
            host,
            rotation,
            chain,
            origin,
            dummies: BTreeMap::new(),
            embedded,
            version: 0,
        };
        p.debug_check();
        Ok(p)
    }

    pub fn original(&self) -> &Graph {
        &self.original
    }

    pub fn original_arc(&self) -> &Arc<Graph> {
        &self.original
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    /// Incremented by every mutation; paths and spiders remember it.
    pub fn version(&self) -> u64 {
        self.version
    }

    /// Face cycles of the current host embedding.
    pub fn faces(&self) -> Faces {
        Faces::trace(&self.rotation)
    }

    /// The host embedding, checked against Euler's formula.
    pub fn embedding(&self) -> Result<CombinatorialEmbedding, EmbedError> {
        CombinatorialEmbedding::new(&self.host, self.rotation.clone())
    }

    pub fn crossing_count(&self) -> usize {
        self.dummies.len()
    }

    /// Dummies with the pair of original edges crossing there.
    pub fn dummies(&self) -> impl Iterator<Item = (VertexId, (EdgeId, EdgeId))> + '_ {
        self.dummies.iter().map(|(&v, &p)| (v, p))
    }

    pub fn is_dummy(&self, v: VertexId) -> bool {
        v.index() >= self.embedded.len() && self.host.contains_vertex(v)
    }

    pub fn is_vertex_embedded(&self, v: VertexId) -> bool {
        self.embedded.get(v.index()).copied().unwrap_or(false)
    }

    pub fn is_edge_embedded(&self, e: EdgeId) -> bool {
        self.chain.get(e.index()).is_some_and(|c| c.is_some())
    }

    /// True once every original vertex and edge is embedded.
    pub fn is_complete(&self) -> bool {
        self.original.vertices().all(|v| self.is_vertex_embedded(v))
            && self.original.edges().all(|e| self.is_edge_embedded(e))
    }

    /// Host edges realizing `e`, ordered from its first endpoint.
    pub fn chain(&self, e: EdgeId) -> Option<&[EdgeId]> {
        self.chain.get(e.index())?.as_deref()
    }

    /// Original edge a host edge belongs to.
    pub fn origin(&self, h: EdgeId) -> Option<EdgeId> {
        self.origin.get(h.index()).copied().flatten()
    }

    /// Host vertices along the chain of `e`, from its first endpoint.
    pub fn chain_vertices(&self, e: EdgeId) -> Option<Vec<VertexId>> {
        let edges = self.chain(e)?;
        let mut cur = self.original.endpoints(e)[0];
        let mut out = Vec::with_capacity(edges.len() + 1);
        out.push(cur);
        for &h in edges {
            cur = self.host.opposite(h, cur);
            out.push(cur);
        }
        Some(out)
    }

    /// Crossings on the chain of `e`.
    pub fn edge_crossings(&self, e: EdgeId) -> usize {
        self.chain(e).map_or(0, |c| c.len() - 1)
    }

    /// Distinct dummies on the chains of edges at `v`: the number of
    /// crossings that removing `v` would take away.
    pub fn vertex_crossings(&self, v: VertexId) -> usize {
        let mut seen = BTreeSet::new();
        for &e in self.original.incident(v) {
            if let Some(vs) = self.chain_vertices(e) {
                seen.extend(vs[1..vs.len() - 1].iter().copied());
            }
        }
        seen.len()
    }

    /// Routes `e` along `path`, creating one dummy per crossed host edge.
    pub fn realize_path(&mut self, e: EdgeId, path: &InsertionPath) -> Result<(), PlanarizationError> {
        if path.version() != self.version {
            return Err(PlanarizationError::StalePath);
        }
        let [a, b] = self
            .original
            .try_endpoints(e)
            .map_err(|_| PlanarizationError::UnknownEdge(e))?;
        if self.is_edge_embedded(e) {
            return Err(PlanarizationError::EdgeAlreadyEmbedded(e));
        }
        let ends = (path.source(), path.target());
        if ends != (a, b) && ends != (b, a) {
            return Err(PlanarizationError::InvalidPath(format!(
                "path joins {} and {}, edge {e} joins {a} and {b}",
                ends.0, ends.1
            )));
        }
        for v in [a, b] {
            if !self.is_vertex_embedded(v) {
                return Err(PlanarizationError::NotEmbedded(v));
            }
        }
        self.check_crossed(path)?;
        self.route(e, path);
        self.version += 1;
        self.debug_check();
        Ok(())
    }

    /// Places the star centre into the spider's centre face and routes all
    /// rays. The first ray follows its spider path; each further ray is
    /// routed by an optimal edge insertion towards the placed centre, which
    /// must reproduce the spider's length for that ray.
    pub fn realize_spider(&mut self, spider: &InsertionSpider) -> Result<(), PlanarizationError> {
        if spider.version() != self.version {
            return Err(PlanarizationError::StalePath);
        }
        let v = spider.center();
        self.check_original(v)?;
        if self.is_vertex_embedded(v) {
            return Err(PlanarizationError::AlreadyEmbedded(v));
        }
        for (e, path) in spider.rays() {
            let [a, b] = self.original.endpoints(*e);
            if a != v && b != v {
                return Err(PlanarizationError::InvalidPath(format!("{e} is not incident to {v}")));
            }
            if self.is_edge_embedded(*e) {
                return Err(PlanarizationError::EdgeAlreadyEmbedded(*e));
            }
            if !self.is_vertex_embedded(path.source()) {
                return Err(PlanarizationError::NotEmbedded(path.source()));
            }
        }
        let mut rays = spider.rays().iter();
        if let Some((_, path)) = spider.rays().first() {
            self.check_crossed(path)?;
        }
        self.embedded[v.index()] = true;
        if let Some((e, path)) = rays.next() {
            self.route(*e, path);
            self.version += 1;
        }
        for (e, planned) in rays {
            let path = insertion::eif(self, planned.source(), v)?;
            if path.crossings() != planned.crossings() {
                return Err(PlanarizationError::SpiderConflict {
                    ray: *e,
                    expected: planned.crossings(),
                    found: path.crossings(),
                });
            }
            self.route(*e, &path);
            self.version += 1;
        }
        self.version += 1;
        self.debug_check();
        Ok(())
    }

    /// Removes `v` and the chains of all its edges, smoothing dummies left
    /// with two host edges. Returns the number of crossings removed.
    pub fn remove_star(&mut self, v: VertexId) -> Result<usize, PlanarizationError> {
        self.check_original(v)?;
        if !self.is_vertex_embedded(v) {
            return Err(PlanarizationError::NotEmbedded(v));
        }
        let before = self.crossing_count();
        let mut touched = BTreeSet::new();
        let mut incident = self.original.incident(v).to_vec();
        incident.sort_unstable();
        incident.dedup();
        for e in incident {
            self.unroute(e, &mut touched);
        }
        self.embedded[v.index()] = false;
        for x in touched {
            self.settle(x);
        }
        self.version += 1;
        self.maybe_compact();
        self.debug_check();
        Ok(before - self.crossing_count())
    }

    /// Removes the chain of `e`, leaving its endpoints embedded. Returns the
    /// number of crossings removed.
    pub fn remove_edge(&mut self, e: EdgeId) -> Result<usize, PlanarizationError> {
        if !self.original.contains_edge(e) {
            return Err(PlanarizationError::UnknownEdge(e));
        }
        let before = self.crossing_count();
        let mut touched = BTreeSet::new();
        self.unroute(e, &mut touched);
        for x in touched {
            self.settle(x);
        }
        self.version += 1;
        self.maybe_compact();
        self.debug_check();
        Ok(before - self.crossing_count())
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if !self.rotation.matches(&self.host) {
            return Err(vec![Violation::RotationMismatch]);
        }
        if let Err(err) = compute_faces(&self.host, &self.rotation) {
            out.push(Violation::Embedding(err));
        }
        for v in self.original.vertices() {
            if !self.is_vertex_embedded(v) && self.host.degree(v) > 0 {
                out.push(Violation::Unembedded(v));
            }
        }
        let mut used = vec![0usize; self.host.edge_bound()];
        let mut interior = 0;
        for e in self.original.edges() {
            let Some(edges) = self.chain(e) else { continue };
            let [a, b] = self.original.endpoints(e);
            let mut ok = !edges.is_empty() && self.is_vertex_embedded(a) && self.is_vertex_embedded(b);
            let mut cur = a;
            let mut seen = BTreeSet::new();
            for (i, &h) in edges.iter().enumerate() {
                if !self.host.contains_edge(h) {
                    ok = false;
                    break;
                }
                used[h.index()] += 1;
                if self.origin(h) != Some(e) {
                    out.push(Violation::Origin(h));
                }
                let [x, y] = self.host.endpoints(h);
                cur = if x == cur {
                    y
                } else if y == cur {
                    x
                } else {
                    ok = false;
                    break;
                };
                if i + 1 < edges.len() {
                    interior += 1;
                    ok &= self.is_dummy(cur) && seen.insert(cur);
                }
            }
            if !ok || cur != b {
                out.push(Violation::BrokenChain(e));
            }
        }
        for h in self.host.edges() {
            if used[h.index()] != 1 {
                out.push(Violation::Origin(h));
            }
        }
        for v in self.host.vertices().filter(|&v| self.is_dummy(v)) {
            let around = self.rotation.around(v);
            if around.len() != 4 {
                out.push(Violation::DummyDegree {
                    dummy: v,
                    degree: around.len(),
                });
                continue;
            }
            let o: Vec<Option<EdgeId>> = around.iter().map(|d| self.origin(d.edge())).collect();
            if o[0] != o[2] || o[1] != o[3] || o[0] == o[1] {
                out.push(Violation::NotAlternating(v));
                continue;
            }
            let expected = o[0].zip(o[1]).map(|(x, y)| pair(x, y));
            if self.dummies.get(&v).copied() != expected {
                out.push(Violation::Registry(v));
            }
        }
        for &v in self.dummies.keys() {
            if !self.is_dummy(v) {
                out.push(Violation::Registry(v));
            }
        }
        if interior != 2 * self.dummies.len() {
            out.push(Violation::Count {
                found: self.dummies.len(),
                interior,
            });
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Host graph in the edge-list text format, followed by one comment
    /// line per embedded original edge listing its chain as edge-line
    /// indices.
    pub fn dump(&self) -> String {
        let mut out = crate::instances::format_graph(&self.host);
        let mut line = vec![usize::MAX; self.host.edge_bound()];
        for (i, h) in self.host.edges().enumerate() {
            line[h.index()] = i;
        }
        for e in self.original.edges() {
            if let Some(edges) = self.chain(e) {
                let _ = write!(out, "# chain {}", e.index());
                for h in edges {
                    let _ = write!(out, " {}", line[h.index()]);
                }
                out.push('\n');
            }
        }
        out
    }

    fn check_original(&self, v: VertexId) -> Result<(), PlanarizationError> {
        if self.is_dummy(v) {
            return Err(PlanarizationError::Dummy(v));
        }
        if !self.original.contains_vertex(v) {
            return Err(PlanarizationError::UnknownVertex(v));
        }
        Ok(())
    }

    fn check_crossed(&self, path: &InsertionPath) -> Result<(), PlanarizationError> {
        let mut edges = BTreeSet::new();
        for &d in path.crossed() {
            if !self.rotation.contains(d) || !edges.insert(d.edge()) {
                return Err(PlanarizationError::InvalidPath(format!("cannot cross {}", d.edge())));
            }
        }
        let bad = |what: &str| Err(PlanarizationError::InvalidPath(what.to_string()));
        for (v, c) in [(path.source(), path.source_corner()), (path.target(), path.target_corner())] {
            match c {
                Some(c) if !self.rotation.contains(c) || self.rotation.owner(c) != v => {
                    return bad("corner does not belong to its endpoint");
                }
                None if self.rotation.first(v).is_some() => return bad("missing corner"),
                _ => {}
            }
        }
        // each piece of the route must stay inside one face: walk that
        // face from where the piece starts and look for where it ends
        let mut entry = path.source_corner().map(|c| self.rotation.next(c));
        for &d in path.crossed() {
            if entry.is_some_and(|from| !self.on_face(from, d)) {
                return bad("consecutive crossings do not share a face");
            }
            if self.on_face(d, d.twin()) {
                return bad("a bridge cannot be crossed");
            }
            entry = Some(d.twin());
        }
        if let (Some(from), Some(c)) = (entry, path.target_corner()) {
            if !self.on_face(from, self.rotation.next(c)) {
                return bad("the path does not reach the target corner");
            }
        }
        Ok(())
    }

    /// Does the face to the left of `from` contain `to`?
    fn on_face(&self, from: Dart, to: Dart) -> bool {
        let mut d = from;
        loop {
            if d == to {
                return true;
            }
            d = self.rotation.face_successor(d);
            if d == from {
                return false;
            }
        }
    }

    fn debug_check(&self) {
        if cfg!(test) {
            if let Err(v) = self.validate() {
                panic!("planarization invariant broken: {v:?}");
            }
        }
    }

    fn add_host_edge(&mut self, a: VertexId, b: VertexId, orig: EdgeId) -> EdgeId {
        let h = self.host.add_edge(a, b).unwrap();
        if self.origin.len() <= h.index() {
            self.origin.resize(h.index() + 1, None);
        }
        self.origin[h.index()] = Some(orig);
        h
    }

    fn drop_host_edge(&mut self, h: EdgeId) {
        for side in 0..2 {
            let d = Dart::new(h, side);
            if self.rotation.contains(d) {
                self.rotation.remove(d);
            }
        }
        self.host.delete_edge(h).unwrap();
        self.origin[h.index()] = None;
    }

    /// Stores `edges` (a walk starting at `start`) as the chain of `e`.
    fn set_chain_from(&mut self, e: EdgeId, start: VertexId, mut edges: Vec<EdgeId>) {
        if self.original.endpoints(e)[0] != start {
            edges.reverse();
        }
        for &h in &edges {
            self.origin[h.index()] = Some(e);
        }
        self.chain[e.index()] = Some(edges);
    }

    /// Chain of `e` oriented to start at `start`, with its vertex walk.
    fn walk_from(&self, e: EdgeId, start: VertexId) -> (Vec<EdgeId>, Vec<VertexId>) {
        let mut edges = self.chain(e).expect("edge embedded").to_vec();
        let mut verts = self.chain_vertices(e).unwrap();
        if verts[0] != start {
            edges.reverse();
            verts.reverse();
        }
        (edges, verts)
    }

    /// Subdivides the edge of `d` (tail `a`, head `b`) with a new vertex `x`.
    /// Returns `x` and its darts towards `a` and `b`; the original darts of
    /// the edge are replaced in place at `a` and `b`.
    fn subdivide(&mut self, d: Dart) -> (VertexId, Dart, Dart) {
        let h = d.edge();
        let orig = self.origin(h).expect("host edge has an origin");
        let a = d.tail(&self.host);
        let b = d.head(&self.host);
        let start = self.chain_vertex_before(orig, h);
        let x = self.host.add_vertex();
        let h1 = self.add_host_edge(a, x, orig);
        let h2 = self.add_host_edge(x, b, orig);
        let (h1a, h1x) = (Dart::new(h1, 0), Dart::new(h1, 1));
        let (h2x, h2b) = (Dart::new(h2, 0), Dart::new(h2, 1));
        self.rotation.replace(d, h1a);
        self.rotation.replace(d.twin(), h2b);
        self.rotation.insert_first(x, h1x);
        self.rotation.insert_after(h1x, h2x);
        let c = self.chain[orig.index()].as_mut().unwrap();
        let pos = c.iter().position(|&k| k == h).unwrap();
        let pieces = if start == a { [h1, h2] } else { [h2, h1] };
        c.splice(pos..=pos, pieces);
        self.host.delete_edge(h).unwrap();
        self.origin[h.index()] = None;
        (x, h1x, h2x)
    }

    /// The vertex from which the chain of `orig` enters host edge `h`.
    fn chain_vertex_before(&self, orig: EdgeId, h: EdgeId) -> VertexId {
        let mut cur = self.original.endpoints(orig)[0];
        for &k in self.chain(orig).unwrap() {
            if k == h {
                return cur;
            }
            cur = self.host.opposite(k, cur);
        }
        unreachable!("{h} not on chain of {orig}")
    }

    /// Realizes `e` along a validated path without touching the version.
    fn route(&mut self, e: EdgeId, path: &InsertionPath) {
        let mut moved: HashMap<Dart, Dart> = HashMap::new();
        let mut stops = Vec::with_capacity(path.crossed().len());
        for &d in path.crossed() {
            let crossed_orig = self.origin(d.edge()).unwrap();
            let old_a = d;
            let old_b = d.twin();
            let (x, xa, xb) = self.subdivide(d);
            let [h1, _] = [xa.edge(), xb.edge()];
            moved.insert(old_a, Dart::new(h1, 0));
            moved.insert(old_b, Dart::new(xb.edge(), 1));
            self.dummies.insert(x, pair(crossed_orig, e));
            stops.push((x, xa, xb));
        }
        let resolve = |a: Option<Dart>| a.map(|d| *moved.get(&d).unwrap_or(&d));
        let mut prev = (path.source(), resolve(path.source_corner()));
        let mut edges = Vec::with_capacity(stops.len() + 1);
        for (x, xa, xb) in stops {
            let s = self.add_host_edge(prev.0, x, e);
            self.rotation.insert_at(prev.0, prev.1, Dart::new(s, 0));
            self.rotation.insert_after(xa, Dart::new(s, 1));
            edges.push(s);
            prev = (x, Some(xb));
        }
        let t = path.target();
        let s = self.add_host_edge(prev.0, t, e);
        self.rotation.insert_at(prev.0, prev.1, Dart::new(s, 0));
        self.rotation
            .insert_at(t, resolve(path.target_corner()), Dart::new(s, 1));
        edges.push(s);
        self.set_chain_from(e, path.source(), edges);
    }

    /// Deletes the chain of `e`, collecting the dummies it passed through.
    fn unroute(&mut self, e: EdgeId, touched: &mut BTreeSet<VertexId>) {
        let Some(edges) = self.chain[e.index()].take() else {
            return;
        };
        for h in edges {
            for x in self.host.endpoints(h) {
                if self.is_dummy(x) {
                    touched.insert(x);
                }
            }
            self.drop_host_edge(h);
        }
    }

    /// Restores the dummy invariants at `x` after its chains changed:
    /// deletes it when bare, smooths it when one strand is left or both
    /// strands merely touch, and re-registers it when two chains cross.
    fn settle(&mut self, x: VertexId) {
        if !self.is_dummy(x) {
            return;
        }
        self.dummies.remove(&x);
        let around = self.rotation.around(x);
        let o: Vec<EdgeId> = around.iter().map(|d| self.origin(d.edge()).unwrap()).collect();
        match around.len() {
            0 => {}
            2 => self.smooth(around[0], around[1]),
            4 if o[0] == o[2] && o[1] == o[3] => {
                debug_assert_ne!(o[0], o[1], "chain crosses itself at {x}");
                self.dummies.insert(x, pair(o[0], o[1]));
                return;
            }
            4 if o[0] == o[1] && o[2] == o[3] => {
                self.smooth(around[0], around[1]);
                self.smooth(around[2], around[3]);
            }
            4 if o[1] == o[2] && o[3] == o[0] => {
                self.smooth(around[1], around[2]);
                self.smooth(around[3], around[0]);
            }
            n => unreachable!("dummy {x} with degree {n}"),
        }
        self.host.delete_vertex(x).unwrap();
    }

    /// Joins the two host edges of one chain meeting at a vertex into a
    /// single edge that keeps their positions at the far ends.
    fn smooth(&mut self, da: Dart, db: Dart) {
        let (ha, hb) = (da.edge(), db.edge());
        let c = self.origin(ha).unwrap();
        debug_assert_eq!(self.origin(hb), Some(c));
        let p = da.head(&self.host);
        let q = db.head(&self.host);
        let h = self.add_host_edge(p, q, c);
        self.rotation.replace(da.twin(), Dart::new(h, 0));
        self.rotation.replace(db.twin(), Dart::new(h, 1));
        self.rotation.remove(da);
        self.rotation.remove(db);
        self.host.delete_edge(ha).unwrap();
        self.host.delete_edge(hb).unwrap();
        self.origin[ha.index()] = None;
        self.origin[hb.index()] = None;
        let edges = self.chain[c.index()].as_mut().unwrap();
        let i = edges.iter().position(|&k| k == ha).unwrap();
        let j = edges.iter().position(|&k| k == hb).unwrap();
        debug_assert_eq!(i.abs_diff(j), 1);
        let lo = i.min(j);
        edges.splice(lo..=lo + 1, [h]);
    }

    /// Renumbers host dummies and edges once deleted ids dominate, so that
    /// id-indexed scans stay proportional to the live size.
    fn maybe_compact(&mut self) {
        let live = self.host.edge_count();
        if self.host.edge_bound() <= 4 * live + 256 {
            return;
        }
        let bound = self.embedded.len();
        let mut host = Graph::with_vertices(bound);
        for i in 0..bound {
            let v = VertexId::new(i);
            if !self.host.contains_vertex(v) {
                host.delete_vertex(v).unwrap();
            }
        }
        let mut vmap: Vec<VertexId> = (0..self.host.vertex_bound()).map(VertexId::new).collect();
        for v in self.host.vertices().filter(|v| v.index() >= bound) {
            vmap[v.index()] = host.add_vertex();
        }
        let mut emap = vec![EdgeId::new(usize::MAX); self.host.edge_bound()];
        let mut origin = Vec::with_capacity(live);
        for h in self.host.edges() {
            let [a, b] = self.host.endpoints(h);
            emap[h.index()] = host.add_edge(vmap[a.index()], vmap[b.index()]).unwrap();
            origin.push(self.origin(h));
        }
        let moved = |d: Dart| Dart::new(emap[d.edge().index()], d.side());
        let rotation = Rotation::from_orders(self.host.vertices().map(|v| {
            (
                vmap[v.index()],
                self.rotation.around(v).into_iter().map(moved).collect(),
            )
        }));
        for c in self.chain.iter_mut().flatten() {
            for h in c.iter_mut() {
                *h = emap[h.index()];
            }
        }
        self.dummies = std::mem::take(&mut self.dummies)
            .into_iter()
            .map(|(v, p)| (vmap[v.index()], p))
            .collect();
        self.host = host;
        self.rotation = rotation;
        self.origin = origin;
    }
}
