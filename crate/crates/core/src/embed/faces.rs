use std::fmt;

use super::{Dart, EmbedError, Rotation};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(usize);

impl FaceId {
    pub const fn new(index: usize) -> Self {
        FaceId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// Faces induced by a rotation system, with the dart → face incidence.
/// Boundaries are stored back to back; face `i` owns
/// `walks[start[i]..start[i + 1]]`.
#[derive(Debug, Clone, Default)]
pub struct Faces {
    walks: Vec<Dart>,
    start: Vec<usize>,
    dart_face: Vec<usize>,
}

impl Faces {
    /// Traces face cycles without validating Euler's formula.
    pub fn trace(rot: &Rotation) -> Faces {
        let bound = rot.dart_bound();
        let mut dart_face = vec![usize::MAX; bound];
        let mut walks = Vec::with_capacity(bound);
        let mut start = vec![0];
        for s in rot.darts() {
            if dart_face[s.index()] != usize::MAX {
                continue;
            }
            let id = start.len() - 1;
            let mut d = s;
            loop {
                dart_face[d.index()] = id;
                walks.push(d);
                d = rot.face_successor(d);
                if d == s {
                    break;
                }
            }
            start.push(walks.len());
        }
        if start.len() == 1 {
            start.push(0);
        }
        Faces {
            walks,
            start,
            dart_face,
        }
    }

    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.len()).map(FaceId)
    }

    /// Closed boundary walk of `f`. Empty only for the single face of an
    /// edgeless graph.
    pub fn boundary(&self, f: FaceId) -> &[Dart] {
        &self.walks[self.start[f.0]..self.start[f.0 + 1]]
    }

    /// The face on the left of `d`.
    pub fn face_of(&self, d: Dart) -> FaceId {
        FaceId(self.dart_face[d.index()])
    }

    /// Distinct faces with a corner at `v`, ascending. An isolated vertex
    /// lies in every face.
    pub fn faces_at(&self, rot: &Rotation, v: VertexId) -> Vec<FaceId> {
        let around = rot.around(v);
        if around.is_empty() {
            return self.ids().collect();
        }
        let mut out: Vec<FaceId> = around.into_iter().map(|d| self.face_of(d)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// A dart at `v` after which a new dart opens into face `f`, or `None`
    /// when `v` has no darts.
    pub fn corner(&self, rot: &Rotation, v: VertexId, f: FaceId) -> Option<Dart> {
        rot.around(v)
            .into_iter()
            .find(|&d| self.face_of(d) == f)
            .map(|d| rot.prev(d))
    }
}

/// Traces faces and checks `n − m + f = 2` on every connected component
/// that has at least one edge.
pub fn compute_faces(g: &Graph, rot: &Rotation) -> Result<Faces, EmbedError> {
    if !rot.matches(g) {
        return Err(EmbedError::RotationMismatch);
    }
    let faces = Faces::trace(rot);
    if g.edge_count() == 0 {
        return Ok(faces);
    }
    let mut uf = UnionFind::new(g.vertex_bound());
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        uf.union(a.index(), b.index());
    }
    let mut n = vec![0i64; g.vertex_bound()];
    let mut m = vec![0i64; g.vertex_bound()];
    let mut f = vec![0i64; g.vertex_bound()];
    for v in g.vertices() {
        if g.degree(v) > 0 {
            n[uf.find(v.index())] += 1;
        }
    }
    for e in g.edges() {
        m[uf.find(g.endpoints(e)[0].index())] += 1;
    }
    for face in faces.ids() {
        let v = faces.boundary(face)[0].tail(g);
        f[uf.find(v.index())] += 1;
    }
    for v in g.vertices() {
        let r = v.index();
        if uf.find(r) == r && g.degree(v) > 0 {
            let chi = n[r] - m[r] + f[r];
            if chi != 2 {
                return Err(EmbedError::EulerViolation {
                    vertices: n[r] as usize,
                    edges: m[r] as usize,
                    faces: f[r] as usize,
                });
            }
        }
    }
    Ok(faces)
}

/// A rotation system together with its validated faces.
#[derive(Debug, Clone)]
pub struct CombinatorialEmbedding {
    pub rotation: Rotation,
    pub faces: Faces,
}

impl CombinatorialEmbedding {
    pub fn new(g: &Graph, rotation: Rotation) -> Result<Self, EmbedError> {
        let faces = compute_faces(g, &rotation)?;
        Ok(CombinatorialEmbedding { rotation, faces })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces_at(&self, v: VertexId) -> Vec<FaceId> {
        self.faces.faces_at(&self.rotation, v)
    }

    /// Faces on the two sides of `e` (equal for a bridge).
    pub fn incident_faces(&self, e: EdgeId) -> [FaceId; 2] {
        [
            self.faces.face_of(Dart::new(e, 0)),
            self.faces.face_of(Dart::new(e, 1)),
        ]
    }
}

/// Face-adjacency multigraph. Dual vertex `i` is face `i`; dual edges are
/// added in ascending primal edge order, so every incidence list is sorted
/// by primal edge id.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub graph: Graph,
    primal_to_dual: Vec<Option<EdgeId>>,
    dual_to_primal: Vec<EdgeId>,
}

impl DualGraph {
    pub fn dual_of(&self, primal: EdgeId) -> Option<EdgeId> {
        self.primal_to_dual.get(primal.index()).copied().flatten()
    }

    pub fn primal_of(&self, dual: EdgeId) -> EdgeId {
        self.dual_to_primal[dual.index()]
    }

    pub fn face_vertex(f: FaceId) -> VertexId {
        VertexId::new(f.index())
    }
}

pub fn build_dual(g: &Graph, faces: &Faces) -> DualGraph {
    let mut graph = Graph::with_vertices(faces.len());
    let mut primal_to_dual = vec![None; g.edge_bound()];
    let mut dual_to_primal = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let a = faces.face_of(Dart::new(e, 0));
        let b = faces.face_of(Dart::new(e, 1));
        let de = graph
            .add_edge(VertexId::new(a.index()), VertexId::new(b.index()))
            .expect("face ids are dual vertices");
        primal_to_dual[e.index()] = Some(de);
        dual_to_primal.push(e);
    }
    DualGraph {
        graph,
        primal_to_dual,
        dual_to_primal,
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
