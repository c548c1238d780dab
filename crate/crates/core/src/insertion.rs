//! Optimal edge and star insertion into a fixed embedding, by breadth-first
//! search in the dual graph.
//!
//! Ties are broken towards the lowest face id, and the search explores
//! dual edges in ascending host edge id order, so results are fully
//! deterministic for a given planarization.

use std::collections::VecDeque;

use thiserror::Error;

use crate::embed::{Dart, FaceId, Faces};
use crate::graph::{EdgeId, Star, VertexId};
use crate::planarization::{InsertionPath, InsertionSpider, Planarization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InsertionError {
    #[error("vertex {0} is not embedded")]
    NotEmbedded(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("cannot insert an edge from {0} to itself")]
    SameEndpoints(VertexId),
    #[error("star has no rays")]
    EmptyStar,
    #[error("star centre {0} is already embedded")]
    CenterEmbedded(VertexId),
    #[error("ray {0} is already embedded")]
    RayEmbedded(EdgeId),
    #[error("no face of {0} is reachable in the dual")]
    Unreachable(VertexId),
}

/// Faces of a planarization together with their dual adjacency.
#[derive(Debug, Clone)]
pub struct DualView {
    faces: Faces,
    /// Neighbouring face and the host dart on this face's side; face `f`
    /// owns `adjacency[start[f]..start[f + 1]]`.
    adjacency: Vec<(FaceId, Dart)>,
    start: Vec<usize>,
    version: u64,
}

impl DualView {
    pub fn new(p: &Planarization) -> Self {
        let faces = p.faces();
        let mut links = Vec::new();
        for h in p.host().edges() {
            let d = Dart::new(h, 0);
            let (f, g) = (faces.face_of(d), faces.face_of(d.twin()));
            if f != g {
                links.push((f, g, d));
            }
        }
        let mut start = vec![0usize; faces.len() + 1];
        for &(f, g, _) in &links {
            start[f.index() + 1] += 1;
            start[g.index() + 1] += 1;
        }
        for i in 0..faces.len() {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut adjacency = vec![(FaceId::new(0), Dart::new(EdgeId::new(0), 0)); links.len() * 2];
        for (f, g, d) in links {
            adjacency[fill[f.index()]] = (g, d);
            fill[f.index()] += 1;
            adjacency[fill[g.index()]] = (f, d.twin());
            fill[g.index()] += 1;
        }
        DualView {
            faces,
            adjacency,
            start,
            version: p.version(),
        }
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Neighbouring faces of `f` with the crossed dart on `f`'s side.
    pub fn neighbors(&self, f: FaceId) -> &[(FaceId, Dart)] {
        &self.adjacency[self.start[f.index()]..self.start[f.index() + 1]]
    }

    fn bfs(&self, sources: &[FaceId]) -> Search {
        let n = self.faces.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent: Vec<Option<(FaceId, Dart)>> = vec![None; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s.index()] == usize::MAX {
                dist[s.index()] = 0;
                queue.push_back(s);
            }
        }
        while let Some(f) = queue.pop_front() {
            for &(g, d) in self.neighbors(f) {
                if dist[g.index()] == usize::MAX {
                    dist[g.index()] = dist[f.index()] + 1;
                    parent[g.index()] = Some((f, d));
                    queue.push_back(g);
                }
            }
        }
        Search { dist, parent }
    }
}

struct Search {
    dist: Vec<usize>,
    parent: Vec<Option<(FaceId, Dart)>>,
}

impl Search {
    /// Closest face among `targets`, lowest id on ties.
    fn nearest(&self, targets: &[FaceId]) -> Option<FaceId> {
        targets
            .iter()
            .copied()
            .filter(|f| self.dist[f.index()] != usize::MAX)
            .min_by_key(|f| (self.dist[f.index()], *f))
    }

    /// Faces and crossed darts from a source face to `f`.
    fn trace(&self, f: FaceId) -> (Vec<FaceId>, Vec<Dart>) {
        let mut faces = vec![f];
        let mut crossed = Vec::new();
        let mut cur = f;
        while let Some((g, d)) = self.parent[cur.index()] {
            faces.push(g);
            crossed.push(d);
            cur = g;
        }
        faces.reverse();
        crossed.reverse();
        (faces, crossed)
    }
}

/// Hop distances from the faces around a vertex to every face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDistanceMap {
    dist: Vec<usize>,
}

impl DualDistanceMap {
    /// Distance to `f`, `usize::MAX` when unreachable.
    pub fn get(&self, f: FaceId) -> usize {
        self.dist[f.index()]
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dist
    }
}

fn source_faces(p: &Planarization, view: &DualView, v: VertexId) -> Result<Vec<FaceId>, InsertionError> {
    if !p.original().contains_vertex(v) {
        return Err(InsertionError::UnknownVertex(v));
    }
    if !p.is_vertex_embedded(v) {
        return Err(InsertionError::NotEmbedded(v));
    }
    Ok(view.faces.faces_at(p.rotation(), v))
}

/// Dual distances with all faces at `src` as sources at distance 0.
pub fn dual_bfs(p: &Planarization, src: VertexId) -> Result<DualDistanceMap, InsertionError> {
    dual_bfs_in(p, &DualView::new(p), src)
}

/// [`dual_bfs`] over a prebuilt view of the same planarization.
pub fn dual_bfs_in(p: &Planarization, view: &DualView, src: VertexId) -> Result<DualDistanceMap, InsertionError> {
    let sources = source_faces(p, view, src)?;
    Ok(DualDistanceMap {
        dist: view.bfs(&sources).dist,
    })
}

/// Shortest insertion path for an edge between `v1` and `v2`.
pub fn eif(p: &Planarization, v1: VertexId, v2: VertexId) -> Result<InsertionPath, InsertionError> {
    eif_in(p, &DualView::new(p), v1, v2)
}

/// [`eif`] over a prebuilt view of the same planarization.
pub fn eif_in(
    p: &Planarization,
    view: &DualView,
    v1: VertexId,
    v2: VertexId,
) -> Result<InsertionPath, InsertionError> {
    if v1 == v2 {
        return Err(InsertionError::SameEndpoints(v1));
    }
    let sources = source_faces(p, view, v1)?;
    let targets = source_faces(p, view, v2)?;
    let search = view.bfs(&sources);
    let end = search.nearest(&targets).ok_or(InsertionError::Unreachable(v2))?;
    let (faces, crossed) = search.trace(end);
    let rot = p.rotation();
    Ok(InsertionPath {
        source_corner: view.faces.corner(rot, v1, faces[0]),
        target_corner: view.faces.corner(rot, v2, end),
        faces,
        crossed,
        source: v1,
        target: v2,
        version: view.version,
    })
}

/// Optimal spider for inserting `star`: the face minimizing the summed
/// distances to all ray endpoints, and shortest paths into it that all
/// follow one breadth-first tree grown from that face.
pub fn sif(p: &Planarization, star: &Star) -> Result<InsertionSpider, InsertionError> {
    sif_in(p, &DualView::new(p), star)
}

/// [`sif`] over a prebuilt view of the same planarization.
pub fn sif_in(p: &Planarization, view: &DualView, star: &Star) -> Result<InsertionSpider, InsertionError> {
    let v = star.center;
    if !p.original().contains_vertex(v) {
        return Err(InsertionError::UnknownVertex(v));
    }
    if p.is_vertex_embedded(v) {
        return Err(InsertionError::CenterEmbedded(v));
    }
    if star.rays.is_empty() {
        return Err(InsertionError::EmptyStar);
    }
    let mut ends = Vec::with_capacity(star.rays.len());
    let mut sum = vec![0usize; view.face_count()];
    for &e in &star.rays {
        if p.is_edge_embedded(e) {
            return Err(InsertionError::RayEmbedded(e));
        }
        let w = p.original().opposite(e, v);
        let faces = source_faces(p, view, w)?;
        let dist = view.bfs(&faces).dist;
        for (s, d) in sum.iter_mut().zip(dist) {
            *s = s.saturating_add(d);
        }
        ends.push((e, w, faces));
    }
    let center_face = view
        .faces
        .ids()
        .min_by_key(|f| (sum[f.index()], *f))
        .expect("an embedding has at least one face");
    if sum[center_face.index()] == usize::MAX {
        return Err(InsertionError::Unreachable(v));
    }
    let tree = view.bfs(&[center_face]);
    let rot = p.rotation();
    let rays = ends
        .into_iter()
        .map(|(e, w, faces)| {
            let start = tree.nearest(&faces).expect("reachable by the sum check");
            let (mut path_faces, mut crossed) = tree.trace(start);
            // the tree runs from the centre outwards; rays run inwards
            path_faces.reverse();
            crossed.reverse();
            let crossed: Vec<Dart> = crossed.into_iter().map(Dart::twin).collect();
            let path = InsertionPath {
                source_corner: view.faces.corner(rot, w, start),
                target_corner: None,
                faces: path_faces,
                crossed,
                source: w,
                target: v,
                version: view.version,
            };
            (e, path)
        })
        .collect();
    Ok(InsertionSpider {
        center: v,
        center_face,
        rays,
        version: view.version,
    })
}

#[cfg(test)]
mod tests;
