use crate::embed::{Dart, FaceId};
use crate::graph::{EdgeId, VertexId};

/// A route for a new edge through faces `f_1..f_k` of a fixed embedding.
///
/// `crossed[i]` is the host dart on the `faces[i]` side of the edge crossed
/// between `faces[i]` and `faces[i + 1]`. The corners say where the new
/// edge leaves `source` and enters `target`; `None` means the vertex has no
/// host edges yet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionPath {
    pub(crate) faces: Vec<FaceId>,
    pub(crate) crossed: Vec<Dart>,
    pub(crate) source: VertexId,
    pub(crate) target: VertexId,
    pub(crate) source_corner: Option<Dart>,
    pub(crate) target_corner: Option<Dart>,
    pub(crate) version: u64,
}

impl InsertionPath {
    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn crossed(&self) -> &[Dart] {
        &self.crossed
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Number of crossings realizing this path creates.
    pub fn crossings(&self) -> usize {
        self.crossed.len()
    }

    pub(crate) fn source_corner(&self) -> Option<Dart> {
        self.source_corner
    }

    pub(crate) fn target_corner(&self) -> Option<Dart> {
        self.target_corner
    }

    pub fn version(&self) -> u64 {
        self.version
    }
}

/// Paths for every ray of a star, all ending in the centre face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionSpider {
    pub(crate) center: VertexId,
    pub(crate) center_face: FaceId,
    pub(crate) rays: Vec<(EdgeId, InsertionPath)>,
    pub(crate) version: u64,
}

impl InsertionSpider {
    pub fn center(&self) -> VertexId {
        self.center
    }

    pub fn center_face(&self) -> FaceId {
        self.center_face
    }

    /// Each ray edge with its path from the far endpoint to the centre face.
    pub fn rays(&self) -> &[(EdgeId, InsertionPath)] {
        &self.rays
    }

    /// Total crossings of all rays.
    pub fn cost(&self) -> usize {
        self.rays.iter().map(|(_, p)| p.crossings()).sum()
    }

    pub fn version(&self) -> u64 {
        self.version
    }
}
