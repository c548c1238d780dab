//! Combinatorial embeddings: rotation systems, faces, duals, planarity
//! testing, maximal planar subgraphs and chordless cycles.

mod faces;
mod planarity;
mod rotation;
mod subgraph;

use thiserror::Error;

pub use faces::{build_dual, compute_faces, CombinatorialEmbedding, DualGraph, FaceId, Faces};
pub(crate) use planarity::planar_rotation;
pub use planarity::{is_planar, test_planarity, Planarity};
pub use rotation::{Dart, Rotation};
pub use subgraph::{chordless_cycle, is_chordless_cycle, maximal_planar_subgraph, PlanarSubgraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("rotation does not place exactly the darts of the graph")]
    RotationMismatch,
    #[error("embedding is not planar: component with n={vertices}, m={edges}, f={faces}")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("graph has no cycle")]
    Acyclic,
}
