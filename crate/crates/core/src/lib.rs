//! Crossing minimization by planarization: planar embeddings, edge and
//! star insertion, and the heuristics built on top of them.

pub mod embed;
pub mod heuristics;
pub mod graph;
pub mod insertion;
pub mod instances;
pub mod planarization;

#[cfg(test)]
mod testutil;

pub use embed::{
    build_dual, chordless_cycle, compute_faces, is_planar, maximal_planar_subgraph,
    test_planarity, CombinatorialEmbedding, Dart, DualGraph, EmbedError, FaceId, Faces,
    PlanarSubgraph, Planarity, Rotation,
};
pub use heuristics::{run, Base, HeuristicConfig, HeuristicError, Initialization, MimVariant, Post, RunOutcome, RunStats};
pub use graph::{EdgeId, Graph, GraphError, Star, VertexId};
pub use insertion::{dual_bfs, eif, sif, DualDistanceMap, DualView, InsertionError};
pub use instances::{InstanceError, InstanceSpec};
pub use planarization::{
    InsertionPath, InsertionSpider, NonSimple, NonSimpleRemoval, Planarization, PlanarizationError,
    Violation,
};
