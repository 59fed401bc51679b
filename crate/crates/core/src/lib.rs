//! Plane-graph list-coloring engine.
//!
//! The crate is organized around a combinatorial-map representation of plane
//! graphs (rotation systems over paired darts). On top of it sit list
//! assignments and canvases, exhaustive and constructive coloring engines,
//! criticality checkers, exact Steiner trees with seam decompositions,
//! boundary truncation and neighborhood-growth diagnostics, and the
//! cut-along-seams surgery that opens a Steiner tree into the outer face of a
//! new plane graph.

pub mod bitset;
pub mod campaign;
pub mod canvas;
pub mod color_solver;
pub mod colors;
pub mod criticality;
pub mod plane_graph;
pub mod report;
pub mod steiner;
pub mod surgery;
pub mod truncation;

pub use bitset::BitSet;
pub use canvas::{Canvas, ListAssignment, MainInstance, RestrictionCert};
pub use colors::{Color, ColorSet};
pub use plane_graph::{Dart, EdgeId, Face, FaceId, PlaneGraph, SubgraphRef, VertexId};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum CfError {
    /// A rotation system or dart structure that does not describe a valid
    /// genus-zero embedding (or violates simplicity).
    #[error("embedding error: {0}")]
    Embedding(String),
    /// A caller-supplied argument violated an operation precondition.
    #[error("argument error: {0}")]
    Argument(String),
    /// A configured hard cap was exceeded.
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("configuration error: {0}")]
    Config(String),
    /// An invariant the theory guarantees was violated; this is a bug and the
    /// message carries the serialized instance for triage.
    #[error("internal solver failure (this is a bug): {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CfError>;
