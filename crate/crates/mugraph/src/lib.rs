//! Bitset graphs on up to 64 vertices, exact long-path/long-cycle oracles,
//! power-iteration spectral radii with quotient-style certificates,
//! Perron-weighted neighbor-moving reductions, and extremal scans over
//! cycle-constrained graph families.

pub mod cycles;
pub mod error;
pub mod graph;
pub mod spectral;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Metrics, VertexPartition, VertexSet};

/// Scalar type used by the concrete spectral API.
pub type Scalar = f64;
