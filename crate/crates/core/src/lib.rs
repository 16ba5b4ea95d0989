//! Cospectral, parallel and strongly cospectral vertices of weighted graphs.
//!
//! Graphs carry signed real weights and optional loops. Analyses run against
//! the generalized adjacency matrix `αI + βD + γA` or the generalized
//! normalized adjacency matrix `αI + γD^{-1/2}AD^{-1/2}`, either numerically
//! through eigenprojectors or exactly through characteristic polynomials.

pub mod constructions;
pub mod error;
pub mod exact;
pub mod graph;
pub mod matrix;
pub mod named;
pub mod partition;
pub mod scalar;
pub mod spectral;
pub mod twins;

pub use error::{Error, Result};
pub use graph::{validate, Validation, Violation, WeightedGraph};
pub use matrix::{build_matrix, HermitianMatrix, MatrixFamily};
pub use named::{named_graph, parse_named};
pub use scalar::Scalar;
pub use spectral::{decompose, decompose_graph, PairClassification, SpectralDecomposition, ToleranceConfig};
