//! Certifying algorithms around 5-separations in 5-connected graphs.
//!
//! The crate bundles graph primitives (graph6 I/O, induced subgraphs,
//! contraction), flow-based connectivity and path systems, planarity with
//! prescribed boundary, discharging on plane graphs, rooted `TH`
//! feasibility, a constrained `TK5` search, and verifiers that emit
//! independently checkable certificates.

pub mod combinatorics;
pub mod connectivity;
pub mod discharging;
pub mod families;
mod flow;
pub(crate) mod paths;
pub mod gen;
pub mod graph;
pub mod graph6;
pub mod planarity;
pub mod report;
pub mod rooted;
pub mod separation;
pub mod tk5;
pub mod verify;

pub use graph::{ContractionSpec, Graph, GraphError, Vertex};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use separation::{Separation, Side};
