//! Exact data reduction for maximum matching.
//!
//! Reductions shrink a graph to a kernel while recording a [`Trace`]; any
//! optimal matching of the kernel lifts back to an optimal matching of the
//! input, and the optimum of the input equals the kernel optimum plus the
//! trace offset.

pub mod check;
pub mod crown;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod random;
pub mod solvers;
pub mod trace;
pub mod unweighted;
pub mod weighted;

pub use error::{Error, Result};
pub use graph::{export_perfect_matching_instance, Edge, Graph, VertexId, Weight, WeightedGraph};
pub use matching::Matching;
pub use trace::{Event, Trace};
