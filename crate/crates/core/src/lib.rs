//! Minor-model constructions for planar patterns, with exact oracles.
//!
//! The crate has three layers:
//!
//! * [`graph`], [`io`] and [`patterns`]: the graph value type, interchange
//!   formats, and generators for every pattern family (wheels, double
//!   wheels, the subdivided ladder `xi`, yurts, combs, binary trees and the
//!   `Lambda(T)` family).
//! * [`decomposition`] and [`solvers`]: tree/path decompositions and their
//!   normalization, plus exponential-time exact solvers for treewidth,
//!   pathwidth, minor containment and linkedness. These are the oracles.
//! * [`constructions`]: algorithms that build a minor model of a pattern in
//!   a structured host. Every output is meant to be checked with
//!   [`solvers::model::verify_model`].

pub mod budget;
pub mod census;
pub mod constructions;
pub mod decomposition;
pub mod graph;
pub mod io;
pub mod patterns;
pub mod solvers;

pub use budget::Budget;
pub use graph::{make_graph, Graph, GraphError, Vertex};
pub use solvers::model::MinorModel;
