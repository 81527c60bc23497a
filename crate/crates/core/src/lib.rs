//! Toolkit for clique-width and linear clique-width of small structured graphs.
//!
//! * [`graph`]: graphs, induced subgraphs, isomorphism, file format
//! * [`families`]: path powers and the graphs built from them
//! * [`bubble`]: bubble-model rendering of path powers
//! * [`cwexpr`]: clique-width expressions (parse, print, evaluate, check)
//! * [`embed`]: explicit and searched induced-subgraph embeddings
//! * [`synth`]: linear expressions from vertex orderings
//! * [`solver`]: exact decision procedures for `lcwd` and `cwd`
//! * [`verify`]: claim-by-claim verification with evidence

pub mod bubble;
pub mod budget;
pub mod cwexpr;
pub mod embed;
pub mod families;
pub mod graph;
pub mod solver;
pub mod synth;
pub mod verify;

pub use budget::Budget;
pub use cwexpr::{CwExpr, LabeledGraph};
pub use graph::{Graph, GraphError, Subgraph};
