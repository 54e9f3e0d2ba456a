//! Exact machinery for k-leaf powers.
//!
//! A graph `G` is a *k-leaf power* if there is a tree `T` whose leaves are
//! exactly the vertices of `G` and in which two vertices are adjacent in `G`
//! precisely when their leaf-to-leaf distance in `T` is at most `k`. The tree
//! is a *k-leaf root* of `G`.
//!
//! The crate provides:
//!
//! * [`graph`] — simple undirected graphs with labels, induced subgraphs,
//!   twins, distances, components, and text/DOT serialization (see [`io`]).
//! * [`chordal`] — chordality and strong chordality with elimination-ordering
//!   witnesses.
//! * [`tree`] — weighted leaf trees, leaf metrics, the four-point and parity
//!   checks, leaf-power extraction, root verification, and
//!   caterpillar-subdivision detection.
//! * [`gadgets`] — constructors for a family of strongly chordal graphs built
//!   from Top/Bot/Interior blocks, their explicit leaf roots, the assembled
//!   family `H_n`, and merged roots for `H_n` minus one end block.
//! * [`recognize`] — an exhaustive, certified decision procedure for
//!   "`G` has a k-leaf root", with optional distance constraints and a
//!   caterpillar-only mode.
//! * [`obstruction`] — extraction of minimal non-k-leaf-power induced
//!   subgraphs with re-checkable certificates.

pub mod chordal;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod obstruction;
pub mod recognize;
pub mod tree;

pub use graph::{Graph, GraphError, VertexSet};
pub use obstruction::{extract_minimal, MinimalityCertificate, ObstructionError};
pub use recognize::{
    recognize, recognize_all_small, Budget, DistanceConstraintSet, RecognitionResult,
    RecognizeError, RecognizeOptions, SearchStats, Verdict,
};
pub use tree::{verify_leaf_root, DistanceMatrix, LeafTree, TreeError};
