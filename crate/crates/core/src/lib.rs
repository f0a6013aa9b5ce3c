//! Recognition of the graph classes ORTH[h,2,t]: intersection graphs of
//! leaf-to-leaf paths in trees of maximum degree h, where adjacency means
//! sharing at least t nodes (equivalently, sharing an end leaf).
//!
//! Members of these classes are line graphs, and membership of L(H) reduces
//! to the existence of an (h,t)-tree layout of H. The crate provides
//! validators and conversions for layouts and representations, line-graph
//! root reconstruction, decision procedures with certificates, leaf bounds
//! for complete graphs, and forbidden-subdivision obstructions.

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod error;
pub mod graph;
pub mod io;
pub mod layout;
pub mod linegraph;
pub mod obstructions;
pub mod recognize;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{
    blocks, is_isomorphic, line_graph, parse_graph, reduce_twins, twin_classes, write_graph,
    BlockDecomposition, Multigraph, SimpleGraph, TwinPartition,
};
pub use layout::{
    combine_layouts, join_representations, layout_of_representation, normalize_representation,
    orthodox_representation, restrict_layout, suppress_degree_two, validate_layout,
    validate_representation, LayoutTree, OrthodoxRepresentation, Violation, ViolationKind,
};
pub use linegraph::{root_graph, LineGraphRoot, NotLineGraph, RootResult};
pub use recognize::{
    bruteforce_layout, build_layout_blocks, recognize, recognize_orth322, recognize_orth_h2t,
    separator_split, Limits, Obstruction, RecognitionReport, SeparatorSplit, SplitOutcome, Verdict,
};
pub use tree::Tree;
