//! Inexact graph matching accelerated by centrality-guided node contraction.
//!
//! Nodes with the lowest centrality (degree, betweenness, eigenvector or
//! PageRank) are deleted from both graphs, skipping cut vertices, and the
//! graph edit distance is computed on what remains with an exact best-first
//! search or a beam search.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod centrality;
pub mod contraction;
pub mod ged;
pub mod graph;

pub use centrality::{
    CentralityConfig, CentralityError, CentralityMeasure, CentralityScores, EigenvectorConfig, PageRankConfig,
};
pub use contraction::{ContractionOptions, ContractionReport, Removal, SlotPolicy};
pub use ged::{CostModel, EditKind, EditOperation, EditPath, GedError, GedResult, Heuristic, SearchKind, SearchSpec};
pub use graph::{EdgeLabel, Graph, GraphError, NodeId, NodeLabel};
