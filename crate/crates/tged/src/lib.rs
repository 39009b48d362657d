//! Dataset IO, evaluation harness and command-line front end for
//! centrality-contracted graph edit distance.

pub mod cli;
pub mod config;
pub mod dataset;
pub mod eval;
