//! Word-representability of small graphs, with a focus on co-bipartite
//! graphs: explicit representing words for several families, a word
//! verifier, exhaustive semi-transitive orientation search, and a structural
//! semi-transitivity test for orientations of co-bipartite graphs.

pub mod catalog;
pub mod cobip;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod orientation;
pub mod words;

pub use error::{Error, Result};
pub use graph::{CoBipartitePartition, Graph};
pub use orientation::Orientation;
pub use words::Word;
