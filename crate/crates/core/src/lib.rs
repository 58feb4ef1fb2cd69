//! Pure algorithmic core of the contextuality graph census.
//!
//! Everything here is `no_std` + `alloc`: graph representation and canonical labeling,
//! orderly generation of nonisomorphic graphs, the graph6 codec, clique and independent
//! set engines, exact fractional chromatic numbers, induced-subgraph matching against
//! the fixed filter graphs, numerical faithful orthogonal representations, and the
//! filter cascade that classifies a single graph.
#![no_std]

extern crate alloc;

pub mod canon;
pub mod cascade;
pub mod cliques;
pub mod enumerate;
pub mod error;
pub mod fracchrom;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod orthrep;
mod simplex;

pub use cascade::{classify, Classifier, FilterId, FilterVerdict, Witness};
pub use canon::{canonical_form, canonical_labeling, CanonicalForm, Labeling};
pub use error::*;
pub use graph::{Graph, VertexSet, MAX_ORDER};
