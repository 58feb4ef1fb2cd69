//! Census driver for nonisomorphic graphs: parallel enumeration and classification,
//! per-shard checkpoints, survivor files, reports, and graph file formats.

pub mod census;
pub mod checkpoint;
pub mod error;
pub mod io;
pub mod search;

pub use census::{emit_survivors, run_census, CensusConfig, CensusReport};
pub use error::Error;
