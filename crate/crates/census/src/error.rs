use std::io;
use std::path::PathBuf;

use sicgraph_core::{EnumerateError, Graph6Error};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("line {line}: {reason}")]
    AdjacencyText { line: usize, reason: String },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("order range must lie within 1..=12, got {0}")]
    OrderRange(String),
    #[error("{path}: record {record} is corrupt: {reason}")]
    CorruptCheckpoint { path: PathBuf, record: usize, reason: String },
    #[error("shard {shard} of order {order} is recorded more than once")]
    ShardOverlap { order: usize, shard: usize },
    #[error("checkpoint uses {found} shards per order, this run uses {expected}")]
    ShardLayout { expected: usize, found: usize },
    #[error("survivors after stage {0} were not recorded")]
    StageNotRecorded(String),
    #[error("unknown filter stage `{0}`")]
    UnknownStage(String),
}
