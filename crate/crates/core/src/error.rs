use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} outside 1..=32")]
    InvalidOrder(usize),
    #[error("combined order {0} exceeds 32")]
    OrderOverflow(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("empty vertex selection")]
    EmptySelection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("invalid character {byte:#04x} at offset {offset}")]
    InvalidCharacter { offset: usize, byte: u8 },
    #[error("record truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data: expected {expected} bytes, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("nonzero padding bits in final sextet")]
    NonzeroPadding,
    #[error("order {0} not supported (maximum 32)")]
    OrderTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("order {0} outside 1..=12")]
    OrderOutOfRange(usize),
    #[error("shard {shard} invalid for {total} shards")]
    InvalidShard { shard: usize, total: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate has {found} primal weights for a graph of order {expected}")]
    PrimalLength { expected: usize, found: usize },
    #[error("certificate has {found} dual weights but the graph has {expected} maximal independent sets")]
    DualLength { expected: usize, found: usize },
    #[error("certificate independent set {0} does not match the graph's maximal independent sets")]
    SetMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReconstructError {
    #[error("floating-point solve did not converge")]
    SolverFailed,
    #[error("duality gap {gap:e} exceeds threshold")]
    DualityGap { gap: f64 },
    #[error("no rational within threshold of {value} with denominator at most {bound}")]
    NoRational { value: f64, bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrthRepError {
    #[error("representation has {found} vectors for a graph of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("vector {vertex} has length {found}, expected dimension {expected}")]
    DimensionMismatch { vertex: usize, expected: usize, found: usize },
    #[error("vector {vertex} has norm {norm}, not 1")]
    NotNormalized { vertex: usize, norm: f64 },
    #[error("vectors {0} and {1} span the same ray")]
    RayCollision(usize, usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("malformed representation text: {0}")]
    Parse(&'static str),
}
