use thiserror::Error;

/// Errors produced while building graphs, schedules, and walk operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("coin {coin} out of range for vertex {vertex} of degree {degree}")]
    CoinOutOfRange {
        vertex: usize,
        coin: usize,
        degree: usize,
    },
    #[error("flat index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),
    #[error("invalid stochastic schedule: {0}")]
    InvalidSchedule(String),
    #[error("schedule holds {available} matrices but step {step} was requested")]
    ScheduleExhausted { step: usize, available: usize },
    #[error("cannot build an independent set from a zero vector")]
    ZeroVector,
    #[error("vector {index} is numerically dependent (residual {residual:e})")]
    DependentVectors { index: usize, residual: f64 },
    #[error("coin block norm mismatch: |psi|^2 = {psi:e}, |phi|^2 = {phi:e}")]
    NormMismatch { psi: f64, phi: f64 },
    #[error("vertex {vertex}: {source}")]
    AtVertex { vertex: usize, source: Box<Error> },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
