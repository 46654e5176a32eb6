use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} is outside the supported range 1..={max}", max = crate::graph::MAX_VERTICES)]
    VertexCount(usize),
    #[error("vertex {vertex} is not in 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("vertex subsets overlap at vertex {0}")]
    Overlap(usize),
    #[error("edge {{{0},{1}}} leaves its vertex subset")]
    EdgeOutsideSupport(usize, usize),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("isomorphism test supports at most {max} vertices, got {0}", max = crate::graph::iso::MAX_ISO_VERTICES)]
    TooLargeForIsomorphism(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("partition is not equitable: vertex {vertex} has {found} neighbours in part {to}, expected {expected} (part {from})")]
    NotEquitable {
        vertex: usize,
        from: usize,
        to: usize,
        found: usize,
        expected: usize,
    },
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("matrix is not square")]
    NotSquare,
    #[error("power iteration did not reach the requested tolerance after {0} steps")]
    NoConvergence(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("k*n = {k}*{n} is odd")]
    OddDegreeSum { k: usize, n: usize },
    #[error("collection has {found} graphs, expected {expected}")]
    CollectionSize { found: usize, expected: usize },
    #[error("factor is not valid for the transformed collection: {0}")]
    InvalidInput(String),
    #[error("pull-back stuck: {0}")]
    PullBackStuck(String),
    #[error("pull-back exceeded its iteration cap of {0}")]
    IterationCap(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("graph is not a labeled copy of H_{{n,k}}: {0}")]
    NotHnk(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no system of distinct representatives of size {0}")]
    NoRepresentatives(usize),
    #[error("no {0}-factor found in the auxiliary graph")]
    NoFactor(usize),
    #[error("malformed layers: {0}")]
    MalformedLayers(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
