use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {0}-{1}: loops are not allowed")]
    Loop(usize, usize),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("construction error for {family}: {constraint}")]
    Construction { family: String, constraint: String },

    #[error("rotation error at vertex {vertex}: {reason}")]
    Rotation { vertex: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis error: {0}")]
    Hypothesis(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("empty family: no graph with {0}")]
    EmptyFamily(String),

    #[error("reconstruction of {family} failed: {report}")]
    Reconstruction { family: String, report: String },

    #[error("invalid partition: {0}")]
    Partition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
