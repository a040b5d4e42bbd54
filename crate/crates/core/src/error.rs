use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge {edge} out of range (graph has {m} edges)")]
    InvalidEdge { edge: usize, m: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("graph is not regular of the required degree: {0}")]
    Regularity(String),

    #[error("{what} exceeds the supported bound ({size} > {bound})")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("assignment does not match the graph: {0}")]
    EdgeMismatch(String),

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    #[error("flow/valuation correspondence failed: {0}")]
    Correspondence(String),

    #[error("internal error: {0}")]
    Internal(String),
}
