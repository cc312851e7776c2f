use thiserror::Error;

use crate::web::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid web: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    #[error("rank mismatch: N={0} vs N={1}")]
    RankMismatch(u32, u32),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("expected a closed web")]
    NotClosed,

    #[error("web is not a MOY graph")]
    NotMoy,

    #[error("bad boundary coloring: {0}")]
    Boundary(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("invalid cycle collection: {0}")]
    InvalidCycles(String),

    #[error("cannot remove trivial edges: {0}")]
    TrivialEdges(String),
}
