use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices; at most {1} are supported")]
    TooManyVertices(usize, usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("word is not uniform")]
    NotUniform,
    #[error("`{0}` is not a clique of the graph")]
    NotAClique(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("orientation does not match the graph: {0}")]
    BadOrientation(String),
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error("induced tournament on {0} is not transitive")]
    NotTransitive(String),
    #[error("vertex `{0}` is not dominant")]
    NotDominant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
