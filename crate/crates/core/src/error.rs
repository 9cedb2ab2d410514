use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },

    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },

    #[error("line {line}: `{path}` is not a path (`{left}` cannot follow `{right}`)")]
    NotComposable { line: usize, path: String, left: String, right: String },

    #[error("line {line}: relation violates I ⊆ F² (term `{term}` has length {length})")]
    ShortRelation { line: usize, term: String, length: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("quiver has no vertices")]
    EmptyQuiver,

    #[error("ideal is not admissible within the search bounds: {0}")]
    NotAdmissible(String),

    #[error("subspace is not closed under the bimodule action")]
    NotClosed,

    #[error("bar complex too large: C^3 has {size} basis elements (cap {cap})")]
    ComplexTooLarge { size: usize, cap: usize },

    #[error("routes disagree for {invariant}: {detail}")]
    RouteMismatch { invariant: String, detail: String },

    #[error("quiver has an oriented cycle")]
    NotAcyclic,

    #[error("quiver is not connected")]
    NotConnected,

    #[error("quiver is a crown")]
    IsCrown,

    #[error("presentation is not monomial")]
    NotMonomial,

    #[error("presentation is not triangular (quiver has an oriented cycle)")]
    NotTriangular,
}
