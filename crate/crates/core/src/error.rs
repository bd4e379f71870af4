use thiserror::Error;

/// Errors raised while building, rewriting, converting or evaluating diagrams.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot compose: codomain {cod} does not match domain {dom} (boxes: {boxes})")]
    CompositionMismatch {
        cod: String,
        dom: String,
        boxes: String,
    },

    #[error("terms of a sum must be parallel: expected {expected}, found {found}")]
    NotParallel { expected: String, found: String },

    #[error("layers {index} and {} cannot be interchanged: {reason}", index + 1)]
    NotInterchangeable { index: usize, reason: String },

    #[error("invalid spiral length {0}: expected an even integer >= 4")]
    InvalidLength(usize),

    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch {
        context: String,
        expected: String,
        found: String,
    },

    #[error("no image given for {0}")]
    MissingMapping(String),

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("shape mismatch for {name}: expected {expected}, found {found}")]
    ShapeMismatch {
        name: String,
        expected: String,
        found: String,
    },

    #[error("rig mismatch: {0}")]
    RigMismatch(String),

    #[error("fixed point did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("arity mismatch in {context}: expected {expected}, found {found}")]
    Arity {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("port {0} was already consumed")]
    PortReuse(usize),

    #[error("ports must be used in order: {0}")]
    OrderViolation(String),

    #[error("port {0} is never used")]
    UnusedPort(usize),

    #[error("unknown port {0}")]
    UnknownPort(usize),

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn unsupported(what: impl Into<String>) -> Error {
    Error::Unsupported(what.into())
}
