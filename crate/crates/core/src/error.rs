use thiserror::Error;

/// Which inequality of a `W(l)` constraint failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `j_k <= i_k`
    TargetExceedsSource,
    /// `next < i_k - j_k`, or `next = 0` when `i_k = j_k`
    IndexBound,
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Constraint::TargetExceedsSource => f.write_str("j <= i"),
            Constraint::IndexBound => f.write_str("next < i - j (or next = 0 when i = j)"),
        }
    }
}

/// Errors raised by the cell operations of any category instance.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("a 0-cell has no source or target")]
    NoSource,
    #[error("identity is undefined for {level}-cells when the top level is {max_level}")]
    NoIdentity { level: usize, max_level: usize },
    /// `level` is the spine level, or `None` for the head.
    #[error("constraint violated at {}: {constraint}", match .level { Some(k) => format!("level {k}"), None => "head".to_string() })]
    ConstraintViolation {
        level: Option<usize>,
        constraint: Constraint,
    },
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("cells are not composable along p = {p}")]
    NotComposable { p: usize },
}

/// Errors raised while reading a flow-data document.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FlowError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown id {id:?} at {path}")]
    UnknownId { id: String, path: String },
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
}

/// Errors raised by the index functors.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FunctorError {
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("flow data inconsistent with the index conditions: {0}")]
    Inconsistent(CellError),
}
