use thiserror::Error;

use crate::layout::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: loop edge `{label} {label}` is not allowed")]
    Loop { line: usize, label: String },

    #[error("line {line}: expected one or two vertex labels, found `{text}`")]
    Syntax { line: usize, text: String },

    #[error("document declares no vertices")]
    EmptyDocument,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("loop at vertex `{0}`")]
    LoopEdge(String),

    #[error("graph of order {order} exceeds the cap of {cap} for {what}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("graph is disconnected ({components} components); process each component separately")]
    Disconnected { components: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("invalid layout or representation: {0}")]
    Invalid(Violation),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed {what} file, line {line}: {message}")]
    Format {
        what: &'static str,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
