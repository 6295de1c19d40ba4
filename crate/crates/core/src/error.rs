use std::fmt;

use thiserror::Error;

/// A syntax error in one of the textual formats, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// A typing failure, with the path of child indices leading to the offending node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TypeError {
    pub path: Vec<usize>,
    pub message: String,
}

impl TypeError {
    pub fn new(message: impl Into<String>) -> Self {
        TypeError {
            path: Vec::new(),
            message: message.into(),
        }
    }

    /// Prefix the path with the index of the child the error came from.
    pub fn under(mut self, child: usize) -> Self {
        self.path.insert(0, child);
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "ill-typed at root: {}", self.message)
        } else {
            let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
            write!(f, "ill-typed at {}: {}", path.join("."), self.message)
        }
    }
}

/// Top-level error for operations that may fail in more than one way.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
