use std::fmt;

use thiserror::Error;

use crate::types::FiniteType;

/// Byte offset into a source string, rendered as `line:col` when the source is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn locate(src: &str, offset: usize) -> Pos {
        let offset = offset.min(src.len());
        let mut line = 1;
        let mut col = 1;
        for (i, c) in src.char_indices() {
            if i >= offset {
                break;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: Pos, msg: String },

    #[error("scope error at {pos}: {msg}")]
    Scope { pos: Pos, msg: String },

    #[error("unsupported connective at {pos}: disjunction is not part of the fragment")]
    UnsupportedConnective { pos: Pos },

    #[error("type error: expected {expected}, found {actual}{}", context_suffix(.context))]
    Type {
        expected: String,
        actual: String,
        context: String,
    },

    #[error("empty set literal: sets are finite and non-empty")]
    EmptySetLiteral,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("function table is not total over its domain {0}")]
    PartialTable(FiniteType),

    #[error("budget exceeded: {what} has {} values, budget is {budget}", size_text(*.size))]
    BudgetExceeded {
        what: String,
        size: Option<u128>,
        budget: u64,
    },

    #[error("{0} is not a *-type")]
    NotAStarType(FiniteType),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn context_suffix(ctx: &str) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!(" ({ctx})")
    }
}

fn size_text(size: Option<u128>) -> String {
    match size {
        Some(n) => n.to_string(),
        None => "more than 2^128".to_string(),
    }
}

impl Error {
    pub fn type_mismatch(expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Error::Type {
            expected: expected.to_string(),
            actual: actual.to_string(),
            context: String::new(),
        }
    }

    pub fn type_in(
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        context: impl Into<String>,
    ) -> Self {
        Error::Type {
            expected: expected.to_string(),
            actual: actual.to_string(),
            context: context.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
