use thiserror::Error;

use crate::units::Bidegree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("expression error at offset {offset}: {reason}")]
    Expr { offset: usize, reason: String },

    #[error("unknown {what} {name:?}")]
    Unknown { what: &'static str, name: String },

    #[error("coefficient modes differ: {left} vs {right}")]
    ModeMismatch { left: String, right: String },

    #[error("sum of terms in different bidegrees {left} and {right}")]
    Inhomogeneous { left: Bidegree, right: Bidegree },

    #[error("a product needs at least one factor")]
    EmptyWord,

    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),

    #[error("relation {relation:?} is not supported: {reason}")]
    BadRelation { relation: String, reason: String },

    #[error("rewriting did not reach a normal form within {passes} passes")]
    RewriteLimit { passes: usize },

    #[error("rewrite order violated: {from} rewrote to the larger monomial {to}")]
    RewriteOrder { from: String, to: String },

    #[error("line {line}: {reason}")]
    Table { line: usize, reason: String },

    #[error("line {line}: duplicate row for {name} in degree ({stem},{weight})")]
    DuplicateRow {
        line: usize,
        name: String,
        stem: i64,
        weight: i64,
    },

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
