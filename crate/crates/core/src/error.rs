use thiserror::Error;

/// Errors raised by constructions and checkers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("space has no points")]
    EmptyCarrier,
    #[error("empty set where a nonempty one is required")]
    EmptySet,
    #[error("invalid minimal-neighbourhood basis: {0}")]
    Validation(String),
    #[error("point `{0}` does not belong to the space")]
    ForeignPoint(String),
    #[error("classes do not partition the space: {0}")]
    NotAPartition(String),
    #[error("map does not match its source/target carriers: {0}")]
    CarrierMismatch(String),
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(String, String, String),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element `{0}` has no inverse")]
    NoInverse(String),
    #[error("malformed group table: {0}")]
    MalformedTable(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("set is not open: {0}")]
    NotOpen(String),
    #[error("map is not a homeomorphism: {0}")]
    NotHomeomorphism(String),
    #[error("not a global action: {0}")]
    NotAnAction(String),
    #[error("not a partial action: {0}")]
    NotAPartialAction(String),
    #[error("random generation exhausted after {0} attempts")]
    GenerationExhausted(usize),
    #[error("partial actions are over different groups")]
    GroupMismatch,
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
