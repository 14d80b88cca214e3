use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label {label} does not match group {group}: {reason}")]
    InvalidLabel {
        label: String,
        group: String,
        reason: String,
    },
    #[error("negative multiplicity {mult} for {label}")]
    NegativeMultiplicity { label: String, mult: i64 },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group definition: field `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("group {0} has no discrete series (unequal rank)")]
    NoDiscreteSeries(String),
    #[error("not a discrete series representation: {0}")]
    NotDiscreteSeries(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("window too large: {0}")]
    WindowTooLarge(String),
    #[error("principal class {class} has {count} minimal K-types, expected 1 or 2")]
    TooManyMinimalKTypes { class: String, count: usize },
    #[error("inversion refused, unresolved split columns: {}", columns.join(", "))]
    InversionRefused { columns: Vec<String> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(field: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}
