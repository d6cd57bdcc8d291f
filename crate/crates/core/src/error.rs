use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class {class} does not live on model {model}")]
    ModelMismatch { model: String, class: String },

    #[error("{0} is not very ample on {1}")]
    NotVeryAmple(String, String),

    #[error("{0} is not ample on {1}")]
    NotAmple(String, String),

    #[error("very ampleness is undecidable on abstract model {0}")]
    Undecidable(String),

    #[error("no exact cohomology engine for abstract model {0}; use the classification solvers")]
    NoExactEngine(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("inconsistent intersection table: {0}")]
    InvalidTable(String),

    #[error("parity violation: {0} is odd, adjunction requires it even")]
    Parity(i64),

    #[error("invalid search range {name}: {reason}")]
    InvalidRange { name: String, reason: String },

    #[error("{0}")]
    Misuse(String),

    #[error("integer overflow during exact elimination")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
