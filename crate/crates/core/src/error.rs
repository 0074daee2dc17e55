use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),
    #[error("{0}")]
    Infinite(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
