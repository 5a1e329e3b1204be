use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} does not belong to {monoid}")]
    InvalidElement { element: String, monoid: String },

    #[error("not a monoid: {0}")]
    InvalidMonoid(String),

    #[error("not a monoid homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("owner mismatch: {0}")]
    OwnerMismatch(String),

    #[error("subset is not open: {0}")]
    NotOpen(String),

    #[error("gluing data is inconsistent: {0}")]
    Gluing(String),

    #[error("cocycle condition fails: {0}")]
    Cocycle(String),

    #[error("rank defect: expected a line bundle, found rank {0}")]
    RankDefect(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
