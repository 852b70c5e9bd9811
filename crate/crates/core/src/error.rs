use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("matrix is not a valid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unknown root datum name: {0}")]
    UnknownDatum(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("sublattice is not saturated: invariant factor {0} exceeds 1")]
    NotSaturated(String),
    #[error("polynomial has a non-cyclotomic factor: {0}")]
    NotCyclotomic(String),
    #[error("enumeration budget exceeded: needed more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("permutation of the simple roots does not preserve the Cartan matrix")]
    NotDiagramAutomorphism,
    #[error("lattice is not stable under the given action")]
    LatticeNotStable,
    #[error("no eigenvalue assignment matches the invariant series")]
    SeriesMismatch,
    #[error("operation requires an irreducible group")]
    NotIrreducible,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
