use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("zero vector has no divisibility")]
    ZeroVector,
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("lattice is odd; the discriminant quadratic form is undefined")]
    OddLattice,
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("rank {rank} outside supported range {min}..={max}")]
    RankBound { rank: usize, min: usize, max: usize },
    #[error("enumeration bound exceeded: {size} > {bound}")]
    EnumerationBound { size: u64, bound: u64 },
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("module is degenerate")]
    DegenerateModule,
    #[error("sublattice is not primitive")]
    NotPrimitive,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("lattice fails the period filter: {0}")]
    FailsHFilter(String),
    #[error("lattices are not in the same genus")]
    GenusMismatch,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::NonSquare { .. }
            | Error::DimensionMismatch(_)
            | Error::NotSymmetric
            | Error::UnknownCatalog(_)
            | Error::InvalidParameters(_) => 2,
            Error::Singular | Error::Degenerate | Error::DegenerateModule => 3,
            Error::RankBound { .. } | Error::NotPositiveDefinite | Error::OddLattice => 4,
            Error::Precondition(_) | Error::FailsHFilter(_) | Error::GenusMismatch => 5,
            _ => 1,
        }
    }
}
