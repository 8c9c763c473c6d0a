use alloc::string::String;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("matrix is rank deficient: column {column} depends on earlier columns")]
    RankDeficient { column: usize },
    #[error("linear forms do not span the dual space; uncovered direction {0}")]
    UncoveredDirection(String),
    #[error("region is unbounded along {0}; supply a search window")]
    Unbounded(String),
    #[error("grading matrix does not annihilate lattice column {column}")]
    NotAnnihilating { column: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary maps do not compose to zero at index {index}, entry ({row}, {col})")]
    NotAComplex { index: usize, row: usize, col: usize },
    #[error("lattice is not a Lawrence lift")]
    NotLawrence,
    #[error("stratification incompatible: {0}")]
    Incompatible(String),
    #[error("invalid cell data: {0}")]
    InvalidCell(String),
    #[error("cell structure changes when epsilon is halved ({0})")]
    UnstableEpsilon(String),
}

pub type Result<T> = core::result::Result<T, Error>;
