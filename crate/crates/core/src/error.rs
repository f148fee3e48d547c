use core::fmt;

/// A structural property an operation requires of its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Nilpotent,
    Tree,
    CycleFree,
    UpperTriangular,
    StrictlyUpperTriangular,
    RealDiagonal,
    Hermitian,
    Square3,
    NonzeroEntries,
    RealTripleProduct,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Predicate::Nilpotent => "nilpotent",
            Predicate::Tree => "tree",
            Predicate::CycleFree => "cycle-free",
            Predicate::UpperTriangular => "upper triangular",
            Predicate::StrictlyUpperTriangular => "strictly upper triangular",
            Predicate::RealDiagonal => "real diagonal",
            Predicate::Hermitian => "hermitian",
            Predicate::Square3 => "3x3",
            Predicate::NonzeroEntries => "nonzero a12, a13, a23",
            Predicate::RealTripleProduct => "real triple product",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("precondition failed: input is not {0}")]
    Precondition(Predicate),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("non-finite value at entry ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("level {level} outside [{lo}, {hi}]")]
    LevelOutOfRange { level: f64, lo: f64, hi: f64 },
    #[error("entry a{row}{col} is zero")]
    ZeroEntry { row: usize, col: usize },
    #[error("too few points: {got} < {min}")]
    TooFewPoints { got: usize, min: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
