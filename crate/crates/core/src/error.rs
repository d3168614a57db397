use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero is not factorable")]
    ZeroInteger,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("singular model")]
    SingularModel,
    #[error("singular family member")]
    SingularFamilyMember,
    #[error("non-integral model")]
    NonIntegralModel,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("split failure: {0}")]
    SplitFailure(String),
    #[error("prime {ell} exceeds the point counting budget {budget}")]
    CountingBudget { ell: u64, budget: u64 },
    #[error("level {level} too large (budget {budget}); use cache ingestion")]
    LevelTooLarge { level: u64, budget: u64 },
    #[error("no Hecke polynomial for N={level} ell={ell}; ingest a cache")]
    MissingCharpoly { level: u64, ell: u64 },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("rational form trace mismatch: {0}")]
    TraceMismatch(String),
    #[error("generator not found within bound {0}")]
    GeneratorNotFound(u64),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
