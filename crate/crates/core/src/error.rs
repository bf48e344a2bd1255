use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty complex")]
    Empty,
    #[error("degree {degree} out of range for complex of dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("cochains live on different complexes")]
    ComplexMismatch,
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),
    #[error("not a closed pseudomanifold: {0}")]
    NotClosedPseudomanifold(String),
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("dimension {dim} does not fit: {msg}")]
    WrongDimension { dim: usize, msg: String },
    #[error("not a cocycle")]
    NotCocycle,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("duality failure in degree {0}")]
    DualityFailure(usize),
    #[error("size bound exceeded: {count} simplices > {bound}")]
    SizeBound { count: usize, bound: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("checksum mismatch for {path}: expected {expected}, found {found}")]
    Checksum { path: String, expected: String, found: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
