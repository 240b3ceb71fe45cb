use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("algebra is not finite dimensional: paths of length {0} do not reduce")]
    NotFiniteDimensional(usize),
    #[error("truncated path space too large ({0} paths) for non-homogeneous relations")]
    TruncationTooLarge(usize),
    #[error("quiver has an oriented cycle")]
    HasOrientedCycle,
    #[error("potential term is not a cycle: {0}")]
    NonCyclicTerm(String),
    #[error("potential term has length {0} < 3")]
    CycleTooShort(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("zero module has no presentation")]
    ZeroModule,
    #[error("module does not satisfy the relations: {0}")]
    InvalidModule(String),
    #[error("indecomposable discovery still growing at dimension cap {0}")]
    CapExceeded(usize),
    #[error("complex is not minimal")]
    NotMinimized,
    #[error("complex has nonzero terms in positive degree")]
    PositiveDegreePart,
    #[error("complex is not supported in degrees -1 and 0")]
    WrongSupport,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("summand index {0} out of range")]
    SummandOutOfRange(usize),
    #[error("set has no unique top and bottom element")]
    NotAnInterval,
    #[error("object is not a two-term silting object")]
    NotTwoTerm,
    #[error("indecomposable list is not closed: {0}")]
    NotClosed(String),
    #[error("{0} indecomposables is too many for the exhaustive scan")]
    TooManyIndecomposables(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("{0}x{0} matrix is too large to canonicalize")]
    TooLarge(usize),
    #[error("Ext space of dimension {0} has too many lines to enumerate")]
    TooManyExtensionClasses(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
