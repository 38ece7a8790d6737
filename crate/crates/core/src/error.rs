use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("modulus is not monic")]
    NonMonicModulus,
    #[error("modulus must have degree at least 2, got {0}")]
    DegenerateModulus(usize),
    #[error("extension base must be Q or Z_p")]
    UnsupportedTower,
    #[error("irreducibility over Q is only decided up to degree 3, got {0}")]
    UnsupportedDegree(usize),

    // arithmetic
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic mismatch: scalar has characteristic {scalar}, field has {field}")]
    CharacteristicMismatch { scalar: u64, field: u64 },
    #[error("element does not belong to the field {0}")]
    FieldMismatch(String),
    #[error("field {0} is infinite")]
    InfiniteField(String),
    #[error("field order p^n does not fit in 64 bits")]
    OrderOverflow,

    // spaces
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no scalar orbit")]
    ZeroVector,

    // maps
    #[error("vector is not in the map's domain")]
    DomainMismatch,
    #[error("{0} is not an extension field; additive maps over a prime field are homogeneous")]
    NotAnExtension(String),
    #[error("the ratio map needs characteristic other than 2")]
    CharacteristicTwo,
    #[error("exhaustive checking needs a finite domain")]
    InfiniteDomainExhaustive,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("map is defined over {0}, expected Q")]
    RequiresRationals(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),

    // search
    #[error("search space of {candidates} candidates exceeds the limit of {limit}")]
    SearchSpaceTooLarge { candidates: String, limit: u64 },
    #[error("{0} is not a prime field")]
    NotPrimeField(String),
    #[error("post-hoc verification failed: {0}")]
    VerificationFailed(String),

    // text and file encodings
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
