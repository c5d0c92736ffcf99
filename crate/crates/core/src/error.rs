use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is outside the supported range (p < 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("modulus {0} is reducible over the prime field")]
    Reducible(String),
    #[error("modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero element has no top symbol")]
    ZeroElement,
    #[error("v must be monic of degree at least 1")]
    NotMonic,
    #[error("roots are required for this operation")]
    MissingRoots,
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("central generator {generator} does not commute with {with}")]
    CentralityFailure { generator: String, with: String },
    #[error("center relation does not hold")]
    RelationFailure,
    #[error("degree bound {0} gives a monomial basis that is too large")]
    DegreeTooLarge(usize),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("operator relation fails on t^{0}")]
    RelationMismatch(usize),
    #[error("eigenvalues must be pairwise distinct")]
    RepeatedEigenvalues,
    #[error("matrix pair is not a point of the Calogero-Moser variety")]
    NotAMember,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("no suitable prime below {0}")]
    ExhaustedSearch(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot specialize: {0}")]
    Specialization(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
