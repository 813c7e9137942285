use alloc::string::String;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("elements belong to different rings")]
    HandleMismatch,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("operation unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial is not univariate over a field")]
    NotUnivariate,
    #[error("root finding in characteristic {0} is only meaningful modulo p")]
    CharacteristicCaveat(u64),
    #[error("operation requires a commutative ring")]
    NoncommutativeUnsupported,
    #[error("element is not in a recognized normal form: {0}")]
    NotRecognizedNormalForm(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("star map is not an involution: {0}")]
    StarNotInvolution(String),
    #[error("ideal components require a nonzero degree")]
    ZeroDegreeRequest,
    #[error("ring not supported here: {0}")]
    UnsupportedRing(String),
    #[error("rho is not a unit")]
    RhoNotUnit,
    #[error("data outside the supported family: {0}")]
    UnsupportedFamily(String),
    #[error("alpha does not satisfy the required equations: {0}")]
    AlphaConditionsFail(String),
    #[error("{p} does not divide {n}")]
    PDoesNotDivideN { n: String, p: u64 },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("coefficient {0} does not lie in the base ring")]
    CoefficientNotInRing(String),
    #[error("theta maps {0} and {1} do not commute")]
    ThetaNotCommuting(usize, usize),
    #[error("rank-n data failed verification")]
    UnverifiedData,
    #[error("normality of {0} could not be verified")]
    NormalityUnverified(String),
    #[error("nu = tau sigma is not known to be surjective")]
    NuNotSurjective,
    #[error("invalid endomorphism: {0}")]
    InvalidEndo(String),
}

pub type Result<T> = core::result::Result<T, AlgebraError>;
