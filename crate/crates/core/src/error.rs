use thiserror::Error;

/// Errors raised by the engine.
///
/// Variant names double as the stable error names reported by the scenario
/// runner, see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("polynomial {0} is not monic of degree >= 1")]
    NonMonicPolynomial(String),
    #[error("graded polynomial ring needs at least one variable")]
    NoVariables,
    #[error("operation requires ring kind {expected}, got {actual}")]
    WrongRingKind { expected: &'static str, actual: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("entry ({row},{col}) is not homogeneous of degree {expected}")]
    InhomogeneousEntry { row: usize, col: usize, expected: i64 },
    #[error("element {0} is not homogeneous")]
    InhomogeneousElement(String),
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("map does not commute with differentials at degree {0}")]
    NotAChainMap(usize),
    #[error("graded computation not certified below cutoff {cutoff}: {reason}")]
    GradedCutoffExceeded { cutoff: i64, reason: String },
    #[error("homology in degree {0} is not finite")]
    InfiniteHomology(usize),
    #[error("no resolution available: {0}")]
    NoResolution(String),
    #[error("lift failed while building a dominating resolution at degree {0}")]
    LiftFailure(usize),
    #[error("degeneracy s_{index} at level {level} does not send basis vectors to signed basis vectors")]
    NonMonomialDegeneracy { level: usize, index: usize },
    #[error("simplicial identity {identity} fails at level {level}")]
    SimplicialIdentity { identity: String, level: usize },
    #[error("atom {0} has no lambda profile through the requested degree")]
    MissingProfile(String),
    #[error("class has nonzero free multiplicity {0}; chi is undefined")]
    NonFiniteClass(String),
    #[error("profile of {atom} cannot be determined at degree {degree}")]
    UnderdeterminedProfile { atom: String, degree: usize },
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("f and g share a common component")]
    CommonComponent,
    #[error("derivative of {0} is a zero divisor modulo the polynomial")]
    ZeroDerivative(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable short name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::NonMonicPolynomial(_) => "NonMonicPolynomial",
            Error::NoVariables => "NoVariables",
            Error::WrongRingKind { .. } => "WrongRingKind",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::InhomogeneousEntry { .. } => "InhomogeneousEntry",
            Error::InhomogeneousElement(_) => "InhomogeneousElement",
            Error::NotAComplex(_) => "NotAComplex",
            Error::NotAChainMap(_) => "NotAChainMap",
            Error::GradedCutoffExceeded { .. } => "GradedCutoffExceeded",
            Error::InfiniteHomology(_) => "InfiniteHomology",
            Error::NoResolution(_) => "NoResolution",
            Error::LiftFailure(_) => "LiftFailure",
            Error::NonMonomialDegeneracy { .. } => "NonMonomialDegeneracy",
            Error::SimplicialIdentity { .. } => "SimplicialIdentity",
            Error::MissingProfile(_) => "MissingProfile",
            Error::NonFiniteClass(_) => "NonFiniteClass",
            Error::UnderdeterminedProfile { .. } => "UnderdeterminedProfile",
            Error::UnknownAtom(_) => "UnknownAtom",
            Error::CommonComponent => "CommonComponent",
            Error::ZeroDerivative(_) => "ZeroDerivative",
            Error::Parse(_) => "ParseError",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
