//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in a lattice computation.
///
/// Variants are grouped loosely by the module that raises them. The
/// [`Error::code`] string is stable and is what the command-line front end
/// reports.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // lattice substrate
    #[error("a Lorentzian lattice needs n >= 1 (got n = {0})")]
    DegenerateSignature(usize),
    #[error("gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("gram matrix is degenerate (determinant 0)")]
    DegenerateForm,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different lattices")]
    LatticeMismatch,
    #[error("matrix does not preserve the form; first violation at ({row}, {col})")]
    FormNotPreserved { row: usize, col: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },
    #[error("class is not integral")]
    NotIntegral,

    // spectral
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("constant term must be +1 or -1 (got {0})")]
    BadConstantTerm(String),
    #[error("form has signature ({plus}, {minus}); only (1, n) is supported")]
    SignatureUnsupported { plus: usize, minus: usize },
    #[error("Salem contract violated: {0}")]
    SalemContractViolated(String),
    #[error("isometry has null entropy")]
    NotPositiveEntropy,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("residual factor is reducible; found factor {factor}")]
    ReducibleSalemFactor { factor: String },
    #[error("polynomial degree {degree} exceeds the cap {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    // nef dynamics
    #[error("leading eigenspace has dimension {0}, expected 1")]
    EigenspaceDimensionNot1(usize),
    #[error("power iteration did not converge in {iterations} steps (last change {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid start vector: {0}")]
    InvalidStartVector(String),
    #[error("invariant splitting failed: {0}")]
    SplittingFailed(String),
    #[error("postcondition failed: {0}")]
    ContractViolated(String),

    // zariski
    #[error("class is not decomposable against the curve configuration: {0}")]
    NotPseudoEffectiveRelative(String),
    #[error("unknown curve name {0:?}")]
    UnknownCurve(String),
    #[error("duplicate curve name {0:?}")]
    DuplicateCurve(String),
    #[error("decomposition depends on curve ordering: {0}")]
    NonUniqueResult(String),

    // surface model
    #[error("null sets of L+, L- and L+ + L- disagree at curve {curve:?} ({detail})")]
    NullSetMismatch { curve: String, detail: String },
    #[error("(-1)-class {curve:?} has a g-image outside the curve configuration")]
    OrbitNotClosed { curve: String },
    #[error("set is not stable under g: image of {curve:?} is not in the set")]
    NotGStable { curve: String },
    #[error("classes {a:?} and {b:?} are not disjoint")]
    NotDisjoint { a: String, b: String },
    #[error("class {curve:?} is not a (-1)-class (C^2 = {square}, K.C = {canonical})")]
    NotExceptionalClass { curve: String, square: String, canonical: String },
    #[error("no integral basis for the complement: {0}")]
    NoIntegralBasis(String),
    #[error("negative coefficient in the anti-canonical solution: {solution}")]
    NegativeCoefficient { solution: String },
    #[error("the periodic-curve set is empty")]
    EmptyStab,
    #[error("pair is not minimal; contractible set {0:?}")]
    NotMinimal(Vec<String>),
    #[error("class {curve:?} has self-intersection {square}; expected <= -2")]
    SelfIntersectionTooLarge { curve: String, square: String },

    // weyl group
    #[error("root must be integral with square -2 (got square {0})")]
    NotMinusTwoRoot(String),
    #[error("invalid simple-root order: {0}")]
    InvalidOrder(String),

    // stabilizer analysis
    #[error("class is not stabilized: coordinates {i} and {j} are not proportional")]
    NotStabilized { i: usize, j: usize },
    #[error("matrix set is not closed under composition and inverse")]
    NotClosedUnderComposition,
    #[error("generator {index} has positive entropy")]
    NotNullEntropy { index: usize },
    #[error("no isotropic fixed ray (fixed space dimension {fixed_dim}; all generators of finite order: {finite_image})")]
    NotFound { fixed_dim: usize, finite_image: bool },
    #[error("the zero class has no ray")]
    ZeroClass,

    // general
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("schema violation at {pointer}: {message}")]
    SchemaViolation { pointer: String, message: String },
}

impl Error {
    /// Stable, machine readable name of the error.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            DegenerateSignature(_) => "DegenerateSignature",
            NotSquare { .. } => "NotSquare",
            NotSymmetric { .. } => "NotSymmetric",
            DegenerateForm => "DegenerateForm",
            DimensionMismatch { .. } => "DimensionMismatch",
            LatticeMismatch => "LatticeMismatch",
            FormNotPreserved { .. } => "FormNotPreserved",
            NotUnimodular { .. } => "NotUnimodular",
            NotIntegral => "NotIntegral",
            NonMonic => "NonMonic",
            BadConstantTerm(_) => "BadConstantTerm",
            SignatureUnsupported { .. } => "SignatureUnsupported",
            SalemContractViolated(_) => "SalemContractViolated",
            NotPositiveEntropy => "NotPositiveEntropy",
            VerificationFailed(_) => "VerificationFailed",
            ReducibleSalemFactor { .. } => "ReducibleSalemFactor",
            DegreeTooLarge { .. } => "DegreeTooLarge",
            EigenspaceDimensionNot1(_) => "EigenspaceDimensionNot1",
            NoConvergence { .. } => "NoConvergence",
            InvalidStartVector(_) => "InvalidStartVector",
            SplittingFailed(_) => "SplittingFailed",
            ContractViolated(_) => "ContractViolated",
            NotPseudoEffectiveRelative(_) => "NotPseudoEffectiveRelative",
            UnknownCurve(_) => "UnknownCurve",
            DuplicateCurve(_) => "DuplicateCurve",
            NonUniqueResult(_) => "NonUniqueResult",
            NullSetMismatch { .. } => "NullSetMismatch",
            OrbitNotClosed { .. } => "OrbitNotClosed",
            NotGStable { .. } => "NotGStable",
            NotDisjoint { .. } => "NotDisjoint",
            NotExceptionalClass { .. } => "NotExceptionalClass",
            NoIntegralBasis(_) => "NoIntegralBasis",
            NegativeCoefficient { .. } => "NegativeCoefficient",
            EmptyStab => "EmptyStab",
            NotMinimal(_) => "NotMinimal",
            SelfIntersectionTooLarge { .. } => "SelfIntersectionTooLarge",
            NotMinusTwoRoot(_) => "NotMinusTwoRoot",
            InvalidOrder(_) => "InvalidOrder",
            NotStabilized { .. } => "NotStabilized",
            NotClosedUnderComposition => "NotClosedUnderComposition",
            NotNullEntropy { .. } => "NotNullEntropy",
            NotFound { .. } => "NotFound",
            ZeroClass => "ZeroClass",
            InvalidArgument(_) => "InvalidArgument",
            SchemaViolation { .. } => "SchemaViolation",
        }
    }

    pub fn schema(pointer: &str, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            pointer: if pointer.is_empty() { "/".to_string() } else { pointer.to_string() },
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
