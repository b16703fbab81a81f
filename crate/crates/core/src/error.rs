use thiserror::Error;

use crate::analyzer::InvariantReport;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime below 2^32")]
    InvalidModulus(u64),
    #[error("coefficient {value} has a denominator divisible by {modulus}")]
    DenominatorNotInvertible { value: String, modulus: u64 },
    #[error("unrecognized field '{0}' (expected exact, mod:<prime> or mod:random)")]
    BadFieldMode(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is not homogeneous: '{first}' has degree {first_degree} but '{second}' has degree {second_degree}")]
    NotHomogeneous {
        first: String,
        first_degree: u32,
        second: String,
        second_degree: u32,
    },
    #[error("polynomial expands to zero")]
    ZeroPolynomial,
    #[error("invalid variable list: {0}")]
    BadVariables(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("generator of degree {generator_degree} exceeds target degree {degree}")]
    DegreeTooLow { generator_degree: u32, degree: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MilnorError {
    #[error("Milnor dimensions did not stabilize up to degree {kmax}")]
    NotStabilized { kmax: usize },
    #[error("the hypersurface is smooth; the coincidence threshold is undefined")]
    SmoothInput,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SaturationError {
    #[error("saturation requires the coincidence and stability thresholds: {0}")]
    PreconditionViolated(String),
    #[error("{name}: definitional value {computed:?} differs from closed form {closed_form:?}")]
    IdentityViolation {
        name: &'static str,
        computed: Option<i64>,
        closed_form: Option<i64>,
    },
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// The isolatedness heuristic failed; the partial report is attached.
    #[error("singularities do not appear to be isolated (Milnor dimensions not constant past T)")]
    NonIsolated(Box<InvariantReport>),
}
