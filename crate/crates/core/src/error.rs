use thiserror::Error;

/// Errors produced by the combinatorial and probabilistic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("q must satisfy 0 <= q < 1, got {0}")]
    QOutOfRange(String),

    #[error("parameter a_{index} must be positive, got {value}")]
    NonPositiveParameter { index: usize, value: String },

    #[error("expected {expected} parameters a_i, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("parts {0:?} are not weakly decreasing")]
    NotAPartition(Vec<u32>),

    #[error("partition {partition:?} has more than {n} nonzero parts")]
    NotInLambda { partition: Vec<u32>, n: usize },

    #[error("alphabet size must be positive")]
    EmptyAlphabet,

    #[error("letter {value} is outside the alphabet [{n}, {n}']")]
    LetterOutOfRange { value: u32, n: usize },

    #[error("invalid letter token `{0}`")]
    ParseLetter(String),

    #[error("invalid symplectic tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid punctured tableau: {0}")]
    InvalidPunctured(String),

    #[error("invalid Gelfand-Tsetlin pattern: {0}")]
    InvalidPattern(String),

    #[error("levels {x:?} and {y:?} do not interlace")]
    NotInterlaced { x: Vec<u32>, y: Vec<u32> },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("operation requires q = 0, got q = {0}")]
    RequiresClassicLimit(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
