use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus (need a prime 2..=31)")]
    InvalidModulus(u32),

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("operands disagree on modulus or qupit count")]
    ParameterMismatch,

    #[error("projection collapses the image{}", match .line { Some(i) => format!(" of line {i}"), None => String::new() })]
    CollapsedImage { line: Option<usize> },

    #[error("projection centre vectors are zero or linearly dependent")]
    DependentCentre,

    #[error("columns {line} and {line}+n do not span a line")]
    DegenerateLine { line: usize },

    #[error("operation requires p = 2, got p = {0}")]
    UnsupportedModulus(u8),

    #[error("vertex {vertex} is isolated")]
    IsolatedVertex { vertex: usize },

    #[error("graph adjacency is not symmetric with zero diagonal at ({row}, {col})")]
    InvalidAdjacency { row: usize, col: usize },

    #[error("clique search exceeded its time limit (best clique so far has {} vertices)", .best.len())]
    TimeLimitExceeded { best: Vec<usize> },

    #[error("distance {0} is not supported by candidate enumeration (need 2 <= d <= 4)")]
    UnsupportedDistance(usize),

    #[error("Hilbert space dimension {p}^{n} exceeds the dense-oracle limit")]
    TooLarge { p: u8, n: usize },

    #[error("generators {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },

    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("group contains a non-trivial scalar (generator {generator} has order above p)")]
    InvalidGroup { generator: usize },

    #[error("operator is not a projector (residual {residual:.3e})")]
    NotProjector { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
