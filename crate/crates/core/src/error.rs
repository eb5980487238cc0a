use thiserror::Error;

/// Everything that can go wrong while building or certifying operator bases.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("element {index} is not unitary")]
    NonUnitary { index: usize },

    #[error("elements {i} and {j} are not Hilbert-Schmidt orthogonal")]
    NotOrthogonal { i: usize, j: usize },

    #[error("pair ({i}, {j}) has |Tr|^2 = {observed}, expected {expected}")]
    NotUnbiased {
        i: usize,
        j: usize,
        observed: f64,
        expected: f64,
    },

    #[error("bases are orthogonal to each other (constant is zero)")]
    ZeroConstant,

    #[error("generator does not give an orthogonal unitary triple {{I, A, A^2}}")]
    InvalidGenerator,

    #[error("{0} is not prime")]
    NonPrime(usize),

    #[error("elements of basis {basis} send preparation {prep} to different bases")]
    InconsistentAction { basis: usize, prep: String },

    #[error("images of state basis {state_basis} under unitary basis {unitary_basis} split across bases")]
    NoConsistentImage {
        state_basis: usize,
        unitary_basis: usize,
    },

    #[error("no distinguishable pairing exists for basis {0}")]
    NoValidPairing(usize),

    #[error("{candidates} candidates exceeds the scan limit of {limit}")]
    TooManyCandidates { candidates: u128, limit: u128 },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimMismatch { .. } => "DimMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NonUnitary { .. } => "NonUnitary",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::NotUnbiased { .. } => "NotUnbiased",
            Error::ZeroConstant => "ZeroConstant",
            Error::InvalidGenerator => "InvalidGenerator",
            Error::NonPrime(_) => "NonPrime",
            Error::InconsistentAction { .. } => "InconsistentAction",
            Error::NoConsistentImage { .. } => "NoConsistentImage",
            Error::NoValidPairing(_) => "NoValidPairing",
            Error::TooManyCandidates { .. } => "TooManyCandidates",
            Error::Format(_) => "Format",
        }
    }
}
