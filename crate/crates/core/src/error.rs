use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid intersection array: {0}")]
    InvalidArray(String),

    #[error("eigenvalues {index} and {next} collide (gap {gap:e})", next = index + 1)]
    EigenvalueCollision { index: usize, gap: f64 },

    #[error("{theta} is not an eigenvalue (nearest is {nearest})")]
    NotAnEigenvalue { theta: f64, nearest: f64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("every term of the minimum for r = {r} is infinite")]
    EmptyMinimum { r: usize },

    #[error("r = {r} is outside 1..={d}")]
    DistanceOutOfRange { r: usize, d: usize },

    #[error("intersection array is not antipodal")]
    NotAntipodal,

    #[error("expected diameter {expected}, got {got}")]
    WrongDiameter { expected: usize, got: usize },

    #[error("diameter {0} is too small for this check")]
    DiameterTooSmall(usize),

    #[error("Gaussian binomial base {0} is not allowed (b must not be 0 or -1)")]
    InvalidBase(i64),

    #[error("intersection number {name} = {value} is not a positive integer")]
    NonIntegral { name: String, value: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("graph has {n} vertices, above the cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("not distance-regular: pair ({x}, {y}) at distance {distance} has {what}")]
    NotDistanceRegular {
        x: usize,
        y: usize,
        distance: usize,
        what: String,
    },

    #[error("eigenspace has dimension {got}, multiplicity formula gives {expected}")]
    EigenspaceMismatch { expected: usize, got: usize },

    #[error("no finite alpha exists for r = {r}")]
    NoFiniteAlpha { r: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
