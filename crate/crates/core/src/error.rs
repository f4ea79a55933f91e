use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cloud already contains a palm origin (vertex {0})")]
    PalmOriginPresent(usize),

    #[error("sandwich violated at t={t}, s={s}, dist={dist}: lower={lower}, p={value}, upper={upper}")]
    SandwichViolation {
        t: f64,
        s: f64,
        dist: f64,
        lower: f64,
        value: f64,
        upper: f64,
    },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("exact sampler refuses {0} vertices (limit {1}); use the accelerated sampler or lift the guard")]
    TooManyVertices(usize, usize),

    #[error("trace is not a path in the graph: no edge {0} -> {1}")]
    NotAPath(usize, usize),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("insufficient tail: {found} vertices with degree >= {k_min}, need {needed}")]
    InsufficientTail {
        found: usize,
        k_min: usize,
        needed: usize,
    },

    #[error("domain too small: need half-width {needed}, have {available}")]
    DomainTooSmall { needed: f64, available: f64 },

    #[error("parameter window violated: {0}")]
    Window(String),

    #[error("enumeration guard: {0}")]
    Guard(String),

    #[error("no valid constant found up to {0}")]
    NoConstant(f64),

    #[error("config line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
