use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no offices")]
    NoOffices,

    #[error("mismatched lengths: {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("empty window [{from}, {to})")]
    EmptyWindow { from: u64, to: u64 },

    #[error("window [{from}, {to}) is outside the trace")]
    WindowOutOfRange { from: u64, to: u64 },

    #[error("degenerate temperature: {0}")]
    DegenerateTemperature(String),

    #[error("invalid utility constants: require u1 < u2 < u3, got ({u1}, {u2}, {u3})")]
    InvalidUtilityConstants { u1: f64, u2: f64, u3: f64 },

    #[error("no feasible reallocation: bounds sum to [{lower_sum}, {upper_sum}]")]
    NoFeasibleReallocation { lower_sum: f64, upper_sum: f64 },

    #[error("bracket not found after {doublings} doublings")]
    BracketNotFound { doublings: u32 },

    #[error(
        "simultaneous solve did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid value for `{key}`: {message}")]
    InvalidConfig { key: String, message: String },

    #[error("scenarios cannot be compared: {0}")]
    MismatchedScenarios(String),

    #[error("scheme failed at interval {interval}: {source}")]
    Scheme {
        interval: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key: key.into(),
            message: message.into(),
        }
    }
}
