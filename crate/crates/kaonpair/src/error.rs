//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by parameter validation, state algebra and event generation.
#[derive(Debug, Error)]
pub enum Error {
    /// A physics or CP parameter violates its constraints.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// Proper times must be non-negative.
    #[error("proper time must be non-negative, got {value}")]
    NegativeTime { value: f64 },

    /// Decay times must be ordered t1 <= t2.
    #[error("decay times must satisfy t1 <= t2, got t1 = {t1}, t2 = {t2}")]
    TimeOrdering { t1: f64, t2: f64 },

    /// Channel id not present in the catalog.
    #[error("unknown decay channel `{id}`")]
    UnknownChannel { id: String },

    /// A state with vanishing norm cannot be normalized.
    #[error("cannot normalize a zero-norm state")]
    ZeroNormState,

    /// The stationary states are (numerically) parallel.
    #[error("degenerate stationary states: |<K_S|K_L>| = 1 within tolerance")]
    DegenerateStates,

    /// Two states expected to be linearly independent are parallel.
    #[error("states are linearly dependent")]
    ParallelStates,

    /// The rejection-sampling target exceeded its envelope (internal inconsistency).
    #[error(
        "envelope violation for pair ({f1}, {f2}) at dt = {delta_t}: \
         target {target} > envelope {envelope}"
    )]
    EnvelopeViolation {
        f1: String,
        f2: String,
        delta_t: f64,
        target: f64,
        envelope: f64,
    },

    /// No candidate accepted within the configured attempt budget.
    #[error("rejection sampling exhausted {attempts} attempts without an acceptance")]
    SamplingBudget { attempts: u32 },

    /// Goodness-of-fit checks need a minimum sample size.
    #[error("need at least {min} events for the goodness-of-fit check, got {n}")]
    TooFewEvents { n: usize, min: usize },

    /// Configuration file parse or validation failure, with a 1-based line number.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: 2 for usage/config problems, 3 for
    /// runtime failures (generation, I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnvelopeViolation { .. } | Error::SamplingBudget { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}
