//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the numeric kernel, the summation engines, quadrature
/// and the identity registry.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside a function's real domain.
    #[error("domain error: {func}({arg}) is outside the supported domain")]
    Domain { func: &'static str, arg: String },

    /// A precision context was requested below the supported minimum.
    #[error("precision too low: requested {requested} digits, minimum is {minimum}")]
    PrecisionTooLow { requested: u32, minimum: u32 },

    /// An operation produced a non-finite value.
    #[error("non-finite result in {op}")]
    NonFinite { op: String },

    /// Direct summation ran out of its term budget.
    #[error("term budget ({budget}) exhausted for series `{series}`; achieved ~{achieved_digits} digits")]
    BudgetExhausted {
        series: String,
        budget: u64,
        achieved_digits: u32,
    },

    /// The alternating-series accelerator cannot certify the requested accuracy.
    #[error("alternating acceleration with {terms} terms certifies only ~{achieved_digits} digits (need {needed_digits})")]
    AccelInsufficient {
        terms: u32,
        achieved_digits: u32,
        needed_digits: u32,
    },

    /// Input to the alternating accelerator does not alternate in sign.
    #[error("series is not alternating: terms at n={at} and n={prev} have the same sign")]
    NotAlternating { at: u64, prev: u64 },

    /// Tail extrapolation disagreed between two cutoffs.
    #[error("unstable tail extrapolation for `{series}`: cutoffs {cutoff_a}/{cutoff_b} give {value_a} vs {value_b}")]
    UnstableExtrapolation {
        series: String,
        cutoff_a: u64,
        cutoff_b: u64,
        value_a: String,
        value_b: String,
    },

    /// Tanh-sinh quadrature failed to converge within the level budget.
    #[error("quadrature did not converge in {levels} levels; last two estimates {prev} and {last}")]
    QuadratureNoConvergence {
        levels: u32,
        prev: String,
        last: String,
    },

    /// Unknown named integrand family.
    #[error("unknown integrand family `{0}`")]
    UnknownFamily(String),

    /// Unknown identity id.
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    /// Bad parameter binding for an identity.
    #[error("invalid parameter for `{id}`: {reason}")]
    InvalidParam { id: String, reason: String },

    /// Expression parsing failed.
    #[error("cannot parse expression: {0}")]
    ExprParse(String),

    /// Evaluation failure attached to a registry identity.
    #[error("evaluating {side} of `{id}`: {source}")]
    Identity {
        id: String,
        side: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach an identity id and side to an evaluation error.
    pub fn for_identity(self, id: &str, side: &'static str) -> Error {
        Error::Identity {
            id: id.to_string(),
            side,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
