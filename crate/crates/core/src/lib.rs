//! First-digit analysis for probability laws on the positive half-line.
//!
//! The crate works with two coordinate systems throughout. A positive random
//! variable `X` has density `f` on `(0, ∞)`; its base-10 logarithm `Y = log₁₀ X`
//! has density `g(y) = ln(10)·10ʸ·f(10ʸ)` on the real line. The first digit of
//! `X` is determined by the fractional part of `Y`, whose density is obtained
//! by stacking the integer translates of `g` onto `[0, 1]`. Exact Benford
//! behaviour means that stacked density is identically 1.
//!
//! Modules mirror that pipeline:
//!
//! - [`digitcore`] — digits, mantissas, and the Benford reference vector;
//! - [`density`] — closed-form density models, the log pushforward, the
//!   stacking operator, and total-variation computation;
//! - [`bounds`] — the Gauvrit–Delahaye, Dümbgen–Leuenberger and Pinkham
//!   deviation bounds plus exact deviation measurement;
//! - [`laws`] — a catalog of parametric laws, counterexamples, and exactly
//!   Benford constructions;
//! - [`mixer`] — scale mixing, dilation experiments, and the roulette limit;
//! - [`cli`] — dataset ingestion and report assembly for the `benford-lab`
//!   binary.

use thiserror::Error;

pub mod bounds;
pub mod cli;
pub mod density;
pub mod digitcore;
pub mod laws;
pub mod mixer;

pub use bounds::BoundReport;
pub use density::{DensityModel, MantissaProfile};
pub use digitcore::DigitDistribution;
pub use laws::LawSpec;

/// Crate-wide error type; messages carry the originating module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("digitcore: input must be finite, got {0}")]
    NonFinite(f64),
    #[error("digitcore: first digit requires a positive finite value, got {0}")]
    NonPositive(f64),
    #[error("digitcore: digit must lie in 1..=9, got {0}")]
    DigitOutOfRange(u8),
    #[error("digitcore: probabilities must sum to 1 within {tol:e} (sum = {sum})")]
    NotNormalized { sum: f64, tol: f64 },
    #[error("density: {0}")]
    InvalidDensity(String),
    #[error("density: stacking window hit the {cap}-term cap before tail mass fell below {tol:e}")]
    TruncationFailure { cap: usize, tol: f64 },
    #[error("density: total variation needs a monotone decomposition; this shape has none")]
    UnsupportedShape,
    #[error("bounds: the Gauvrit-Delahaye bound requires a unimodal density")]
    InapplicableBound,
    #[error("bounds: {0}")]
    InvalidBound(String),
    #[error("laws: {0}")]
    InvalidLaw(String),
    #[error("mixer: {0}")]
    InvalidMix(String),
    #[error("cli: cannot read {path}: {reason}")]
    UnreadableInput { path: String, reason: String },
    #[error("cli: column {0:?} not found in input")]
    MissingColumn(String),
    #[error("cli: no usable rows in input")]
    NoUsableRows,
    #[error("cli: invalid law specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for input errors, 3 for numerical-tolerance failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TruncationFailure { .. } => 3,
            _ => 2,
        }
    }
}

/// Natural logarithm of 10, the conversion factor between the two coordinates.
pub const LN_10: f64 = std::f64::consts::LN_10;
