use alloc::string::String;
use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Interval endpoints are not finite or not ordered `lo < hi`.
    #[error("bad interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
    /// Root finding was requested without a sign change over the bracket.
    #[error("no sign change over [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    /// A function evaluation produced NaN or infinity.
    #[error("non-finite value encountered during {0}")]
    NonFinite(&'static str),
    /// Extrapolation input cannot pin down a line (too few or duplicate spacings).
    #[error("degenerate extrapolation fit: {0}")]
    DegenerateFit(&'static str),
    /// Matrix data has the wrong length for the declared dimension.
    #[error("matrix data length {len} does not match dimension {dim}")]
    BadDimension { dim: usize, len: usize },
    /// Matrix deviates from its conjugate transpose beyond tolerance.
    #[error("matrix is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },
    /// Matrix has an eigenvalue below the PSD tolerance.
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    /// Spectrum violates the zero-ground ascending-levels convention.
    #[error("bad energy spectrum: {0}")]
    BadSpectrum(&'static str),
    /// Amplitudes do not form a unit-norm state.
    #[error("state norm deviates from 1 by {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    /// Ensemble probabilities are invalid (non-positive or not summing to 1).
    #[error("bad ensemble probabilities: {0}")]
    BadProbabilities(&'static str),
    /// Ensemble members are defined over different spectra.
    #[error("states do not share one energy spectrum")]
    SpectrumMismatch,
    /// Operation requires a separable composite state with an explicit factor list.
    #[error("composite state carries no factor list")]
    NotSeparable,
    /// A stationary state (zero spread) cannot leave its initial configuration.
    #[error("degenerate dynamics: {0}")]
    Degenerate(&'static str),
    /// The requested survival level lies below the state's reachable minimum.
    #[error("survival level {eps} is unreachable (minimum {min_p:.6})")]
    Unreachable { eps: f64, min_p: f64 },
    /// An argument lies outside its documented domain.
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    /// The two independent bound estimates disagree beyond the error bar.
    #[error(
        "bound estimates incompatible at eps={eps}: lower {lower} (±{error_bar}) vs upper {upper}"
    )]
    Incompatible {
        eps: f64,
        lower: f64,
        error_bar: f64,
        upper: f64,
    },
    /// The inner maximizer landed on the q-grid cutoff, so the cutoff biased the result.
    #[error("grid maximizer hit the q cutoff {q_max} at the binding angle")]
    GridCutoff { q_max: f64 },
    /// The speed-limit query has no finite answer (no energy resources).
    #[error("speed limit undefined: both mean energy and spread are zero")]
    Undefined,
}
