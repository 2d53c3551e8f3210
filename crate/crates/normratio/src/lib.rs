//! Distribution of the ratio of products of independent zero-mean normal
//! random variables.
//!
//! For independent `X_i ~ N(0, σ_{X_i}²)`, `i = 1..M`, and `Y_j ~ N(0, σ_{Y_j}²)`,
//! `j = 1..N`, let `Z = (X_1⋯X_M)/(Y_1⋯Y_N)` (empty products are 1). This crate
//! evaluates the exact density, distribution function, survival function,
//! characteristic function, quantiles and fractional moments of `Z`, draws
//! reproducible samples, and classifies the shape of the density.
//!
//! The exact formulas are Meijer G-functions with coincident half-integer
//! parameters. They are evaluated by Mellin–Barnes contour quadrature
//! ([`meijer`]), switching to convergent residue series at small arguments and
//! to saddle-shifted contours in exponentially small regimes. Low-order cases
//! reduce to Bessel, Struve, exponential-integral, dilogarithm and
//! hypergeometric closed forms ([`closed`]); those double as independent
//! oracles for the general route. Near-zero and tail behaviour, including
//! quantile expansions, live in [`asym`]. The [`verify`] module bundles
//! Monte Carlo goodness of fit, normalization quadrature and
//! closed-vs-general equivalence sweeps into machine-readable reports.
//!
//! ```
//! use normratio::{DistParams, Method, NormalRatio};
//!
//! // Z = X/Y with unit variances is standard Cauchy.
//! let params = DistParams::new(1, 1, &[1.0], &[1.0]).unwrap();
//! let dist = NormalRatio::new(params);
//! let p = dist.pdf(0.0, Method::Auto).unwrap();
//! assert!((p.value - 1.0 / std::f64::consts::PI).abs() < 1e-12);
//! ```

pub mod asym;
pub mod cli;
pub mod closed;
pub mod dist;
pub mod meijer;
pub mod params;
pub mod quad;
pub mod specfun;
pub mod verify;

pub use dist::{Method, NormalRatio, SampleBatch, Shape};
pub use meijer::MeijerSpec;
pub use params::{DistParams, EvalMethod, EvalResult};
pub use verify::VerifyReport;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `m + n = 0`: at least one normal factor is required.
    ZeroFactors,
    /// A sigma list does not match its declared factor count.
    LengthMismatch {
        which: &'static str,
        expected: usize,
        got: usize,
    },
    /// A standard deviation is zero or negative.
    NonPositiveSigma {
        which: &'static str,
        index: usize,
        value: f64,
    },
    /// A standard deviation is NaN or infinite.
    NonFiniteSigma {
        which: &'static str,
        index: usize,
        value: f64,
    },
    /// Log-gamma evaluated at a nonpositive integer.
    PoleInput { re: f64, im: f64 },
    /// Argument outside a function's domain.
    DomainError(String),
    /// Hypergeometric lower parameter is a nonpositive integer.
    ParameterPole(String),
    /// Contour quadrature did not reach the requested tolerance.
    ContourFailure(String),
    /// Meijer parameters outside the supported half-integer family.
    SpecUnsupported(String),
    /// Input is NaN or infinite.
    NonFiniteInput(f64),
    /// Probability not strictly inside (0, 1).
    OutOfRangeP(f64),
    /// Root search did not converge.
    ConvergenceFailure(String),
    /// Absolute moment of this order diverges.
    MomentUndefined(String),
    /// Closed-form case does not support the requested operation.
    CaseMismatch(String),
    /// Numerical integration failed.
    QuadratureFailure(String),
    /// Command-line usage error.
    Usage(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::ZeroFactors => {
                write!(f, "m + n must be at least 1 (no normal factors given)")
            }
            Error::LengthMismatch {
                which,
                expected,
                got,
            } => write!(f, "{which} has {got} entries, expected {expected}"),
            Error::NonPositiveSigma {
                which,
                index,
                value,
            } => write!(f, "{which}[{index}] = {value} must be strictly positive"),
            Error::NonFiniteSigma {
                which,
                index,
                value,
            } => write!(f, "{which}[{index}] = {value} must be finite"),
            Error::PoleInput { re, im } => {
                write!(f, "log-gamma pole at ({re}, {im})")
            }
            Error::DomainError(msg) => write!(f, "domain error: {msg}"),
            Error::ParameterPole(msg) => write!(f, "parameter pole: {msg}"),
            Error::ContourFailure(msg) => write!(f, "contour evaluation failed: {msg}"),
            Error::SpecUnsupported(msg) => write!(f, "unsupported Meijer spec: {msg}"),
            Error::NonFiniteInput(v) => write!(f, "input {v} must be finite"),
            Error::OutOfRangeP(p) => write!(f, "probability {p} outside (0, 1)"),
            Error::ConvergenceFailure(msg) => write!(f, "no convergence: {msg}"),
            Error::MomentUndefined(msg) => write!(f, "moment undefined: {msg}"),
            Error::CaseMismatch(msg) => write!(f, "closed-form case mismatch: {msg}"),
            Error::QuadratureFailure(msg) => write!(f, "quadrature failed: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
