//! Self-contained real and complex special functions.
//!
//! Everything downstream runs on these: the complex log-gamma feeding the
//! Mellin–Barnes integrand, modified Bessel K₀/K₁, modified Struve L₀/L₋₁,
//! the exponential integral E₁, the upper incomplete gamma Γ(½,·), the real
//! dilogarithm, and the ₀F₂ hypergeometric series.

mod bessel;
mod dilog;
mod expint;
mod gamma;
mod hyp;
mod struve;

pub use bessel::bessel_k;
pub use dilog::dilog;
pub use expint::{expint_e1, expint_e1_scaled, inc_gamma_upper_half, inc_gamma_upper_half_scaled};
pub use gamma::{digamma, gamma_real, lgamma_real, log_gamma, trigamma};
pub use hyp::hyp0f2;
pub use struve::struve_l;

pub(crate) use gamma::log_gamma_unchecked;

/// Complex value re + i·im; the Mellin–Barnes integration variable lives here.
pub type ComplexValue = num_complex::Complex64;
