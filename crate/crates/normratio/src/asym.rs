//! Near-zero and tail asymptotics of the density, tail probabilities, and
//! quantile expansions, plus the log-linear root expansion they share.
//!
//! Shapes by regime:
//! * density near zero — `(−ln|z|)^{M−1}` growth for M ≥ 1, a
//!   stretched-exponential vanishing for M = 0;
//! * density and survival in the tail — `(ln z)^{N−1}/z²` resp. `/z` for
//!   N ≥ 1, stretched-exponential decay for N = 0;
//! * quantiles — the inverses of the two tail laws.
//!
//! Every operation evaluates its formula at any admissible argument; deciding
//! when the regime applies is the caller's job, so trend tests can probe the
//! approach to the limit.

use std::f64::consts::PI;

use crate::params::DistParams;
use crate::{Error, Result};

fn factorial(n: usize) -> f64 {
    let mut f = 1.0;
    for k in 2..=n {
        f *= k as f64;
    }
    f
}

/// Shared tail prefactor 2^{(M+N−2)/2} σ_M / (π^{(M+N)/2} (N−1)! s_N):
/// identical in the density tail, the survival tail, and the quantile
/// expansion for N ≥ 1.
pub fn tail_constant(params: &DistParams) -> f64 {
    let (m, n) = (params.m() as f64, params.n() as f64);
    debug_assert!(params.n() >= 1);
    2f64.powf((m + n - 2.0) / 2.0) * params.sigma_prod()
        / (PI.powf((m + n) / 2.0) * factorial(params.n() - 1) * params.s_prod())
}

/// Density approximation as z → 0.
///
/// M ≥ 1: `2^{(M+N−2)/2} s_N/(π^{(M+N)/2} σ_M) · (−ln|z|)^{M−1}/(M−1)!`;
/// M = 0: `2^{(N−2)/2}/(√(Nπ) s_N^{1/N}) · |z|^{−(N+1)/N} exp(−N/(2(s_N|z|)^{2/N}))`.
pub fn pdf_near_zero(params: &DistParams, z: f64) -> Result<f64> {
    if z == 0.0 || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "pdf_near_zero needs a finite nonzero z, got {z}"
        )));
    }
    let az = z.abs();
    let (m, n) = (params.m(), params.n());
    if m >= 1 {
        let c = 2f64.powf((m as f64 + n as f64 - 2.0) / 2.0) * params.s_prod()
            / (PI.powf((m as f64 + n as f64) / 2.0) * params.sigma_prod());
        Ok(c * (-az.ln()).powi(m as i32 - 1) / factorial(m - 1))
    } else {
        let nf = n as f64;
        let s = params.s_prod();
        let c = 2f64.powf((nf - 2.0) / 2.0) / ((nf * PI).sqrt() * s.powf(1.0 / nf));
        Ok(c * az.powf(-(nf + 1.0) / nf) * (-nf / (2.0 * (s * az).powf(2.0 / nf))).exp())
    }
}

/// Logarithm of [`pdf_near_zero`]. For M ≥ 1 the linear value never leaves
/// f64 range (only log powers grow), so this matters for the
/// stretched-exponential M = 0 branch.
pub fn ln_pdf_near_zero(params: &DistParams, z: f64) -> Result<f64> {
    if params.m() >= 1 {
        return Ok(pdf_near_zero(params, z)?.ln());
    }
    if z == 0.0 || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "pdf_near_zero needs a finite nonzero z, got {z}"
        )));
    }
    let az = z.abs();
    let nf = params.n() as f64;
    let s = params.s_prod();
    let c = 2f64.powf((nf - 2.0) / 2.0) / ((nf * PI).sqrt() * s.powf(1.0 / nf));
    Ok(c.ln() - (nf + 1.0) / nf * az.ln() - nf / (2.0 * (s * az).powf(2.0 / nf)))
}

/// Density approximation as |z| → ∞.
///
/// N ≥ 1: `tail_constant · (ln|z|)^{N−1}/z²`;
/// N = 0: `2^{M/2−1}/(√(Mπ) σ_M^{1/M}) · |z|^{1/M−1} exp(−(M/2)(|z|/σ_M)^{2/M})`.
pub fn pdf_tail(params: &DistParams, z: f64) -> Result<f64> {
    if z == 0.0 || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "pdf_tail needs a finite nonzero z, got {z}"
        )));
    }
    let az = z.abs();
    let (m, n) = (params.m(), params.n());
    if n >= 1 {
        Ok(tail_constant(params) * az.ln().powi(n as i32 - 1) / (z * z))
    } else {
        let mf = m as f64;
        let sig = params.sigma_prod();
        let c = 2f64.powf(mf / 2.0 - 1.0) / ((mf * PI).sqrt() * sig.powf(1.0 / mf));
        Ok(c * az.powf(1.0 / mf - 1.0) * (-(mf / 2.0) * (az / sig).powf(2.0 / mf)).exp())
    }
}

/// Survival approximation P(Z > z) as z → ∞.
///
/// N ≥ 1: `tail_constant · (ln z)^{N−1}/z`;
/// N = 0: `2^{M/2−1} σ_M^{1/M}/√(Mπ) · z^{−1/M} exp(−(M/2)(z/σ_M)^{2/M})`.
pub fn sf_tail(params: &DistParams, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "sf_tail needs z > 0, got {z}"
        )));
    }
    let (m, n) = (params.m(), params.n());
    if n >= 1 {
        Ok(tail_constant(params) * z.ln().powi(n as i32 - 1) / z)
    } else {
        let mf = m as f64;
        let sig = params.sigma_prod();
        let c = 2f64.powf(mf / 2.0 - 1.0) * sig.powf(1.0 / mf) / ((mf * PI).sqrt());
        Ok(c * z.powf(-1.0 / mf) * (-(mf / 2.0) * (z / sig).powf(2.0 / mf)).exp())
    }
}

/// Logarithm of [`pdf_tail`]; matters for the stretched-exponential N = 0
/// branch, whose linear value underflows early.
pub fn ln_pdf_tail(params: &DistParams, z: f64) -> Result<f64> {
    if params.n() >= 1 {
        return Ok(pdf_tail(params, z)?.ln());
    }
    if z == 0.0 || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "pdf_tail needs a finite nonzero z, got {z}"
        )));
    }
    let az = z.abs();
    let mf = params.m() as f64;
    let sig = params.sigma_prod();
    let c = 2f64.powf(mf / 2.0 - 1.0) / ((mf * PI).sqrt() * sig.powf(1.0 / mf));
    Ok(c.ln() + (1.0 / mf - 1.0) * az.ln() - (mf / 2.0) * (az / sig).powf(2.0 / mf))
}

/// Logarithm of [`sf_tail`], stable in the N = 0 stretched-exponential range.
pub fn ln_sf_tail(params: &DistParams, z: f64) -> Result<f64> {
    if params.n() >= 1 {
        return Ok(sf_tail(params, z)?.ln());
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::DomainError(format!(
            "sf_tail needs z > 0, got {z}"
        )));
    }
    let mf = params.m() as f64;
    let sig = params.sigma_prod();
    let c = 2f64.powf(mf / 2.0 - 1.0) * sig.powf(1.0 / mf) / ((mf * PI).sqrt());
    Ok(c.ln() - z.ln() / mf - (mf / 2.0) * (z / sig).powf(2.0 / mf))
}

/// Three-term expansion of the root of `A x^m e^{−ax} = z` as z → 0:
/// `x = (1/a)·ln(1/z) + (m/a)·ln(ln(1/z)) + ln(A/a^m)/a`.
pub fn solve_loglinear(a: f64, big_a: f64, m: f64, z: f64) -> Result<f64> {
    if !(a > 0.0) || !(big_a > 0.0) {
        return Err(Error::DomainError(format!(
            "solve_loglinear needs a > 0 and A > 0, got a = {a}, A = {big_a}"
        )));
    }
    if !(z > 0.0) || z >= 1.0 {
        return Err(Error::DomainError(format!(
            "solve_loglinear needs 0 < z < 1, got {z}"
        )));
    }
    let big_l = (1.0 / z).ln();
    if big_l <= 1.0 {
        return Err(Error::DomainError(format!(
            "ln(1/z) = {big_l} <= 1: the double logarithm is meaningless"
        )));
    }
    Ok(big_l / a + (m / a) * big_l.ln() + (big_a / a.powf(m)).ln() / a)
}

/// Quantile approximation for p → 0 (lower branch; the upper branch follows
/// from `Q(1−p) = −Q(p)`).
///
/// N ≥ 1: `−tail_constant · (ln(1/p))^{N−1}/p`;
/// N = 0: `−x^{M/2}` with x the three-term expansion driven by
/// `a = M/(2σ_M^{2/M})`, `A = 2^{M/2−1}σ_M^{1/M}/√(Mπ)`, `m = −1/2`.
pub fn quantile_asym(params: &DistParams, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::OutOfRangeP(p));
    }
    let (m, n) = (params.m(), params.n());
    if n >= 1 {
        let big_l = (1.0 / p).ln();
        Ok(-tail_constant(params) * big_l.powi(n as i32 - 1) / p)
    } else {
        let mf = m as f64;
        let sig = params.sigma_prod();
        let a = mf / (2.0 * sig.powf(2.0 / mf));
        let big_a = 2f64.powf(mf / 2.0 - 1.0) * sig.powf(1.0 / mf) / ((mf * PI).sqrt());
        let x = solve_loglinear(a, big_a, -0.5, p)?;
        if x <= 0.0 {
            return Err(Error::DomainError(format!(
                "expansion gives nonpositive inner value {x} at p = {p}"
            )));
        }
        Ok(-x.powf(mf / 2.0))
    }
}
