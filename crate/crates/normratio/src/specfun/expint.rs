//! Exponential integral E₁ and the upper incomplete gamma function Γ(½, x).
//!
//! Crossover at x = 1.5 in both: ascending series below, modified-Lentz
//! continued fraction above.

use crate::specfun::gamma::gamma_real;
use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const CUTOFF: f64 = 1.5;
const TINY: f64 = 1e-300;

/// E₁(x) = ∫ₓ^∞ e^{−t}/t dt for x > 0.
pub fn expint_e1(x: f64) -> Result<f64> {
    Ok(expint_e1_scaled(x)? * (-x).exp())
}

/// eˣ·E₁(x), stable for arbitrarily large x.
pub fn expint_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!(
            "expint_e1 requires x > 0, got {x}"
        )));
    }
    if x < CUTOFF {
        // E₁(x) = −γ − ln x + Σ_{k≥1} (−1)^{k+1} x^k / (k·k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..100 {
            let kf = k as f64;
            term *= -x / kf;
            let add = -term / kf;
            sum += add;
            if add.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        Ok((-EULER_GAMMA - x.ln() + sum) * x.exp())
    } else {
        // E₁(x) = e^{−x} / (x + 1 − 1²/(x + 3 − 2²/(x + 5 − …)))
        let mut b = x + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for k in 1..200 {
            let a = -(k as f64) * (k as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h)
    }
}

/// Γ(½, x) = ∫ₓ^∞ u^{−1/2} e^{−u} du for x > 0.
pub fn inc_gamma_upper_half(x: f64) -> Result<f64> {
    Ok(inc_gamma_upper_half_scaled(x)? * (-x).exp())
}

/// eˣ·Γ(½, x), stable for arbitrarily large x.
pub fn inc_gamma_upper_half_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!(
            "inc_gamma_upper_half requires x > 0, got {x}"
        )));
    }
    let a = 0.5;
    if x < CUTOFF {
        // Lower series γ(a, x) = x^a e^{−x} Σ x^n / (a (a+1) ⋯ (a+n)),
        // then Γ(a, x) = Γ(a) − γ(a, x).
        let mut ap = a;
        let mut term = 1.0 / a;
        let mut sum = term;
        for _ in 0..200 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        let lower = sum * (-x).exp() * x.powf(a);
        Ok((gamma_real(a) - lower) * x.exp())
    } else {
        // Continued fraction Γ(a, x) = e^{−x} x^a / (x+1−a − 1(1−a)/(x+3−a − …)).
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for k in 1..200 {
            let kf = k as f64;
            let an = -kf * (kf - a);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * x.powf(a))
    }
}
