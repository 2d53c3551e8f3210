//! Complex log-gamma on the principal branch, with real-argument helpers.
//!
//! The evaluation pushes the argument to `Re(z) ≥ 10` by the recurrence
//! `log Γ(z) = log Γ(z+1) − Log z` and finishes with the Stirling series.
//! Summing principal logarithms keeps the result on the principal branch:
//! the correction is constant on each half-plane and vanishes on the
//! positive real axis. Arguments with very negative real part simply take
//! more recurrence steps; the evaluator never reflects, so there is no
//! branch bookkeeping anywhere.

use num_complex::Complex64;

use crate::{Error, Result};

/// Stirling series coefficients B_{2k} / (2k(2k−1)), k = 1..=10.
const STIRLING: [f64; 10] = [
    8.333_333_333_333_333e-2,            // 1/12
    -2.777_777_777_777_778e-3,           // -1/360
    7.936_507_936_507_937e-4,            // 1/1260
    -5.952_380_952_380_952e-4,           // -1/1680
    8.417_508_417_508_418e-4,            // 1/1188
    -1.917_526_917_526_917_5e-3,         // -691/360360
    6.410_256_410_256_410e-3,            // 1/156
    -2.955_065_359_477_124e-2,           // -3617/122400
    1.796_443_723_688_306e-1,            // 43867/244188
    -1.392_432_216_905_901_1,            // -174611/125400
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// Stirling expansion, accurate for `Re(z) ≥ 10` (any imaginary part).
fn stirling(z: Complex64) -> Complex64 {
    let ln_z = z.ln();
    let mut series = Complex64::new(0.0, 0.0);
    let z2 = z * z;
    let mut zp = z;
    for &c in &STIRLING {
        series += c / zp;
        zp *= z2;
    }
    (z - 0.5) * ln_z - z + HALF_LN_TWO_PI + series
}

/// Principal-branch log Γ(z) without pole checking. At nonpositive-integer
/// poles the result is non-finite.
pub(crate) fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re >= 10.0 {
        return stirling(z);
    }
    // Push the argument right; the number of steps is ⌈10 − Re z⌉.
    let steps = (10.0 - z.re).ceil() as usize;
    let mut log_prod = Complex64::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..steps {
        log_prod += w.ln();
        w += 1.0;
    }
    stirling(w) - log_prod
}

/// Principal-branch complex log-gamma.
///
/// Real negative non-integer arguments are treated as limits from the upper
/// half-plane (the +0.0 imaginary-part convention of `atan2`).
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::PoleInput { re: s.re, im: s.im });
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::NonFiniteInput(s.re));
    }
    Ok(log_gamma_unchecked(s))
}

/// ln Γ(x) for real x > 0.
pub fn lgamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    log_gamma_unchecked(Complex64::new(x, 0.0)).re
}

/// Γ(x) for real x > 0.
pub fn gamma_real(x: f64) -> f64 {
    lgamma_real(x).exp()
}

/// Digamma ψ(x) for real x (any non-pole argument; negative x goes through
/// the reflection-free recurrence and so takes O(|x|) steps).
pub fn digamma(x: f64) -> f64 {
    debug_assert!(!(x <= 0.0 && x == x.round()), "digamma pole");
    let mut result = 0.0;
    let mut w = x;
    while w < 10.0 {
        result -= 1.0 / w;
        w += 1.0;
    }
    // ψ(w) ≈ ln w − 1/(2w) − Σ B_{2k}/(2k w^{2k})
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let w2 = w * w;
    let mut wp = w2;
    let mut series = 0.0;
    for &c in &B {
        series += c / wp;
        wp *= w2;
    }
    result + w.ln() - 0.5 / w - series
}

/// Trigamma ψ′(x) for real x > 0.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut result = 0.0;
    let mut w = x;
    while w < 10.0 {
        result += 1.0 / (w * w);
        w += 1.0;
    }
    // ψ′(w) ≈ 1/w + 1/(2w²) + Σ B_{2k}/w^{2k+1}
    const B: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let w2 = w * w;
    let mut wp = w * w2;
    let mut series = 0.0;
    for &c in &B {
        series += c / wp;
        wp *= w2;
    }
    result + 1.0 / w + 0.5 / (w * w) + series
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_one_is_zero() {
        let v = log_gamma(c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn gamma_half_is_half_ln_pi() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn modulus_on_critical_line() {
        // |Γ(1/2 + it)|² = π / cosh(π t), an independent reflection identity.
        for &t in &[0.5, 1.0, 3.0] {
            let lg = log_gamma(c(0.5, t)).unwrap();
            let lhs = (2.0 * lg.re).exp();
            let rhs = PI / (PI * t).cosh();
            assert!(
                (lhs - rhs).abs() <= 1e-13 * rhs,
                "t = {t}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn poles_are_rejected() {
        for &re in &[0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(
                log_gamma(c(re, 0.0)),
                Err(Error::PoleInput { .. })
            ));
        }
        // Near-pole but not at it: fine.
        assert!(log_gamma(c(-1.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_identity_on_random_grid() {
        // log Γ(s+1) = log Γ(s) + Log s on the principal branch.
        // Deterministic xorshift grid over Re ∈ [-10, 10], Im ∈ [-20, 20].
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let re = next() * 20.0 - 10.0;
            let im = next() * 40.0 - 20.0;
            let s = c(re, im);
            if s.im.abs() < 1e-3 {
                continue; // stay clear of the pole line
            }
            let lhs = log_gamma(s + 1.0).unwrap();
            let rhs = log_gamma(s).unwrap() + s.ln();
            let scale = lhs.norm().max(1.0);
            assert!(
                (lhs - rhs).norm() <= 1e-12 * scale,
                "s = {s}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn large_arguments() {
        // Γ(21) = 20!
        let v = log_gamma(c(21.0, 0.0)).unwrap();
        let expect = (2.432_902_008_176_64e18f64).ln();
        assert!((v.re - expect).abs() < 1e-12 * expect);
        // |s| up to 1e6 along the imaginary direction stays finite and obeys
        // the recurrence.
        let s = c(3.25, 1e6);
        let lhs = log_gamma(s + 1.0).unwrap();
        let rhs = log_gamma(s).unwrap() + s.ln();
        assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm());
    }

    #[test]
    fn digamma_and_trigamma_reference_values() {
        // ψ(1) = −γ, ψ(1/2) = −γ − 2 ln 2, ψ′(1) = π²/6.
        const GAMMA: f64 = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + GAMMA).abs() < 1e-13);
        assert!((digamma(0.5) + GAMMA + 2.0 * 2f64.ln()).abs() < 1e-13);
        assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-13);
        // Recurrence ψ(x+1) = ψ(x) + 1/x at a negative non-integer point.
        let x = -3.3;
        assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-12);
    }
}
