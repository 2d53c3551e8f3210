//! Generalized hypergeometric ₀F₂(; b₁, b₂; x) by its ascending series.

use crate::{Error, Result};

/// ₀F₂(; b₁, b₂; x) = Σ_{k≥0} x^k / [(b₁)_k (b₂)_k k!].
///
/// The series converges for every x. All terms are positive for x ≥ 0; for
/// strongly negative x the alternating terms cancel and the attainable
/// relative accuracy degrades by roughly exp(1.5·|x|^{1/3}) over machine
/// precision, so large negative arguments lose digits.
pub fn hyp0f2(b1: f64, b2: f64, x: f64) -> Result<f64> {
    for b in [b1, b2] {
        if b <= 0.0 && b == b.round() {
            return Err(Error::ParameterPole(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
    }
    if !x.is_finite() {
        return Err(Error::NonFiniteInput(x));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    for k in 0..500 {
        let kf = k as f64;
        term *= x / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        // Kahan update.
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-17 * sum.abs().max(1e-30) && k > 3 {
            break;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: the same series accumulated in two-f64 double-double splits so
    /// its rounding floor sits ~16 digits below plain f64 summation.
    fn hyp0f2_oracle(b1: f64, b2: f64, x: f64) -> f64 {
        let (mut hi, mut lo) = (1.0f64, 0.0f64);
        let mut term = 1.0f64;
        for k in 0..500 {
            let kf = k as f64;
            term *= x / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
            // two-sum of (hi, lo) + term
            let s = hi + term;
            let bb = s - hi;
            let err = (hi - (s - bb)) + (term - bb);
            hi = s;
            lo += err;
            if term.abs() < 1e-22 * hi.abs() && k > 3 {
                break;
            }
        }
        hi + lo
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(hyp0f2(0.5, 0.5, 0.0).unwrap(), 1.0);
        assert_eq!(hyp0f2(1.0, 1.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn matches_extended_precision_oracle() {
        for &(b1, b2, x) in &[
            (0.5, 0.5, 0.5),
            (1.0, 1.5, 0.5),
            (0.5, 0.5, 10.0),
            (1.0, 1.5, 200.0),
            (0.5, 1.0, 1e4),
        ] {
            let got = hyp0f2(b1, b2, x).unwrap();
            let want = hyp0f2_oracle(b1, b2, x);
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "({b1},{b2},{x}): {got} vs {want}"
            );
        }
    }

    #[test]
    fn mildly_negative_arguments() {
        for &x in &[-0.5, -5.0, -20.0] {
            let got = hyp0f2(0.5, 0.5, x).unwrap();
            let want = hyp0f2_oracle(0.5, 0.5, x);
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                "x = {x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn parameter_pole_is_rejected() {
        assert!(hyp0f2(0.0, 0.5, 1.0).is_err());
        assert!(hyp0f2(0.5, -2.0, 1.0).is_err());
        assert!(hyp0f2(-0.5, 0.5, 1.0).is_ok()); // negative non-integer is fine
    }
}
