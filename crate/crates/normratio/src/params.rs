//! Distribution parameters and shared evaluation result types.
//!
//! `DistParams` is the validated parameterization of
//! `Z = (X_1⋯X_M)/(Y_1⋯Y_N)`: the factor counts, the per-factor standard
//! deviations, and the derived scale products
//! `σ_M = σ_{X_1}⋯σ_{X_M}`, `s_N = σ_{Y_1}⋯σ_{Y_N}` and
//! `λ = 2^{(N−M)/2} s_N / σ_M`. The natural argument of every general-route
//! evaluation is `λ²z²`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalMethod {
    Contour,
    ResidueSeries,
    ClosedForm,
    Asymptotic,
    Quadrature,
    MonteCarlo,
}

impl std::fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EvalMethod::Contour => "contour",
            EvalMethod::ResidueSeries => "residue-series",
            EvalMethod::ClosedForm => "closed-form",
            EvalMethod::Asymptotic => "asymptotic",
            EvalMethod::Quadrature => "quadrature",
            EvalMethod::MonteCarlo => "monte-carlo",
        };
        f.write_str(s)
    }
}

/// A numerical value together with an absolute error estimate and the
/// evaluation path that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub method: EvalMethod,
}

impl EvalResult {
    pub fn new(value: f64, abs_err_estimate: f64, method: EvalMethod) -> Self {
        EvalResult {
            value,
            abs_err_estimate,
            method,
        }
    }

    /// Exact value (error estimate a few ulp).
    pub fn exact(value: f64, method: EvalMethod) -> Self {
        EvalResult::new(value, 4.0 * f64::EPSILON * value.abs(), method)
    }
}

/// Validated parameters of the normal product-ratio distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistParams {
    m_count: usize,
    n_count: usize,
    sigma_x: Vec<f64>,
    sigma_y: Vec<f64>,
    sigma_prod: f64,
    s_prod: f64,
    scale_lambda: f64,
}

fn check_sigmas(which: &'static str, expected: usize, sigmas: &[f64]) -> Result<()> {
    if sigmas.len() != expected {
        return Err(Error::LengthMismatch {
            which,
            expected,
            got: sigmas.len(),
        });
    }
    for (index, &value) in sigmas.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteSigma {
                which,
                index,
                value,
            });
        }
        if value <= 0.0 {
            return Err(Error::NonPositiveSigma {
                which,
                index,
                value,
            });
        }
    }
    Ok(())
}

/// Product of positive entries computed in log space (empty product = 1).
fn log_space_product(sigmas: &[f64]) -> f64 {
    let log_sum: f64 = sigmas.iter().map(|s| s.ln()).sum();
    log_sum.exp()
}

impl DistParams {
    /// Builds parameters for `m` numerator and `n` denominator factors.
    ///
    /// Requires `m + n >= 1`, sigma slices of matching length, and every
    /// entry strictly positive and finite. The derived products are computed
    /// as `exp(Σ log σ)` so factor counts of 50 and beyond stay in range.
    pub fn new(m: usize, n: usize, sigma_x: &[f64], sigma_y: &[f64]) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::ZeroFactors);
        }
        check_sigmas("sigma_x", m, sigma_x)?;
        check_sigmas("sigma_y", n, sigma_y)?;
        let sigma_prod = log_space_product(sigma_x);
        let s_prod = log_space_product(sigma_y);
        let log_lambda = 0.5 * (n as f64 - m as f64) * std::f64::consts::LN_2 + s_prod.ln()
            - sigma_prod.ln();
        Ok(DistParams {
            m_count: m,
            n_count: n,
            sigma_x: sigma_x.to_vec(),
            sigma_y: sigma_y.to_vec(),
            sigma_prod,
            s_prod,
            scale_lambda: log_lambda.exp(),
        })
    }

    /// Unit-variance parameters: all sigmas equal to one.
    pub fn unit(m: usize, n: usize) -> Result<Self> {
        DistParams::new(m, n, &vec![1.0; m], &vec![1.0; n])
    }

    /// Number of numerator factors M.
    pub fn m(&self) -> usize {
        self.m_count
    }

    /// Number of denominator factors N.
    pub fn n(&self) -> usize {
        self.n_count
    }

    pub fn sigma_x(&self) -> &[f64] {
        &self.sigma_x
    }

    pub fn sigma_y(&self) -> &[f64] {
        &self.sigma_y
    }

    /// σ_M, the product of the numerator standard deviations.
    pub fn sigma_prod(&self) -> f64 {
        self.sigma_prod
    }

    /// s_N, the product of the denominator standard deviations.
    pub fn s_prod(&self) -> f64 {
        self.s_prod
    }

    /// λ = 2^{(N−M)/2} s_N / σ_M; the G-function argument is `(λz)²`.
    pub fn lambda(&self) -> f64 {
        self.scale_lambda
    }

    /// Parameters of `1/Z`: numerator and denominator roles swapped.
    pub fn reciprocal(&self) -> Self {
        DistParams::new(self.n_count, self.m_count, &self.sigma_y, &self.sigma_x)
            .expect("valid params stay valid under role swap")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cauchy_parameterization() {
        let p = DistParams::new(1, 1, &[1.0], &[1.0]).unwrap();
        assert_eq!(p.sigma_prod(), 1.0);
        assert_eq!(p.s_prod(), 1.0);
        assert_eq!(p.lambda(), 1.0);
    }

    #[test]
    fn lambda_from_definition() {
        // λ = 2^{(0-2)/2} · 1 / 2 = 1/4, checked against one-line arithmetic.
        let p = DistParams::new(2, 0, &[1.0, 2.0], &[]).unwrap();
        assert_eq!(p.sigma_prod(), 2.0);
        assert_eq!(p.s_prod(), 1.0);
        let expected = 2f64.powf(-1.0) * (1.0 / 2.0);
        assert!((p.lambda() - expected).abs() <= 1e-15 * expected);
        assert!((p.lambda() - 0.25).abs() <= 1e-15);
    }

    #[test]
    fn zero_factors_rejected() {
        assert_eq!(
            DistParams::new(0, 0, &[], &[]).unwrap_err(),
            Error::ZeroFactors
        );
    }

    #[test]
    fn length_mismatch_rejected() {
        let err = DistParams::new(2, 0, &[1.0], &[]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn bad_sigma_rejected() {
        assert!(matches!(
            DistParams::new(1, 0, &[0.0], &[]).unwrap_err(),
            Error::NonPositiveSigma { .. }
        ));
        assert!(matches!(
            DistParams::new(1, 0, &[-2.0], &[]).unwrap_err(),
            Error::NonPositiveSigma { .. }
        ));
        assert!(matches!(
            DistParams::new(1, 1, &[1.0], &[f64::NAN]).unwrap_err(),
            Error::NonFiniteSigma { .. }
        ));
        assert!(matches!(
            DistParams::new(1, 1, &[1.0], &[f64::INFINITY]).unwrap_err(),
            Error::NonFiniteSigma { .. }
        ));
    }

    #[test]
    fn products_match_naive_to_roundoff() {
        let sx = [0.3, 1.7, 2.9, 0.01, 55.0];
        let sy = [4.0, 0.25, 1.0];
        let p = DistParams::new(5, 3, &sx, &sy).unwrap();
        let naive_x: f64 = sx.iter().product();
        let naive_y: f64 = sy.iter().product();
        assert!((p.sigma_prod() - naive_x).abs() <= 1e-13 * naive_x);
        assert!((p.s_prod() - naive_y).abs() <= 1e-13 * naive_y);
        let lam = 2f64.powf((3.0 - 5.0) / 2.0) * naive_y / naive_x;
        assert!((p.lambda() - lam).abs() <= 1e-13 * lam);
    }

    #[test]
    fn large_factor_counts_do_not_overflow() {
        let m = 60;
        let sx = vec![3.0; m];
        let p = DistParams::new(m, 0, &sx, &[]).unwrap();
        assert!(p.sigma_prod().is_finite());
        assert!(p.lambda().is_finite());
        assert!(p.lambda() > 0.0);
    }

    #[test]
    fn construction_is_deterministic() {
        let a = DistParams::new(2, 3, &[1.1, 0.9], &[2.0, 0.5, 1.3]).unwrap();
        let b = DistParams::new(2, 3, &[1.1, 0.9], &[2.0, 0.5, 1.3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lambda().to_bits(), b.lambda().to_bits());
    }

    #[test]
    fn reciprocal_swaps_roles() {
        let p = DistParams::new(2, 1, &[1.5, 0.5], &[3.0]).unwrap();
        let r = p.reciprocal();
        assert_eq!(r.m(), 1);
        assert_eq!(r.n(), 2);
        assert_eq!(r.sigma_prod(), p.s_prod());
        assert_eq!(r.s_prod(), p.sigma_prod());
        // λ' = 2^{(M−N)/2} σ_M / s_N = 1/λ.
        assert!((r.lambda() * p.lambda() - 1.0).abs() < 1e-14);
    }
}
