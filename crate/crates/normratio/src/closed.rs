//! Elementary and special-function closed forms for the low-order cases.
//!
//! These serve both as fast paths and as independent oracles for the general
//! Meijer route. Coverage by (M, N):
//!
//! | (M, N) | density | CDF | characteristic function |
//! |--------|---------|-----|--------------------------|
//! | (2, 0) | K₀      | —   | —                        |
//! | (0, 1) | reciprocal normal | — | ₀F₂ pair        |
//! | (0, 2) | K₀ of 1/z | Struve/Bessel bracket | —    |
//! | (2, 2) | log-rational | dilogarithm | —           |
//! | (3, 3) | log-rational | —   | —                    |
//! | (2, 1) | eˣE₁    | —   | eˣΓ(½,x)                 |
//! | (1, 2) | eˣE₁ of 1/z² | — | —                      |
//! | (3, 1) | —       | —   | arccos                    |

use std::f64::consts::PI;

use crate::params::DistParams;
use crate::specfun::{
    bessel_k, dilog, expint_e1_scaled, hyp0f2, inc_gamma_upper_half_scaled, struve_l,
};
use crate::{Error, Result};

/// Relative window around a removable singularity inside which the local
/// series expansion replaces the raw formula.
const SINGULARITY_WINDOW: f64 = 1e-4;

/// Operations a closed-form case can serve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedOp {
    Pdf,
    Cdf,
    Cf,
}

/// The recognized closed-form patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasePattern {
    /// M = 2, N = 0: product of two normals, K₀ density.
    ProdM2N0,
    /// M = 0, N = 1: reciprocal normal density and ₀F₂ characteristic function.
    RecipN1,
    /// M = 0, N = 2: reciprocal of a two-normal product; Struve/Bessel CDF.
    RecipN2,
    /// M = N = 2: product of two Cauchys; dilogarithm CDF.
    CauchyM2N2,
    /// M = N = 3: product of three Cauchys.
    CauchyM3N3,
    /// M = 2, N = 1: eˣE₁ density, eˣΓ(½,·) characteristic function.
    M2N1,
    /// M = 1, N = 2: reciprocal of the (2, 1) case.
    M1N2,
    /// M = 3, N = 1: arccos characteristic function.
    M3N1Cf,
    /// The (0, 1) characteristic function on its own.
    M0N1Cf,
}

/// A matched closed-form case: the pattern plus the operations it serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedCase {
    pub pattern: CasePattern,
    ops: [Option<ClosedOp>; 3],
}

impl ClosedCase {
    fn new(pattern: CasePattern, ops: &[ClosedOp]) -> Self {
        let mut slots = [None; 3];
        for (slot, &op) in slots.iter_mut().zip(ops) {
            *slot = Some(op);
        }
        ClosedCase { pattern, ops: slots }
    }

    pub fn supports(&self, op: ClosedOp) -> bool {
        self.ops.iter().flatten().any(|&o| o == op)
    }

    pub fn applicable_ops(&self) -> Vec<ClosedOp> {
        self.ops.iter().flatten().copied().collect()
    }
}

/// Matches parameters to a closed-form case on (M, N) alone.
pub fn match_case(params: &DistParams) -> Option<ClosedCase> {
    use CasePattern::*;
    use ClosedOp::*;
    match (params.m(), params.n()) {
        (2, 0) => Some(ClosedCase::new(ProdM2N0, &[Pdf])),
        (0, 1) => Some(ClosedCase::new(RecipN1, &[Pdf, Cf])),
        (0, 2) => Some(ClosedCase::new(RecipN2, &[Pdf, Cdf])),
        (2, 2) => Some(ClosedCase::new(CauchyM2N2, &[Pdf, Cdf])),
        (3, 3) => Some(ClosedCase::new(CauchyM3N3, &[Pdf])),
        (2, 1) => Some(ClosedCase::new(M2N1, &[Pdf, Cf])),
        (1, 2) => Some(ClosedCase::new(M1N2, &[Pdf])),
        (3, 1) => Some(ClosedCase::new(M3N1Cf, &[Cf])),
        _ => None,
    }
}

fn expect_mn(params: &DistParams, m: usize, n: usize, what: &str) -> Result<()> {
    if params.m() != m || params.n() != n {
        return Err(Error::CaseMismatch(format!(
            "{what} needs (M, N) = ({m}, {n}), got ({}, {})",
            params.m(),
            params.n()
        )));
    }
    Ok(())
}

/// Closed-form density.
pub fn pdf_closed(case: &ClosedCase, params: &DistParams, z: f64) -> Result<f64> {
    if !case.supports(ClosedOp::Pdf) {
        return Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form density",
            case.pattern
        )));
    }
    let az = z.abs();
    match case.pattern {
        CasePattern::ProdM2N0 => {
            expect_mn(params, 2, 0, "ProdM2N0")?;
            let s2 = params.sigma_prod();
            if z == 0.0 {
                return Ok(f64::INFINITY);
            }
            if az / s2 > 700.0 {
                return Ok(0.0);
            }
            Ok(bessel_k(0, az / s2)? / (PI * s2))
        }
        CasePattern::RecipN1 => {
            expect_mn(params, 0, 1, "RecipN1")?;
            let s1 = params.s_prod();
            if z == 0.0 {
                return Ok(0.0);
            }
            Ok((-1.0 / (2.0 * s1 * s1 * z * z)).exp() / ((2.0 * PI).sqrt() * s1 * z * z))
        }
        CasePattern::RecipN2 => {
            expect_mn(params, 0, 2, "RecipN2")?;
            let s2 = params.s_prod();
            if z == 0.0 {
                return Ok(0.0);
            }
            let arg = 1.0 / (s2 * az);
            if arg > 700.0 {
                // K₀ underflows; so does the density.
                return Ok(0.0);
            }
            Ok(bessel_k(0, arg)? / (PI * s2 * z * z))
        }
        CasePattern::CauchyM2N2 => {
            expect_mn(params, 2, 2, "CauchyM2N2")?;
            let r2 = params.s_prod() / params.sigma_prod();
            if z == 0.0 {
                return Ok(f64::INFINITY);
            }
            let u = r2 * az;
            let d = u - 1.0;
            if d.abs() <= SINGULARITY_WINDOW {
                // ln(u)/(u²−1) = (1 − d + 5d²/6 − …)/2 around u = 1.
                return Ok(r2 / (PI * PI) * (1.0 - d + 5.0 * d * d / 6.0));
            }
            Ok(2.0 * r2 * u.ln() / (PI * PI * (u * u - 1.0)))
        }
        CasePattern::CauchyM3N3 => {
            expect_mn(params, 3, 3, "CauchyM3N3")?;
            let r3 = params.s_prod() / params.sigma_prod();
            if z == 0.0 {
                return Ok(f64::INFINITY);
            }
            let u = r3 * az;
            let ln = u.ln();
            Ok(r3 * (4.0 * ln * ln + PI * PI) / (2.0 * PI.powi(3) * (u * u + 1.0)))
        }
        CasePattern::M2N1 => {
            expect_mn(params, 2, 1, "M2N1")?;
            let (s1, sig2) = (params.s_prod(), params.sigma_prod());
            if z == 0.0 {
                return Ok(f64::INFINITY);
            }
            let y = s1 * s1 * z * z / (2.0 * sig2 * sig2);
            Ok(s1 / (2f64.sqrt() * PI.powf(1.5) * sig2) * expint_e1_scaled(y)?)
        }
        CasePattern::M1N2 => {
            expect_mn(params, 1, 2, "M1N2")?;
            let (sig1, s2) = (params.sigma_prod(), params.s_prod());
            if z == 0.0 {
                // w → ∞ gives eʷE₁(w) ~ 1/w, so the limit is finite.
                return Ok(2f64.sqrt() * s2 / (PI.powf(1.5) * sig1));
            }
            let w = sig1 * sig1 / (2.0 * s2 * s2 * z * z);
            Ok(sig1 / (2f64.sqrt() * PI.powf(1.5) * s2 * z * z) * expint_e1_scaled(w)?)
        }
        _ => Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form density",
            case.pattern
        ))),
    }
}

/// ∫₀^x K₀(t) dt expressed through the Struve/Bessel bracket; the large-x
/// branch completes with the exponentially small Bessel tail.
fn k0_integral(x: f64) -> Result<f64> {
    if x <= 30.0 {
        let bracket =
            bessel_k(0, x)? * struve_l(-1, x)? + struve_l(0, x)? * bessel_k(1, x)?;
        Ok(PI * x / 2.0 * bracket)
    } else {
        // ∫₀^∞ K₀ = π/2; tail ∫ₓ^∞ K₀ ~ √(π/2x)·e^{−x}(1 − 1/(8x) + 9/(128x²)).
        let tail = (PI / (2.0 * x)).sqrt()
            * (-x).exp()
            * (1.0 - 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
        Ok(PI / 2.0 - tail)
    }
}

/// Closed-form CDF.
pub fn cdf_closed(case: &ClosedCase, params: &DistParams, z: f64) -> Result<f64> {
    if !case.supports(ClosedOp::Cdf) {
        return Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form CDF",
            case.pattern
        )));
    }
    match case.pattern {
        CasePattern::RecipN2 => {
            expect_mn(params, 0, 2, "RecipN2")?;
            if z == 0.0 {
                return Ok(0.5);
            }
            let s2 = params.s_prod();
            let x_arg = 1.0 / (s2 * z.abs());
            // F(z) = 1/2 + sgn(z)·(1/π)·∫_{1/(s₂|z|)}^∞ K₀(u) du.
            let tail = PI / 2.0 - k0_integral(x_arg)?;
            Ok(0.5 + z.signum() * tail / PI)
        }
        CasePattern::CauchyM2N2 => {
            expect_mn(params, 2, 2, "CauchyM2N2")?;
            if z == 0.0 {
                return Ok(0.5);
            }
            let r2 = params.s_prod() / params.sigma_prod();
            let u = r2 * z.abs();
            let bracket =
                PI * PI / 6.0 - dilog(1.0 - u)? - dilog(-u)? - u.ln() * (1.0 + u).ln();
            Ok(0.5 + z.signum() * bracket / (PI * PI))
        }
        _ => Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form CDF",
            case.pattern
        ))),
    }
}

/// Closed-form characteristic function.
pub fn cf_closed(case: &ClosedCase, params: &DistParams, t: f64) -> Result<f64> {
    if !case.supports(ClosedOp::Cf) && case.pattern != CasePattern::M0N1Cf {
        return Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form characteristic function",
            case.pattern
        )));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    match case.pattern {
        CasePattern::M2N1 => {
            expect_mn(params, 2, 1, "M2N1")?;
            let (s1, sig2) = (params.s_prod(), params.sigma_prod());
            let w = sig2 * sig2 * t * t / (2.0 * s1 * s1);
            Ok(inc_gamma_upper_half_scaled(w)? / PI.sqrt())
        }
        CasePattern::M3N1Cf => {
            expect_mn(params, 3, 1, "M3N1Cf")?;
            let (s1, sig3) = (params.s_prod(), params.sigma_prod());
            let u = sig3 * t.abs() / s1;
            let e = 1.0 - u;
            if e.abs() <= SINGULARITY_WINDOW {
                // arccos(u)/√(1−u²) = 1 + e/3 + 2e²/15 + … around u = 1.
                return Ok(2.0 / PI * (1.0 + e / 3.0 + 2.0 * e * e / 15.0));
            }
            if u < 1.0 {
                Ok(2.0 * u.acos() / (PI * (1.0 - u * u).sqrt()))
            } else {
                // Continuation past u = 1: arccosh over √(u²−1).
                let root = (u * u - 1.0).sqrt();
                Ok(2.0 * (u + root).ln() / (PI * root))
            }
        }
        CasePattern::RecipN1 | CasePattern::M0N1Cf => {
            expect_mn(params, 0, 1, "M0N1Cf")?;
            let s1 = params.s_prod();
            let x_arg = t * t / (8.0 * s1 * s1);
            Ok(hyp0f2(0.5, 0.5, x_arg)?
                - PI.sqrt() * t.abs() / (2f64.sqrt() * s1) * hyp0f2(1.0, 1.5, x_arg)?)
        }
        _ => Err(Error::CaseMismatch(format!(
            "{:?} has no closed-form characteristic function",
            case.pattern
        ))),
    }
}

/// The dilogarithm reduction of `G^{2,3}_{3,3}(x | a+1/2, a, a; a, a, a−1/2)`:
/// `2 x^{a−1/2} [π²/6 − Li₂(1−√x) − Li₂(−√x) − ln(√x) ln(1+√x)]`.
pub fn corollary_reduction(a: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!(
            "corollary_reduction requires x > 0, got {x}"
        )));
    }
    let root = x.sqrt();
    let bracket =
        PI * PI / 6.0 - dilog(1.0 - root)? - dilog(-root)? - root.ln() * (1.0 + root).ln();
    Ok(2.0 * x.powf(a - 0.5) * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meijer::{self, eval_g};

    fn unit(m: usize, n: usize) -> DistParams {
        DistParams::unit(m, n).unwrap()
    }

    #[test]
    fn matching_is_on_mn_only() {
        assert_eq!(
            match_case(&unit(2, 2)).unwrap().pattern,
            CasePattern::CauchyM2N2
        );
        assert_eq!(match_case(&unit(2, 1)).unwrap().pattern, CasePattern::M2N1);
        assert!(match_case(&DistParams::new(4, 3, &[1.0; 4], &[1.0; 3]).unwrap()).is_none());
        assert!(match_case(&unit(1, 1)).is_none());
        let c01 = match_case(&unit(0, 1)).unwrap();
        assert!(c01.supports(ClosedOp::Pdf) && c01.supports(ClosedOp::Cf));
        assert!(!c01.supports(ClosedOp::Cdf));
    }

    #[test]
    fn two_cauchy_density_values() {
        let params = unit(2, 2);
        let case = match_case(&params).unwrap();
        // f(2) = 2 ln 2 / (3π²) for r₂ = 1.
        let got = pdf_closed(&case, &params, 2.0).unwrap();
        let want = 2.0 * 2f64.ln() / (3.0 * PI * PI);
        assert!((got - want).abs() <= 1e-14, "{got} vs {want}");
        // Removable singularity at z = 1: limit 1/π², approached from both
        // sides (the density slope there is −r₂/π², so the gap shrinks
        // linearly in the offset).
        let at = pdf_closed(&case, &params, 1.0).unwrap();
        assert!((at - 1.0 / (PI * PI)).abs() < 1e-12);
        for &dz in &[5e-6, -5e-6, 1e-7, -1e-7] {
            let near = pdf_closed(&case, &params, 1.0 + dz).unwrap();
            assert!((near - at).abs() < 1e-6, "dz = {dz}: {near} vs {at}");
        }
        // The raw formula just outside the series window continues the
        // series values smoothly.
        for &dz in &[2e-4, -2e-4] {
            let raw = pdf_closed(&case, &params, 1.0 + dz).unwrap();
            let series = (1.0 - dz + 5.0 * dz * dz / 6.0) / (PI * PI);
            assert!(
                (raw - series).abs() < 1e-10,
                "dz = {dz}: {raw} vs {series}"
            );
        }
    }

    #[test]
    fn three_cauchy_density_value() {
        let params = unit(3, 3);
        let case = match_case(&params).unwrap();
        // f(1) = (0 + π²)/(2π³·2) = 1/(4π) for r₃ = 1.
        let got = pdf_closed(&case, &params, 1.0).unwrap();
        assert!((got - 1.0 / (4.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn two_cauchy_cdf_values() {
        let params = unit(2, 2);
        let case = match_case(&params).unwrap();
        assert_eq!(cdf_closed(&case, &params, 0.0).unwrap(), 0.5);
        // F(1) = 1/2 + (1/π²)[π²/6 − Li₂(0) − Li₂(−1) − 0] = 3/4.
        let got = cdf_closed(&case, &params, 1.0).unwrap();
        let bracket = PI * PI / 6.0 - dilog(0.0).unwrap() - dilog(-1.0).unwrap();
        let want = 0.5 + bracket / (PI * PI);
        assert!((got - want).abs() < 1e-14);
        assert!((got - 0.75).abs() < 1e-13);
        // Antisymmetry and limits.
        let fm = cdf_closed(&case, &params, -1.0).unwrap();
        assert!((fm - 0.25).abs() < 1e-13);
        assert!((cdf_closed(&case, &params, 1e8).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn reciprocal_two_product_cdf() {
        let params = unit(0, 2);
        let case = match_case(&params).unwrap();
        assert_eq!(cdf_closed(&case, &params, 0.0).unwrap(), 0.5);
        // CDF limit at +∞ is 1 (s₂ = 1, huge z).
        let far = cdf_closed(&case, &params, 1e9).unwrap();
        assert!((far - 1.0).abs() < 1e-8, "far = {far}");
        // Against quadrature of the closed-form density on [0, z].
        for &z in &[0.4, 1.0, 3.0] {
            let quad = crate::quad::integrate(
                &|x: f64| pdf_closed(&case, &params, x).unwrap(),
                1e-6,
                z,
                1e-12,
                1e-12,
            )
            .unwrap()
            .value;
            let got = cdf_closed(&case, &params, z).unwrap();
            assert!(
                (got - (0.5 + quad)).abs() < 1e-8,
                "z = {z}: {got} vs {}",
                0.5 + quad
            );
        }
    }

    #[test]
    fn cf_values() {
        // t = 0 gives 1 everywhere.
        for (m, n) in [(2, 1), (3, 1), (0, 1)] {
            let params = unit(m, n);
            let case = match_case(&params).unwrap();
            assert_eq!(cf_closed(&case, &params, 0.0).unwrap(), 1.0);
        }
        // (3,1) at t = 1/2: 2·arccos(1/2)/(π·√3/2) = 4/(3√3).
        let params = unit(3, 1);
        let case = match_case(&params).unwrap();
        let got = cf_closed(&case, &params, 0.5).unwrap();
        let want = 2.0 * (0.5f64).acos() / (PI * (1.0f64 - 0.25).sqrt());
        assert!((got - want).abs() < 1e-15);
        assert!((got - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-14);
        // Removable limit 2/π at u → 1, approached from both sides.
        let lim = cf_closed(&case, &params, 1.0).unwrap();
        assert!((lim - 2.0 / PI).abs() < 1e-12);
        for &t in &[1.0 - 1e-3, 1.0 + 1e-3, 1.0 - 2e-5, 1.0 + 2e-5] {
            let near = cf_closed(&case, &params, t).unwrap();
            assert!((near - lim).abs() < 1e-3, "t = {t}");
        }
        // Past the corner the continuation decays to zero.
        let beyond = cf_closed(&case, &params, 30.0).unwrap();
        assert!(beyond > 0.0 && beyond < 0.1);
    }

    #[test]
    fn corollary_values_and_shift() {
        // a = 1/2, x = 1: 2[π²/6 − Li₂(0) − Li₂(−1) − 0] = π²/2.
        let got = corollary_reduction(0.5, 1.0).unwrap();
        let want = 2.0 * (PI * PI / 6.0 - dilog(0.0).unwrap() - dilog(-1.0).unwrap());
        assert!((got - want).abs() < 1e-14);
        assert!((got - PI * PI / 2.0).abs() < 1e-13);
        // The a-dependence is exactly the prefactor x^{a−1/2}.
        let x = 4.0;
        let lhs = corollary_reduction(1.0, x).unwrap();
        let rhs = x.powf(0.5) * corollary_reduction(0.5, x).unwrap();
        assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs());
    }

    #[test]
    fn corollary_matches_contour_evaluation() {
        for &a in &[0.0, 0.5] {
            for &x in &[0.25, 1.0, 4.0] {
                let spec = meijer::MeijerSpec::new(
                    2,
                    3,
                    vec![a + 0.5, a, a],
                    vec![a, a, a - 0.5],
                    a - 0.25,
                )
                .unwrap();
                let got = eval_g(&spec, x).unwrap();
                let want = corollary_reduction(a, x).unwrap();
                assert!(
                    (got.value - want).abs() <= 1e-8 * want.abs(),
                    "a = {a}, x = {x}: {} vs {want}",
                    got.value
                );
            }
        }
    }

    #[test]
    fn small_x_corollary_behavior() {
        // Compare the contour route at a small argument where the bracket is
        // itself small.
        let spec = meijer::MeijerSpec::new(
            2,
            3,
            vec![1.0, 0.5, 0.5],
            vec![0.5, 0.5, 0.0],
            0.25,
        )
        .unwrap();
        let x = 1e-3;
        let got = eval_g(&spec, x).unwrap().value;
        let want = corollary_reduction(0.5, x).unwrap();
        assert!((got - want).abs() <= 1e-8 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn mismatches_are_rejected() {
        let params = unit(2, 2);
        let case = match_case(&params).unwrap();
        assert!(cf_closed(&case, &params, 1.0).is_err());
        let p31 = unit(3, 1);
        let c31 = match_case(&p31).unwrap();
        assert!(pdf_closed(&c31, &p31, 1.0).is_err());
        assert!(cdf_closed(&c31, &p31, 1.0).is_err());
        // Wrong params for a hand-built case.
        assert!(pdf_closed(&case, &p31, 1.0).is_err());
    }
}
