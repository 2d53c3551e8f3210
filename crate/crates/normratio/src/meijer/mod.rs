//! Meijer G-function evaluation for the half-integer parameter family.
//!
//! The defining contour integral is
//!
//! ```text
//!                    1   ⌠  ∏_{j≤m} Γ(b_j−s) ∏_{j≤n} Γ(1−a_j+s)
//! G^{m,n}_{p,q}(x) = ——— ⎮  ——————————————————————————————————————— x^s ds
//!                    2πi ⌡L ∏_{j>n} Γ(a_j−s) ∏_{j>m} Γ(1−b_j+s)
//! ```
//!
//! with `L` the vertical line `Re(s) = c` separating the poles of the
//! `Γ(b_j−s)` factors (right family) from those of the `Γ(1−a_j+s)` factors
//! (left family). Supported parameters are the half-integers in [−1/2, 3/2] —
//! the family generated by the product-ratio kernels and closed under the
//! argument-inversion identity.
//!
//! Evaluation routes by argument: `x > 1` inverts to `1/x` (inversion
//! identity, swapping the two pole families) so the oscillation of `x^s`
//! stays bounded; small `x` sums the right-hand residue series, which is
//! where the logarithmic pole structure lives; mid-range `x` integrates the
//! contour directly; and specs without right poles (`m = 0`, the
//! exponentially small regime) move the abscissa to the real saddle point.

mod contour;
mod residue;
mod series;

use crate::params::{DistParams, EvalMethod, EvalResult};
use crate::{Error, Result};

use contour::{integrate_line, optimal_abscissa, saddle_abscissa, saddle_width, Factors};
use residue::ResidueTable;

/// Residue-series cutoff: below it the pole sum converges in ≤ ~30 terms.
const RESIDUE_CUTOFF: f64 = 0.25;

/// Cutoff for divergent (p > q) pole sums used as optimally-truncated
/// asymptotic expansions; the reported remainder must clear the evaluator's
/// own acceptance bar, so this only has to be conservative.
const ASYMPTOTIC_SERIES_CUTOFF: f64 = 0.02;

/// Evaluation tolerances for the contour quadrature.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Absolute tolerance on kernel values.
    pub abs_tol: f64,
    /// Relative tolerance on kernel values.
    pub rel_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
        }
    }
}

impl EvalOptions {
    /// Quadrature target in peak-scaled mantissa units.
    pub(crate) fn abs_tol_scaled(&self, ln_peak: f64) -> f64 {
        (self.abs_tol * std::f64::consts::PI * (-ln_peak).exp()).min(1e-6)
    }
}

/// Value in logarithmic form: `G = sign · exp(ln_abs)`.
#[derive(Debug, Clone, Copy)]
pub struct LnEval {
    pub ln_abs: f64,
    pub sign: f64,
    pub rel_err: f64,
    pub method: EvalMethod,
}

/// A restricted Meijer G specification: orders, half-integer parameter lists
/// and the abscissa of the integration line.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerSpec {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    contour_re: f64,
}

impl MeijerSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>, contour_re: f64) -> Result<Self> {
        let spec = MeijerSpec {
            m,
            n,
            a,
            b,
            contour_re,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.a.len()
    }
    pub fn q(&self) -> usize {
        self.b.len()
    }
    pub fn a_params(&self) -> &[f64] {
        &self.a
    }
    pub fn b_params(&self) -> &[f64] {
        &self.b
    }
    pub fn contour_re(&self) -> f64 {
        self.contour_re
    }

    fn validate(&self) -> Result<()> {
        let (m, n, p, q) = (self.m, self.n, self.p(), self.q());
        if m > q || n > p {
            return Err(Error::SpecUnsupported(format!(
                "orders m={m}, n={n} exceed parameter counts p={p}, q={q}"
            )));
        }
        if m + n == 0 {
            return Err(Error::SpecUnsupported(
                "m + n = 0: the contour integrand has no decay".into(),
            ));
        }
        for &v in self.a.iter().chain(self.b.iter()) {
            let doubled = 2.0 * v;
            if doubled != doubled.round() || !(-0.5..=1.5).contains(&v) {
                return Err(Error::SpecUnsupported(format!(
                    "parameter {v} outside the half-integer family [-1/2, 3/2]"
                )));
            }
        }
        let delta = (m + n) as f64 - ((p - n) + (q - m)) as f64;
        if delta < 1.0 {
            return Err(Error::SpecUnsupported(format!(
                "decay constant 2(m+n)-p-q = {delta} < 1"
            )));
        }
        let c = self.contour_re;
        for &b in &self.b[..m] {
            if c >= b - 1e-12 {
                return Err(Error::SpecUnsupported(format!(
                    "contour Re(s) = {c} does not pass left of the pole family at {b}"
                )));
            }
        }
        for &a in &self.a[..n] {
            if c <= a - 1.0 + 1e-12 {
                return Err(Error::SpecUnsupported(format!(
                    "contour Re(s) = {c} does not pass right of the pole family at {}",
                    a - 1.0
                )));
            }
        }
        Ok(())
    }

    /// Argument inversion: `G^{m,n}_{p,q}(x | a; b) = G^{n,m}_{q,p}(1/x | 1−b; 1−a)`.
    pub fn invert(&self) -> Self {
        MeijerSpec {
            m: self.n,
            n: self.m,
            a: self.b.iter().map(|v| 1.0 - v).collect(),
            b: self.a.iter().map(|v| 1.0 - v).collect(),
            contour_re: -self.contour_re,
        }
    }

    /// Parameter shift: `x^α G(x | a; b) = G(x | a+α; b+α)`.
    pub fn shifted(&self, alpha: f64) -> Result<Self> {
        MeijerSpec::new(
            self.m,
            self.n,
            self.a.iter().map(|v| v + alpha).collect(),
            self.b.iter().map(|v| v + alpha).collect(),
            self.contour_re + alpha,
        )
    }

    fn factors(&self) -> Factors {
        Factors {
            top_minus: self.b[..self.m].to_vec(),
            top_plus: self.a[..self.n].iter().map(|v| 1.0 - v).collect(),
            bot_minus: self.a[self.n..].to_vec(),
            bot_plus: self.b[self.m..].iter().map(|v| 1.0 - v).collect(),
        }
    }

    /// Pole-free vertical strip: left family below `max(a_j) − 1`, right
    /// family above `min(b_j)`.
    fn strip(&self) -> (f64, f64) {
        let lo = self.a[..self.n]
            .iter()
            .fold(f64::NEG_INFINITY, |acc, &a| acc.max(a - 1.0));
        let hi = self.b[..self.m]
            .iter()
            .fold(f64::INFINITY, |acc, &b| acc.min(b));
        (lo, hi)
    }
}

/// A spec bundled with its inverted twin and prebuilt residue tables; this is
/// what the distribution layer caches per kernel.
pub(crate) struct KernelEvaluator {
    spec: MeijerSpec,
    factors: Factors,
    table: Option<ResidueTable>,
    inv_spec: MeijerSpec,
    inv_factors: Factors,
    inv_table: Option<ResidueTable>,
}

impl KernelEvaluator {
    pub fn new(spec: MeijerSpec) -> Result<Self> {
        spec.validate()?;
        let inv_spec = spec.invert();
        let factors = spec.factors();
        let inv_factors = inv_spec.factors();
        let table = if spec.m > 0 {
            Some(ResidueTable::build(&factors)?)
        } else {
            None
        };
        let inv_table = if inv_spec.m > 0 {
            Some(ResidueTable::build(&inv_factors)?)
        } else {
            None
        };
        Ok(KernelEvaluator {
            spec,
            factors,
            table,
            inv_spec,
            inv_factors,
            inv_table,
        })
    }

    pub fn eval(&self, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
        check_argument(x)?;
        if x > 1.0 {
            self.eval_side(&self.inv_spec, &self.inv_factors, &self.inv_table, 1.0 / x, opts)
        } else {
            self.eval_side(&self.spec, &self.factors, &self.table, x, opts)
        }
    }

    pub fn eval_ln(&self, x: f64, opts: &EvalOptions) -> Result<LnEval> {
        check_argument(x)?;
        let (spec, factors, table, arg) = if x > 1.0 {
            (&self.inv_spec, &self.inv_factors, &self.inv_table, 1.0 / x)
        } else {
            (&self.spec, &self.factors, &self.table, x)
        };
        if spec.m == 0 {
            let ln_x = arg.ln();
            let sigma = saddle_abscissa(factors, ln_x)?;
            let width = saddle_width(factors, sigma);
            let out = integrate_line(factors, sigma, ln_x, width, true, opts)?;
            let (ln_abs, sign) = out.ln_value();
            return Ok(LnEval {
                ln_abs,
                sign,
                rel_err: out.rel_err(),
                method: EvalMethod::Contour,
            });
        }
        let r = self.eval_side(spec, factors, table, arg, opts)?;
        Ok(LnEval {
            ln_abs: r.value.abs().ln(),
            sign: r.value.signum(),
            rel_err: r.abs_err_estimate / r.value.abs().max(f64::MIN_POSITIVE),
            method: r.method,
        })
    }

    fn eval_side(
        &self,
        spec: &MeijerSpec,
        factors: &Factors,
        table: &Option<ResidueTable>,
        x: f64,
        opts: &EvalOptions,
    ) -> Result<EvalResult> {
        let ln_x = x.ln();
        if spec.m == 0 {
            // No right-hand poles: exponentially small regime, saddle contour.
            let sigma = saddle_abscissa(factors, ln_x)?;
            // At the saddle each numerator gamma contributes about −σ to the
            // log-peak, so far-out saddles guarantee underflow before any
            // cancellation-prone arithmetic runs.
            if sigma > 1e10 {
                return Ok(EvalResult::new(0.0, 1e-300, EvalMethod::Contour));
            }
            let width = saddle_width(factors, sigma);
            // When the saddle peak already sits below the f64 floor the
            // value underflows no matter what the mantissa integral gives;
            // skip the quadrature (whose exponent differences would be all
            // cancellation noise out there).
            let peak = factors.envelope_at(sigma, 0.0, ln_x);
            if peak + width.ln().max(0.0) + 5.0 < f64::MIN_POSITIVE.ln() {
                return Ok(EvalResult::new(0.0, 1e-300, EvalMethod::Contour));
            }
            let out = integrate_line(factors, sigma, ln_x, width, true, opts)?;
            return Ok(EvalResult::new(
                out.value(),
                out.abs_err(),
                EvalMethod::Contour,
            ));
        }
        let series_cutoff = match table {
            Some(t) if t.is_asymptotic() => ASYMPTOTIC_SERIES_CUTOFF,
            _ => RESIDUE_CUTOFF,
        };
        if x < series_cutoff {
            if let Some(t) = table {
                if let Ok((value, err)) = t.eval(x) {
                    return Ok(EvalResult::new(value, err, EvalMethod::ResidueSeries));
                }
            }
        }
        // The abscissa slides to the in-strip integrand minimum, which keeps
        // the quadrature scale near the value scale for arguments far from 1
        // (the only small-x route for p > q specs, where no residue series
        // converges).
        let (strip_lo, strip_hi) = spec.strip();
        let c = optimal_abscissa(factors, ln_x, strip_lo, strip_hi);
        let width = (strip_hi - c)
            .min(if strip_lo.is_finite() {
                c - strip_lo
            } else {
                1.0
            })
            .clamp(1e-3, 1.0);
        let out = integrate_line(factors, c, ln_x, width, true, opts)?;
        let value = out.value();
        let err = out.abs_err();
        if err > 1e3 * opts.abs_tol.max(opts.rel_tol * value.abs()).max(1e-300) {
            return Err(Error::ContourFailure(format!(
                "error estimate {err:.3e} for value {value:.6e} at x = {x}"
            )));
        }
        Ok(EvalResult::new(value, err, EvalMethod::Contour))
    }
}

fn check_argument(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!(
            "Meijer argument must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// Evaluates a Meijer G-function with default tolerances.
pub fn eval_g(spec: &MeijerSpec, x: f64) -> Result<EvalResult> {
    eval_g_with(spec, x, &EvalOptions::default())
}

/// Evaluates a Meijer G-function with explicit tolerances.
pub fn eval_g_with(spec: &MeijerSpec, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    KernelEvaluator::new(spec.clone())?.eval(x, opts)
}

/// Logarithmic-form evaluation, usable when the value itself under- or
/// overflows f64.
pub fn eval_g_ln(spec: &MeijerSpec, x: f64, opts: &EvalOptions) -> Result<LnEval> {
    KernelEvaluator::new(spec.clone())?.eval_ln(x, opts)
}

/// Forces the contour route at the spec's own abscissa, without argument
/// inversion or residue shortcuts (saddle placement still applies when the
/// spec has no right-hand poles). Exists so identity tests can cross two
/// genuinely different code paths.
pub fn eval_g_contour(spec: &MeijerSpec, x: f64) -> Result<EvalResult> {
    eval_g_contour_with(spec, x, &EvalOptions::default())
}

pub fn eval_g_contour_with(spec: &MeijerSpec, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    spec.validate()?;
    check_argument(x)?;
    let factors = spec.factors();
    let c = if spec.m == 0 {
        saddle_abscissa(&factors, x.ln())?
    } else {
        spec.contour_re
    };
    let width = if spec.m == 0 {
        saddle_width(&factors, c)
    } else {
        1.0
    };
    let out = integrate_line(&factors, c, x.ln(), width, spec.m == 0, opts)?;
    Ok(EvalResult::new(
        out.value(),
        out.abs_err(),
        EvalMethod::Contour,
    ))
}

/// Forces the residue-series route; requires `m ≥ 1` and `x < 1/2`.
pub fn eval_g_residue(spec: &MeijerSpec, x: f64) -> Result<EvalResult> {
    spec.validate()?;
    check_argument(x)?;
    if spec.m == 0 {
        return Err(Error::SpecUnsupported(
            "residue series needs right-hand poles (m >= 1)".into(),
        ));
    }
    let table = ResidueTable::build(&spec.factors())?;
    let (value, err) = table.eval(x)?;
    Ok(EvalResult::new(value, err, EvalMethod::ResidueSeries))
}

/// Density kernel `G^{M,N}_{N,M}(x | 0,…,0; 0,…,0)` evaluated on the line
/// `Re(s) = −1/2` (equivalently +1/2 after `s → −s`).
pub fn pdf_spec(params: &DistParams) -> MeijerSpec {
    MeijerSpec {
        m: params.m(),
        n: params.n(),
        a: vec![0.0; params.n()],
        b: vec![0.0; params.m()],
        contour_re: -0.5,
    }
}

/// Distribution-function kernel `G^{M,N+1}_{N+1,M+1}(x | 1/2,0,…,0; 0,…,0,−1/2)`
/// with integrand `Γ(−s)^M Γ(1/2+s) Γ(1+s)^N / Γ(3/2+s)` on `Re(s) = −1/4`.
pub fn cdf_spec(params: &DistParams) -> MeijerSpec {
    let mut a = vec![0.0; params.n() + 1];
    a[0] = 0.5;
    let mut b = vec![0.0; params.m() + 1];
    b[params.m()] = -0.5;
    MeijerSpec {
        m: params.m(),
        n: params.n() + 1,
        a,
        b,
        contour_re: -0.25,
    }
}

/// Characteristic-function kernel: `G^{N+1,M−1}_{M−1,N+1}(y | 1/2,…,1/2; 0,1/2,…,1/2)`
/// for `M ≥ 1` and `G^{N+1,0}_{0,N+2}(y | −; 0,1/2,…,1/2)` for `M = 0`,
/// both on `Re(s) = −1/4`.
pub fn cf_spec(params: &DistParams) -> MeijerSpec {
    if params.m() >= 1 {
        let mut b = vec![0.5; params.n() + 1];
        b[0] = 0.0;
        MeijerSpec {
            m: params.n() + 1,
            n: params.m() - 1,
            a: vec![0.5; params.m() - 1],
            b,
            contour_re: -0.25,
        }
    } else {
        let mut b = vec![0.5; params.n() + 2];
        b[0] = 0.0;
        MeijerSpec {
            m: params.n() + 1,
            n: 0,
            a: Vec::new(),
            b,
            contour_re: -0.25,
        }
    }
}

/// Evaluates the density kernel at `x > 0`.
pub fn pdf_kernel(params: &DistParams, x: f64) -> Result<EvalResult> {
    eval_g(&pdf_spec(params), x)
}

/// Evaluates the CDF kernel at `x > 0`.
pub fn cdf_kernel(params: &DistParams, x: f64) -> Result<EvalResult> {
    eval_g(&cdf_spec(params), x)
}

/// Evaluates the characteristic-function kernel at `y > 0`.
pub fn cf_kernel(params: &DistParams, y: f64) -> Result<EvalResult> {
    eval_g(&cf_spec(params), y)
}
