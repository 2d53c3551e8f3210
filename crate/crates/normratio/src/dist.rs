//! Public distribution API for Z = (X₁⋯X_M)/(Y₁⋯Y_N).
//!
//! [`NormalRatio`] owns the validated parameters plus prebuilt kernel
//! evaluators (contour specs with their residue tables), so repeated queries
//! are cheap. Every query routes through one of: the general Meijer kernels,
//! a closed form, an asymptotic regime, or direct quadrature of the density —
//! selectable per call through [`Method`].
//!
//! Densities and distribution functions are exactly symmetric about the
//! origin by construction: every formula consumes |z| and reattaches the sign.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::asym;
use crate::closed::{self, ClosedOp};
use crate::meijer::{cdf_spec, cf_spec, pdf_spec, EvalOptions, KernelEvaluator};
use crate::params::{DistParams, EvalMethod, EvalResult};
use crate::{Error, Result};

/// |λz| window outside which `Method::Auto` hands over to the asymptotic
/// regimes.
const AUTO_SMALL: f64 = 1e-8;
const AUTO_LARGE: f64 = 1e8;

/// Quantile search: bisect to this relative width, then polish with the
/// density derivative.
const QUANTILE_BISECT_WIDTH: f64 = 1e-3;
const QUANTILE_MAX_ITER: usize = 200;
const QUANTILE_RESIDUAL: f64 = 1e-10;

/// Draws per substream chunk; chunk k of a run is seeded by (seed, k), so
/// parallel and serial generation produce identical streams.
const SAMPLE_CHUNK: usize = 1 << 16;

/// Evaluation route requested by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Route on (M, N, argument magnitude): general kernels in the bulk,
    /// asymptotic forms outside |λz| ∈ [1e-8, 1e8].
    #[default]
    Auto,
    /// Always the general Meijer kernels.
    Meijer,
    /// The matching closed form; errors when none covers the operation.
    ClosedForm,
    /// The near-zero/tail approximation for the argument's side.
    Asymptotic,
    /// Adaptive quadrature of the density (CDF and survival only).
    Quadrature,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "meijer" => Ok(Method::Meijer),
            "closed-form" | "closed_form" | "closed" => Ok(Method::ClosedForm),
            "asymptotic" | "asym" => Ok(Method::Asymptotic),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            other => Err(Error::Usage(format!(
                "unknown method '{other}' (expected auto|meijer|closed-form|asymptotic|quadrature)"
            ))),
        }
    }
}

/// Density shape classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// M ≥ 1: one mode at the origin (infinite peak for M ≥ 2).
    UnimodalAtZero,
    /// M = 0: density vanishes at the origin, symmetric modes either side.
    BimodalSymmetric,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::UnimodalAtZero => f.write_str("unimodal-at-zero"),
            Shape::BimodalSymmetric => f.write_str("bimodal-symmetric"),
        }
    }
}

/// A seeded, reproducible batch of draws.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub seed: u64,
    pub params: DistParams,
}

/// The normal product-ratio distribution.
pub struct NormalRatio {
    params: DistParams,
    opts: EvalOptions,
    pdf_prefactor: f64,
    cdf_prefactor: f64,
    cf_prefactor: f64,
    pdf_kernel: KernelEvaluator,
    cdf_kernel: KernelEvaluator,
    cf_kernel: KernelEvaluator,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn substream_seed(seed: u64, chunk: u64) -> u64 {
    splitmix64(seed ^ splitmix64(chunk.wrapping_add(1)))
}

impl NormalRatio {
    pub fn new(params: DistParams) -> Self {
        Self::with_options(params, EvalOptions::default())
    }

    pub fn with_options(params: DistParams, opts: EvalOptions) -> Self {
        let (m, n) = (params.m() as f64, params.n() as f64);
        let pdf_prefactor = params.lambda() / PI.powf((m + n) / 2.0);
        let cdf_prefactor = 0.5 * pdf_prefactor;
        let cf_prefactor = if params.m() >= 1 {
            PI.powf(-(n + m - 1.0) / 2.0)
        } else {
            PI.powf(-(n - 1.0) / 2.0)
        };
        let pdf_kernel = KernelEvaluator::new(pdf_spec(&params))
            .expect("density kernel is valid for validated params");
        let cdf_kernel = KernelEvaluator::new(cdf_spec(&params))
            .expect("cdf kernel is valid for validated params");
        let cf_kernel = KernelEvaluator::new(cf_spec(&params))
            .expect("cf kernel is valid for validated params");
        NormalRatio {
            params,
            opts,
            pdf_prefactor,
            cdf_prefactor,
            cf_prefactor,
            pdf_kernel,
            cdf_kernel,
            cf_kernel,
        }
    }

    pub fn params(&self) -> &DistParams {
        &self.params
    }

    /// Density value at the origin by the z → 0 conventions: 0 for M = 0,
    /// the finite limit λ/π^{(M+N)/2} for M = 1, +∞ for M ≥ 2 (a genuine
    /// logarithmic-power singularity, returned as an evaluable endpoint).
    fn pdf_at_origin(&self) -> EvalResult {
        let value = match self.params.m() {
            0 => 0.0,
            1 => self.pdf_prefactor,
            _ => f64::INFINITY,
        };
        EvalResult::exact(value, EvalMethod::ClosedForm)
    }

    /// Density f_Z(z).
    pub fn pdf(&self, z: f64, method: Method) -> Result<EvalResult> {
        if !z.is_finite() {
            return Err(Error::NonFiniteInput(z));
        }
        let scaled = self.params.lambda() * z.abs();
        match method {
            Method::Auto => {
                if z == 0.0 {
                    return Ok(self.pdf_at_origin());
                }
                if scaled < AUTO_SMALL || scaled > AUTO_LARGE {
                    return self.pdf(z, Method::Asymptotic);
                }
                self.pdf_general(z)
            }
            Method::Meijer => {
                if z == 0.0 {
                    return Ok(self.pdf_at_origin());
                }
                self.pdf_general(z)
            }
            Method::ClosedForm => {
                let case = closed::match_case(&self.params)
                    .filter(|c| c.supports(ClosedOp::Pdf))
                    .ok_or_else(|| {
                        Error::CaseMismatch(format!(
                            "no closed-form density for (M, N) = ({}, {})",
                            self.params.m(),
                            self.params.n()
                        ))
                    })?;
                let value = closed::pdf_closed(&case, &self.params, z)?;
                Ok(EvalResult::exact(value, EvalMethod::ClosedForm))
            }
            Method::Asymptotic => {
                let value = if scaled <= 1.0 {
                    asym::pdf_near_zero(&self.params, z)?
                } else {
                    asym::pdf_tail(&self.params, z)?
                };
                Ok(EvalResult::new(value, f64::NAN, EvalMethod::Asymptotic))
            }
            Method::Quadrature => Err(Error::CaseMismatch(
                "the density is the quadrature integrand; no quadrature route for it".into(),
            )),
        }
    }

    fn pdf_general(&self, z: f64) -> Result<EvalResult> {
        let x = (self.params.lambda() * z).powi(2);
        let kernel = self.pdf_kernel.eval(x, &self.opts)?;
        Ok(EvalResult::new(
            self.pdf_prefactor * kernel.value,
            self.pdf_prefactor * kernel.abs_err_estimate,
            kernel.method,
        ))
    }

    /// ln f_Z(z) through the log-scale kernel route; usable at any magnitude,
    /// including arguments where the linear density under- or overflows.
    pub fn log_pdf(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::NonFiniteInput(z));
        }
        if z == 0.0 {
            return Ok(self.pdf_at_origin().value.ln());
        }
        let x = (self.params.lambda() * z).powi(2);
        let ln = self.pdf_kernel.eval_ln(x, &self.opts)?;
        if ln.sign < 0.0 {
            return Err(Error::ConvergenceFailure(format!(
                "kernel sign came out negative at z = {z}; value below noise"
            )));
        }
        Ok(self.pdf_prefactor.ln() + ln.ln_abs)
    }

    /// Distribution function F_Z(z).
    pub fn cdf(&self, z: f64, method: Method) -> Result<EvalResult> {
        if !z.is_finite() {
            return Err(Error::NonFiniteInput(z));
        }
        if z == 0.0 {
            return Ok(EvalResult::new(0.5, 0.0, EvalMethod::ClosedForm));
        }
        let scaled = self.params.lambda() * z.abs();
        match method {
            Method::Auto => {
                if scaled > AUTO_LARGE {
                    return self.cdf(z, Method::Asymptotic);
                }
                self.cdf_general(z)
            }
            Method::Meijer => self.cdf_general(z),
            Method::ClosedForm => {
                let case = closed::match_case(&self.params)
                    .filter(|c| c.supports(ClosedOp::Cdf))
                    .ok_or_else(|| {
                        Error::CaseMismatch(format!(
                            "no closed-form CDF for (M, N) = ({}, {})",
                            self.params.m(),
                            self.params.n()
                        ))
                    })?;
                let value = closed::cdf_closed(&case, &self.params, z)?;
                Ok(EvalResult::exact(value, EvalMethod::ClosedForm))
            }
            Method::Asymptotic => {
                let tail = asym::sf_tail(&self.params, z.abs())?;
                let value = if z > 0.0 { 1.0 - tail } else { tail };
                Ok(EvalResult::new(value, f64::NAN, EvalMethod::Asymptotic))
            }
            Method::Quadrature => {
                let half = self.pdf_mass(z.abs())?;
                let value = 0.5 + z.signum() * half.value;
                Ok(EvalResult::new(
                    value,
                    half.abs_err_estimate,
                    EvalMethod::Quadrature,
                ))
            }
        }
    }

    fn cdf_general(&self, z: f64) -> Result<EvalResult> {
        let x = (self.params.lambda() * z).powi(2);
        let kernel = self.cdf_kernel.eval(x, &self.opts)?;
        let spread = self.cdf_prefactor * z * kernel.value;
        Ok(EvalResult::new(
            0.5 + spread,
            self.cdf_prefactor * z.abs() * kernel.abs_err_estimate,
            kernel.method,
        ))
    }

    /// Survival function P(Z > z), computed as ½ − (F(z) − ½) so tail
    /// precision survives the complement.
    pub fn sf(&self, z: f64, method: Method) -> Result<EvalResult> {
        if !z.is_finite() {
            return Err(Error::NonFiniteInput(z));
        }
        if z == 0.0 {
            return Ok(EvalResult::new(0.5, 0.0, EvalMethod::ClosedForm));
        }
        let scaled = self.params.lambda() * z.abs();
        match method {
            Method::Auto => {
                if scaled > AUTO_LARGE {
                    return self.sf(z, Method::Asymptotic);
                }
                let x = (self.params.lambda() * z).powi(2);
                let kernel = self.cdf_kernel.eval(x, &self.opts)?;
                let spread = self.cdf_prefactor * z * kernel.value;
                Ok(EvalResult::new(
                    0.5 - spread,
                    self.cdf_prefactor * z.abs() * kernel.abs_err_estimate,
                    kernel.method,
                ))
            }
            Method::Asymptotic => {
                let tail = asym::sf_tail(&self.params, z.abs())?;
                let value = if z > 0.0 { tail } else { 1.0 - tail };
                Ok(EvalResult::new(value, f64::NAN, EvalMethod::Asymptotic))
            }
            _ => {
                let cdf = self.cdf(z, method)?;
                Ok(EvalResult::new(
                    0.5 - (cdf.value - 0.5),
                    cdf.abs_err_estimate,
                    cdf.method,
                ))
            }
        }
    }

    /// ln P(Z > z) for z > 0. For N ≥ 1 this is the logarithm of the kernel
    /// survival; for N = 0 the tail is stretched-exponentially small, so it
    /// integrates the log-density in shifted (Laplace) form.
    pub fn log_sf(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::DomainError(format!("log_sf needs z > 0, got {z}")));
        }
        if self.params.n() >= 1 {
            let sf = self.sf(z, Method::Auto)?;
            if sf.value <= 0.0 {
                return Err(Error::ConvergenceFailure(format!(
                    "survival underflow at z = {z}"
                )));
            }
            return Ok(sf.value.ln());
        }
        // Laplace form: ∫_z^∞ f = z·∫_1^W exp(ln f(zw)) dw with the value at
        // the left endpoint factored out. The integrand's decay length in w
        // is 1/K with K = −d ln f/d ln z at z, which grows like z^{2/M}; the
        // grid must live on that scale or the peak falls between nodes.
        let shift = self.log_pdf(z)?;
        let delta = 1.0 / 1024.0;
        let k_rate = ((shift - self.log_pdf(z * (1.0 + delta))?) / delta).max(1.0);
        let mut w_hi = 1.0 + 48.0 / k_rate;
        let mut grow = 0;
        while self.log_pdf(z * w_hi)? - shift > -42.0 {
            w_hi = 1.0 + (w_hi - 1.0) * 2.0;
            grow += 1;
            if grow > 60 {
                return Err(Error::QuadratureFailure(
                    "survival integrand does not decay".into(),
                ));
            }
        }
        let g = |w: f64| (self.log_pdf(z * w).unwrap_or(f64::NEG_INFINITY) - shift).exp();
        let n_seg = 24usize;
        let pts: Vec<f64> = (0..=n_seg)
            .map(|i| 1.0 + (w_hi - 1.0) * i as f64 / n_seg as f64)
            .collect();
        let quad = crate::quad::adaptive(&g, &pts, 1e-13, 1e-10, 200_000)?;
        Ok(shift + z.ln() + quad.value.ln())
    }

    /// Characteristic function φ_Z(t): real, even, φ(0) = 1.
    pub fn cf(&self, t: f64) -> Result<EvalResult> {
        if !t.is_finite() {
            return Err(Error::NonFiniteInput(t));
        }
        if t == 0.0 {
            return Ok(EvalResult::new(1.0, 0.0, EvalMethod::ClosedForm));
        }
        let y = (t / (2.0 * self.params.lambda())).powi(2);
        let kernel = self.cf_kernel.eval(y, &self.opts)?;
        Ok(EvalResult::new(
            self.cf_prefactor * kernel.value,
            self.cf_prefactor * kernel.abs_err_estimate,
            kernel.method,
        ))
    }

    /// Quantile Q(p): the unique z with F_Z(z) = p. Q(1/2) = 0 exactly, and
    /// Q(1−p) = −Q(p) by computing only the lower branch.
    pub fn quantile(&self, p: f64) -> Result<EvalResult> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::OutOfRangeP(p));
        }
        if p == 0.5 {
            return Ok(EvalResult::new(0.0, 0.0, EvalMethod::ClosedForm));
        }
        if p > 0.5 {
            let lower = self.quantile_lower(1.0 - p)?;
            return Ok(EvalResult::new(
                -lower.value,
                lower.abs_err_estimate,
                lower.method,
            ));
        }
        self.quantile_lower(p)
    }

    /// Solves sf(y) = p for y > 0 and returns z = −y (the lower branch).
    fn quantile_lower(&self, p: f64) -> Result<EvalResult> {
        let surv = |y: f64| -> Result<f64> { Ok(self.sf(y, Method::Auto)?.value) };
        // Bracket [lo, hi] with sf(lo) > p > sf(hi); the asymptotic quantile
        // seeds the extreme-p bracket.
        let (mut lo, mut hi);
        if p < 0.05 {
            let seed = -asym::quantile_asym(&self.params, p)?;
            lo = seed / 4.0;
            hi = seed * 4.0;
            let mut grow = 0;
            while surv(lo)? < p {
                lo /= 4.0;
                grow += 1;
                if grow > 60 {
                    return Err(Error::ConvergenceFailure("bracket search (lo)".into()));
                }
            }
            grow = 0;
            while surv(hi)? > p {
                hi *= 4.0;
                grow += 1;
                if grow > 60 {
                    return Err(Error::ConvergenceFailure("bracket search (hi)".into()));
                }
            }
        } else {
            lo = 0.0;
            hi = 1.0 / self.params.lambda();
            let mut grow = 0;
            while surv(hi)? > p {
                hi *= 4.0;
                grow += 1;
                if grow > 60 {
                    return Err(Error::ConvergenceFailure("bracket search".into()));
                }
            }
        }
        let mut iters = 0usize;
        // Bisection down to a relative width, then Newton with the density.
        while hi - lo > QUANTILE_BISECT_WIDTH * hi.abs().max(1.0) && iters < QUANTILE_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if surv(mid)? > p {
                lo = mid;
            } else {
                hi = mid;
            }
            iters += 1;
        }
        let mut y = 0.5 * (lo + hi);
        let mut residual = surv(y)? - p;
        while iters < QUANTILE_MAX_ITER {
            if residual.abs() <= QUANTILE_RESIDUAL * 1e-2 * p.max(1e-3) {
                break;
            }
            let density = self.pdf(y, Method::Auto)?.value;
            let step = if density > 0.0 && density.is_finite() {
                residual / density
            } else {
                0.0
            };
            let mut next = y + step;
            if !(next > lo && next < hi) || step == 0.0 {
                next = 0.5 * (lo + hi);
            }
            let r_next = surv(next)? - p;
            if r_next > 0.0 {
                lo = next;
            } else {
                hi = next;
            }
            y = next;
            residual = r_next;
            iters += 1;
            if (hi - lo) <= 1e-14 * hi.abs() {
                break;
            }
        }
        residual = surv(y)? - p;
        if residual.abs() > QUANTILE_RESIDUAL {
            return Err(Error::ConvergenceFailure(format!(
                "quantile residual {residual:.3e} above {QUANTILE_RESIDUAL:.0e} at p = {p}"
            )));
        }
        let density = self.pdf(y, Method::Auto)?.value;
        let err = if density > 0.0 {
            residual.abs() / density
        } else {
            0.0
        };
        Ok(EvalResult::new(-y, err, EvalMethod::Contour))
    }

    /// Fractional absolute moment E|Z|^r:
    /// `2^{(M−N)r/2} σ_M^r s_N^{−r} π^{−(M+N)/2} Γ((r+1)/2)^M Γ((1−r)/2)^N`,
    /// finite for −1 < r < 1 (all r > −1 when N = 0; all r < 1 when M = 0).
    pub fn fractional_moment(&self, r: f64) -> Result<EvalResult> {
        if !r.is_finite() {
            return Err(Error::NonFiniteInput(r));
        }
        let (m, n) = (self.params.m(), self.params.n());
        let lower_ok = r > -1.0 || m == 0;
        let upper_ok = r < 1.0 || n == 0;
        if !(lower_ok && upper_ok) {
            return Err(Error::MomentUndefined(format!(
                "E|Z|^{r} diverges: the tail density decays like (ln|z|)^{{N-1}}/z^2 for \
                 N >= 1, so absolute moments of order >= 1 are infinite (the Cauchy mean \
                 is the M = N = 1 case); orders <= -1 fail on the matching near-zero \
                 singularity when M >= 1"
            )));
        }
        if r == 0.0 {
            return Ok(EvalResult::new(1.0, 0.0, EvalMethod::ClosedForm));
        }
        let (mf, nf) = (m as f64, n as f64);
        // Empty gamma powers stay away from lgamma: the admissible r range
        // only keeps both arguments positive when the exponent is nonzero.
        let mut log_value = (mf - nf) * r / 2.0 * std::f64::consts::LN_2
            + r * (self.params.sigma_prod().ln() - self.params.s_prod().ln())
            - (mf + nf) / 2.0 * PI.ln();
        if m > 0 {
            log_value += mf * crate::specfun::lgamma_real((r + 1.0) / 2.0);
        }
        if n > 0 {
            log_value += nf * crate::specfun::lgamma_real((1.0 - r) / 2.0);
        }
        let value = log_value.exp();
        Ok(EvalResult::new(
            value,
            1e-14 * value.abs() * (mf + nf),
            EvalMethod::ClosedForm,
        ))
    }

    /// Density shape: one central mode for M ≥ 1, two symmetric off-center
    /// modes for M = 0.
    pub fn shape(&self) -> Shape {
        if self.params.m() >= 1 {
            Shape::UnimodalAtZero
        } else {
            Shape::BimodalSymmetric
        }
    }

    /// Seeded reproducible draws of Z.
    pub fn sample(&self, count: usize, seed: u64) -> SampleBatch {
        self.sample_with_threads(count, seed, 1)
    }

    /// Same stream as [`NormalRatio::sample`], generated by `threads` workers:
    /// chunk k always comes from the substream seeded by (seed, k), so the
    /// output is bit-identical for every thread count.
    pub fn sample_with_threads(&self, count: usize, seed: u64, threads: usize) -> SampleBatch {
        assert!(count >= 1, "need at least one draw");
        let mut values = vec![0.0f64; count];
        let threads = threads.max(1);
        let params = &self.params;
        let fill_chunk = |chunk_idx: usize, out: &mut [f64]| {
            let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(seed, chunk_idx as u64));
            for v in out.iter_mut() {
                let mut num = 1.0f64;
                for &s in params.sigma_x() {
                    let g: f64 = rng.sample(StandardNormal);
                    num *= s * g;
                }
                // A denominator that lands exactly on floating zero is
                // redrawn (probability-zero event).
                let mut den = 0.0f64;
                while den == 0.0 {
                    den = 1.0;
                    for &s in params.sigma_y() {
                        let g: f64 = rng.sample(StandardNormal);
                        den *= s * g;
                    }
                }
                *v = num / den;
            }
        };
        if threads == 1 {
            for (chunk_idx, out) in values.chunks_mut(SAMPLE_CHUNK).enumerate() {
                fill_chunk(chunk_idx, out);
            }
        } else {
            let chunks: Vec<(usize, &mut [f64])> =
                values.chunks_mut(SAMPLE_CHUNK).enumerate().collect();
            std::thread::scope(|scope| {
                let mut work = chunks;
                let mut handles = Vec::new();
                while !work.is_empty() {
                    let take = work.len().min(threads);
                    let batch: Vec<(usize, &mut [f64])> = work.drain(..take).collect();
                    for (chunk_idx, out) in batch {
                        let fill = &fill_chunk;
                        handles.push(scope.spawn(move || fill(chunk_idx, out)));
                    }
                }
                for h in handles {
                    h.join().expect("sampling worker panicked");
                }
            });
        }
        SampleBatch {
            values,
            seed,
            params: self.params.clone(),
        }
    }

    /// Density value for quadrature consumers: kernel tolerances two decades
    /// looser than the default (the outer quadrature has its own error
    /// control), NaN on failure. Unlike the public `Auto` route it keeps the
    /// exact kernel arbitrarily close to the origin — the residue tables
    /// cost nothing there and the near-zero law's O(1/ln z) error would leak
    /// into high-accuracy mass integrals.
    pub(crate) fn pdf_value_loose(&self, z: f64) -> f64 {
        const LOOSE: EvalOptions = EvalOptions {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        };
        let scaled = self.params.lambda() * z.abs();
        if scaled > AUTO_LARGE {
            return self
                .pdf(z, Method::Asymptotic)
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
        }
        match self.pdf_kernel.eval(scaled * scaled, &LOOSE) {
            Ok(k) => self.pdf_prefactor * k.value,
            Err(_) => f64::NAN,
        }
    }

    /// ∫₀^a f_Z (a > 0) by adaptive quadrature of the general-route density:
    /// a log-substituted panel tames the near-zero logarithmic singularity,
    /// and the sliver below ε completes analytically from the near-zero law.
    pub(crate) fn pdf_mass(&self, a: f64) -> Result<EvalResult> {
        debug_assert!(a > 0.0);
        let lambda = self.params.lambda();
        let z1 = (0.5 / lambda).min(a);
        let m = self.params.m();
        let eps = if m >= 1 {
            z1 * 1e-12
        } else {
            // M = 0: the density is exp(−N/(2(s_N z)^{2/N}))-small, so below
            // this floor it contributes < 1e-280 and need not be sampled.
            let n = self.params.n() as f64;
            (z1 * 1e-12).max(0.9 / self.params.s_prod() * (n / 1300.0).powf(n / 2.0))
        }
        .min(0.5 * z1);
        // ∫₀^ε: for M ≥ 1 the density is ~ C(−ln z)^{M−1}/(M−1)! with
        // ∫₀^ε(−ln z)^j dz = ε·Σ_{i≤j} (j!/i!)(−ln ε)^i; for M = 0 the mass
        // below ε is beyond-all-orders small.
        let completion = if m >= 1 {
            let c = 2f64.powf((m as f64 + self.params.n() as f64 - 2.0) / 2.0)
                * self.params.s_prod()
                / (PI.powf((m as f64 + self.params.n() as f64) / 2.0)
                    * self.params.sigma_prod());
            let l = -eps.ln();
            let mut sum = 0.0;
            let mut pow = 1.0;
            let mut fact = 1.0;
            for i in 0..m {
                if i > 0 {
                    pow *= l;
                    fact *= i as f64;
                }
                sum += pow / fact;
            }
            c * eps * sum
        } else {
            0.0
        };
        let f = |z: f64| self.pdf_value_loose(z);
        // Log panel over [ε, z₁].
        let g = |u: f64| {
            let z = u.exp();
            f(z) * z
        };
        let n_log = 32usize;
        let (u0, u1) = (eps.ln(), z1.ln());
        let pts: Vec<f64> = (0..=n_log)
            .map(|i| u0 + (u1 - u0) * i as f64 / n_log as f64)
            .collect();
        let log_part = crate::quad::adaptive(&g, &pts, 1e-8, 3e-8, 100_000)?;
        // Geometric panels over [z₁, a].
        let direct_part = if a > z1 {
            let n_seg = (((a / z1).ln().ceil().max(2.0) as usize).min(256)) * 2;
            let ratio = (a / z1).powf(1.0 / n_seg as f64);
            let mut pts = Vec::with_capacity(n_seg + 1);
            let mut zp = z1;
            for _ in 0..n_seg {
                pts.push(zp);
                zp *= ratio;
            }
            pts.push(a);
            crate::quad::adaptive(&f, &pts, 1e-8, 3e-8, 150_000)?
        } else {
            crate::quad::Quad {
                value: 0.0,
                abs_err: 0.0,
                resabs: 0.0,
                evals: 0,
            }
        };
        Ok(EvalResult::new(
            completion + log_part.value + direct_part.value,
            completion * 0.1 + log_part.abs_err + direct_part.abs_err,
            EvalMethod::Quadrature,
        ))
    }
}

/// Free-function mirrors of the method surface, for one-shot use.
pub fn pdf(params: &DistParams, z: f64, method: Method) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).pdf(z, method)
}

pub fn cdf(params: &DistParams, z: f64, method: Method) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).cdf(z, method)
}

pub fn sf(params: &DistParams, z: f64, method: Method) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).sf(z, method)
}

pub fn cf(params: &DistParams, t: f64) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).cf(t)
}

pub fn quantile(params: &DistParams, p: f64) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).quantile(p)
}

pub fn fractional_moment(params: &DistParams, r: f64) -> Result<EvalResult> {
    NormalRatio::new(params.clone()).fractional_moment(r)
}

pub fn sample(params: &DistParams, count: usize, seed: u64) -> SampleBatch {
    NormalRatio::new(params.clone()).sample(count, seed)
}

pub fn shape(params: &DistParams) -> Shape {
    NormalRatio::new(params.clone()).shape()
}
