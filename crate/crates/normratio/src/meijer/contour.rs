//! Mellin–Barnes contour quadrature along vertical lines.
//!
//! The integrand is a product of gamma factors times `x^s` evaluated on
//! `Re(s) = c`. Conjugate symmetry reduces the line integral to
//! `(1/π)·Re ∫₀^∞ g(t) dt`; the gamma product decays like
//! `exp(−δ·π·t/2)` with `δ = 2(m+n) − p − q ≥ 1`, so the truncation point is
//! certified from the sampled envelope. Specs without right-hand poles
//! (`m = 0`) describe exponentially small values; for those the abscissa is
//! moved to the real saddle point, which removes the catastrophic
//! cancellation a fixed contour would suffer.

use num_complex::Complex64;

use crate::specfun::{digamma, log_gamma_unchecked, trigamma};
use crate::{Error, Result};

use super::EvalOptions;

/// Gamma-factor lists of a Mellin–Barnes integrand.
///
/// numerator: Γ(β − s) for β in `top_minus`, Γ(γ + s) for γ in `top_plus`;
/// denominator: Γ(α − s) for α in `bot_minus`, Γ(δ + s) for δ in `bot_plus`.
#[derive(Debug, Clone)]
pub(crate) struct Factors {
    pub top_minus: Vec<f64>,
    pub top_plus: Vec<f64>,
    pub bot_minus: Vec<f64>,
    pub bot_plus: Vec<f64>,
}

impl Factors {
    /// Exponential decay rate constant δ = 2(m+n) − (p+q): each numerator
    /// gamma contributes e^{−π|t|/2} along the line, each denominator gamma
    /// removes one such factor.
    pub fn decay(&self) -> f64 {
        (self.top_minus.len() + self.top_plus.len()) as f64
            - (self.bot_minus.len() + self.bot_plus.len()) as f64
    }

    /// Real part of the log-integrand at `c + it` (the decay envelope).
    pub(crate) fn envelope_at(&self, c: f64, t: f64, ln_x: f64) -> f64 {
        self.ln_integrand(Complex64::new(c, t), ln_x).re
    }

    fn ln_integrand(&self, s: Complex64, ln_x: f64) -> Complex64 {
        let mut acc = s * ln_x;
        for &b in &self.top_minus {
            acc += log_gamma_unchecked(Complex64::new(b, 0.0) - s);
        }
        for &c in &self.top_plus {
            acc += log_gamma_unchecked(Complex64::new(c, 0.0) + s);
        }
        for &a in &self.bot_minus {
            acc -= log_gamma_unchecked(Complex64::new(a, 0.0) - s);
        }
        for &d in &self.bot_plus {
            acc -= log_gamma_unchecked(Complex64::new(d, 0.0) + s);
        }
        acc
    }
}

/// Contour value in split form: `G = sign·exp(ln_scale)·mantissa/π` with the
/// error estimate in mantissa units.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ContourOut {
    pub mantissa: f64,
    pub ln_scale: f64,
    pub err_mantissa: f64,
}

impl ContourOut {
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    pub fn abs_err(&self) -> f64 {
        self.err_mantissa * self.ln_scale.exp()
    }

    /// (ln |G|, sign of G).
    pub fn ln_value(&self) -> (f64, f64) {
        (self.mantissa.abs().ln() + self.ln_scale, self.mantissa.signum())
    }

    pub fn rel_err(&self) -> f64 {
        self.err_mantissa / self.mantissa.abs().max(f64::MIN_POSITIVE)
    }
}

/// Integrates the Mellin–Barnes integrand along `Re(s) = c` for argument `x`
/// (as `ln x`). `width` rescales the envelope scan; `at_saddle` marks lines
/// through a stationary-phase point, where the gamma phases cancel the
/// `x^{it}` rotation near the peak — those skip the raw oscillation guard
/// and panel by decay scale alone.
pub(crate) fn integrate_line(
    factors: &Factors,
    c: f64,
    ln_x: f64,
    width: f64,
    at_saddle: bool,
    opts: &EvalOptions,
) -> Result<ContourOut> {
    let delta = factors.decay();
    debug_assert!(delta >= 1.0 - 1e-12, "integrand does not decay");

    // Envelope scan: find the peak magnitude and a truncation point T where
    // the envelope has fallen 18 decades below it.
    let env = |t: f64| factors.ln_integrand(Complex64::new(c, t), ln_x).re;
    let steps = [
        0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0,
        96.0, 128.0, 192.0, 256.0, 384.0, 512.0, 768.0, 1024.0,
    ];
    let mut peak = f64::NEG_INFINITY;
    let mut t_cut = None;
    let drop = 18.0 * std::f64::consts::LN_10;
    for &u in &steps {
        let t = u * width;
        let e = env(t);
        if e > peak {
            peak = e;
        }
        if e < peak - drop && u >= 1.0 {
            t_cut = Some(t);
            break;
        }
    }
    let t_max = match t_cut {
        Some(t) => t,
        None => {
            // Extend geometrically past the scan table.
            let mut t = 1024.0 * width;
            loop {
                t *= 1.5;
                let e = env(t);
                if e > peak {
                    peak = e;
                }
                if e < peak - drop {
                    break t;
                }
                if t > 1e9 * width {
                    return Err(Error::ContourFailure(
                        "integrand envelope does not decay".into(),
                    ));
                }
            }
        }
    };

    // Oscillation guard: x^{it} turns at frequency |ln x|.
    if !at_saddle && t_max * ln_x.abs() > 1e4 {
        return Err(Error::ContourFailure(format!(
            "oscillation budget exceeded: T·|ln x| = {:.3e}",
            t_max * ln_x.abs()
        )));
    }

    // Panels resolving both the oscillation and the decay scale; the
    // adaptive pass refines whatever structure this initial grid misses.
    let per_osc = if at_saddle {
        0.0
    } else {
        (t_max * ln_x.abs() / (2.0 * std::f64::consts::PI)).ceil()
    };
    let per_decay = (t_max / width / 2.0).ceil().max(6.0) * if at_saddle { 2.0 } else { 1.0 };
    let panels = (per_osc + per_decay).min(4000.0) as usize;
    let pts: Vec<f64> = (0..=panels)
        .map(|i| t_max * i as f64 / panels as f64)
        .collect();

    let g = |t: f64| {
        let v = factors.ln_integrand(Complex64::new(c, t), ln_x);
        ((v - peak).exp()).re
    };
    let quad = crate::quad::adaptive(&g, &pts, opts.abs_tol_scaled(peak), opts.rel_tol, 400_000)?;

    // Certified tail: beyond T the envelope is below exp(env(T)) and halves
    // at least every 2 ln 2/(π δ); bound by the geometric integral.
    let tail = (env(t_max) - peak).exp() * 2.0 / (std::f64::consts::PI * delta);
    // Cancellation noise floor.
    let noise = 4.0 * f64::EPSILON * quad.resabs;

    let err_mantissa = (quad.abs_err + tail + noise) / std::f64::consts::PI;
    let mantissa = quad.value / std::f64::consts::PI;
    Ok(ContourOut {
        mantissa,
        ln_scale: peak,
        err_mantissa,
    })
}

/// In-strip abscissa minimizing the real-axis integrand magnitude, by golden
/// section. The integrand blows up at both strip edges (gamma poles), so a
/// minimum exists inside; placing the line there keeps the quadrature scale
/// close to the value scale and suppresses cancellation when `x` is far
/// from 1.
pub(crate) fn optimal_abscissa(
    factors: &Factors,
    ln_x: f64,
    strip_lo: f64,
    strip_hi: f64,
) -> f64 {
    debug_assert!(strip_hi.is_finite());
    let margin = 1e-5;
    let lo = if strip_lo.is_finite() {
        strip_lo + margin
    } else {
        strip_hi - 200.0
    };
    let hi = strip_hi - margin;
    if !(lo < hi) {
        return 0.5 * (strip_lo + strip_hi);
    }
    let h = |c: f64| factors.ln_integrand(Complex64::new(c, 0.0), ln_x).re;
    let phi = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c1 = b - phi * (b - a);
    let mut c2 = a + phi * (b - a);
    let (mut h1, mut h2) = (h(c1), h(c2));
    // A near-optimal abscissa is all that matters; 1e-5 of the strip is
    // far below the tolerance floor of the quadrature that follows.
    for _ in 0..48 {
        if h1 < h2 {
            b = c2;
            c2 = c1;
            h2 = h1;
            c1 = b - phi * (b - a);
            h1 = h(c1);
        } else {
            a = c1;
            c1 = c2;
            h1 = h2;
            c2 = a + phi * (b - a);
            h2 = h(c2);
        }
        if (b - a).abs() < 1e-6 * (1.0 + b.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Real saddle abscissa for specs without right-hand poles (`m = 0`):
/// solves Σ ψ(γ + σ) = −ln x over the numerator's `Γ(γ + s)` factors.
pub(crate) fn saddle_abscissa(factors: &Factors, ln_x: f64) -> Result<f64> {
    debug_assert!(factors.top_minus.is_empty());
    if factors.top_plus.is_empty() {
        return Err(Error::ContourFailure(
            "no numerator factors to place a saddle".into(),
        ));
    }
    let lower = factors
        .top_plus
        .iter()
        .fold(f64::NEG_INFINITY, |acc, &c| acc.max(-c));
    let d = |sigma: f64| -> f64 {
        factors
            .top_plus
            .iter()
            .map(|&c| digamma(c + sigma))
            .sum::<f64>()
            + ln_x
    };
    // D is increasing from −∞ near the pole edge; bracket the root.
    let mut lo = lower + 1e-3;
    let mut hi = lower + 2.0;
    let mut expand = 0;
    while d(hi) < 0.0 {
        hi = lower + (hi - lower) * 4.0;
        expand += 1;
        if expand > 80 {
            return Err(Error::ContourFailure("saddle search diverged".into()));
        }
    }
    if d(lo) > 0.0 {
        return Ok(lo.max(lower + 0.25));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if d(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-6 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Gaussian half-width of the saddle bump, from the second derivative of the
/// log-integrand at the saddle.
pub(crate) fn saddle_width(factors: &Factors, sigma: f64) -> f64 {
    let curv: f64 = factors
        .top_plus
        .iter()
        .map(|&c| trigamma(c + sigma))
        .sum();
    (1.0 / curv.max(1e-300)).sqrt().max(1.0)
}
