//! Truncated power-series arithmetic for Laurent expansions of gamma-function
//! products around their poles.
//!
//! Every parameter this crate meets lives on the half-integer grid, so gamma
//! factors expand around integers and half-integers only. Regular points use
//! the polygamma Taylor series; poles factor as
//! `Γ(−k+η) = ((−1)^k/k!)·η⁻¹·exp(T(η))` with `T` built from ζ values and
//! partial harmonic sums, which keeps every coefficient exact to roundoff.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// ζ(2) … ζ(16).
const ZETA_TABLE: [f64; 15] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_370_0,
    1.017_343_061_984_449_1,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818_1,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308_0,
    1.000_122_713_347_578_5,
    1.000_061_248_135_058_7,
    1.000_030_588_236_307_0,
    1.000_015_282_259_408_7,
];

/// Riemann ζ(n) for integer n ≥ 2.
pub(crate) fn zeta(n: usize) -> f64 {
    debug_assert!(n >= 2);
    if n - 2 < ZETA_TABLE.len() {
        return ZETA_TABLE[n - 2];
    }
    // For n ≥ 17 a handful of direct terms reach full precision.
    let mut sum = 1.0;
    for k in 2..64u64 {
        let term = (k as f64).powi(-(n as i32));
        sum += term;
        if term < 1e-19 {
            break;
        }
    }
    sum
}

/// Truncated Taylor series c[0] + c[1]ε + … + c[len−1]ε^{len−1}.
#[derive(Clone, Debug)]
pub(crate) struct Series {
    pub c: Vec<f64>,
}

impl Series {
    pub fn one(len: usize) -> Self {
        let mut c = vec![0.0; len];
        c[0] = 1.0;
        Series { c }
    }

    pub fn from_coeffs(c: Vec<f64>) -> Self {
        Series { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let mut c = vec![0.0; len];
        for i in 0..len {
            for j in 0..=i {
                c[i] += self.c[j] * other.c[i - j];
            }
        }
        Series { c }
    }

    /// 1 / self, requires a nonzero constant term.
    pub fn recip(&self) -> Series {
        let len = self.len();
        let mut r = vec![0.0; len];
        r[0] = 1.0 / self.c[0];
        for k in 1..len {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * r[k - j];
            }
            r[k] = -acc / self.c[0];
        }
        Series { c: r }
    }

    /// exp(self) for a series with zero constant term.
    pub fn exp(&self) -> Series {
        debug_assert_eq!(self.c[0], 0.0);
        let len = self.len();
        let mut e = vec![0.0; len];
        e[0] = 1.0;
        for k in 1..len {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (j as f64) * self.c[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Series { c: e }
    }

    /// Substitute ε → −ε.
    pub fn flip(&self) -> Series {
        let mut c = self.c.clone();
        for (i, v) in c.iter_mut().enumerate() {
            if i % 2 == 1 {
                *v = -*v;
            }
        }
        Series { c }
    }
}

/// ψ^{(j)}(1) = −γ for j = 0, else (−1)^{j+1} j! ζ(j+1).
fn polygamma_at_one(j: usize) -> f64 {
    if j == 0 {
        return -EULER_GAMMA;
    }
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * factorial(j) * zeta(j + 1)
}

/// ψ^{(j)}(1/2) = −γ − 2 ln 2 for j = 0, else (−1)^{j+1} j! (2^{j+1} − 1) ζ(j+1).
fn polygamma_at_half(j: usize) -> f64 {
    if j == 0 {
        return -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
    }
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * factorial(j) * (2f64.powi(j as i32 + 1) - 1.0) * zeta(j + 1)
}

fn factorial(n: usize) -> f64 {
    let mut f = 1.0;
    for k in 2..=n {
        f *= k as f64;
    }
    f
}

/// ψ^{(j)}(α) for α on the half-integer grid, α not a nonpositive integer.
/// Walks the recurrence ψ^{(j)}(x+1) = ψ^{(j)}(x) + (−1)^j j! x^{−j−1} from
/// the closest tabulated base (1 or 1/2).
pub(crate) fn polygamma_half_grid(j: usize, alpha: f64) -> f64 {
    let two_a = (2.0 * alpha).round() as i64;
    debug_assert_eq!(2.0 * alpha, two_a as f64, "alpha must sit on the half grid");
    let on_integers = two_a % 2 == 0;
    debug_assert!(
        !(on_integers && two_a <= 0),
        "polygamma pole at alpha = {alpha}"
    );
    let base = if on_integers { 1.0 } else { 0.5 };
    let mut value = if on_integers {
        polygamma_at_one(j)
    } else {
        polygamma_at_half(j)
    };
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    let jf = factorial(j);
    if alpha >= base {
        let mut x = base;
        while x < alpha - 0.25 {
            value += sign * jf * x.powi(-(j as i32) - 1);
            x += 1.0;
        }
    } else {
        let mut x = base - 1.0;
        while x > alpha - 0.25 {
            value -= sign * jf * x.powi(-(j as i32) - 1);
            x -= 1.0;
        }
    }
    value
}

/// Γ(α) for α on the half-integer grid, α not a nonpositive integer.
pub(crate) fn gamma_half_grid(alpha: f64) -> f64 {
    let two_a = (2.0 * alpha).round() as i64;
    debug_assert_eq!(2.0 * alpha, two_a as f64);
    if two_a % 2 == 0 {
        let n = two_a / 2;
        debug_assert!(n >= 1, "gamma pole at {alpha}");
        let mut f = 1.0;
        for k in 2..n {
            f *= k as f64;
        }
        f
    } else {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut value = sqrt_pi; // Γ(1/2)
        if alpha > 0.5 {
            let mut x = 0.5;
            while x < alpha - 0.25 {
                value *= x;
                x += 1.0;
            }
        } else {
            let mut x = alpha;
            while x < 0.25 {
                value /= x;
                x += 1.0;
            }
        }
        value
    }
}

/// Laurent expansion of a gamma factor around an evaluation point:
/// `Γ(α + sign·ε) = coeff · ε^{pow} · series(ε)` with `series[0] = 1`.
pub(crate) struct GammaLaurent {
    pub pow: i32,
    pub coeff: f64,
    pub series: Series,
}

pub(crate) fn gamma_laurent(alpha: f64, sign: f64, len: usize) -> GammaLaurent {
    let two_a = (2.0 * alpha).round() as i64;
    debug_assert_eq!(2.0 * alpha, two_a as f64, "off the half grid: {alpha}");
    let is_pole = two_a % 2 == 0 && two_a <= 0;
    if is_pole {
        // Γ(−k+η) = ((−1)^k / k!) η⁻¹ exp(T(η)),
        // T(η) = (−γ + H_k) η + Σ_{j≥2} [(−1)^j ζ(j) + H_k^{(j)}] η^j / j.
        let k = (-two_a / 2) as usize;
        let mut t = vec![0.0; len];
        let mut harmonic = 0.0;
        for m in 1..=k {
            harmonic += 1.0 / m as f64;
        }
        if len > 1 {
            t[1] = -EULER_GAMMA + harmonic;
        }
        for (j, tj) in t.iter_mut().enumerate().skip(2) {
            let zsign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let mut hkj = 0.0;
            for m in 1..=k {
                hkj += (m as f64).powi(-(j as i32));
            }
            *tj = (zsign * zeta(j) + hkj) / j as f64;
        }
        let e = Series::from_coeffs(t).exp();
        let e = if sign < 0.0 { e.flip() } else { e };
        let base = if k % 2 == 0 { 1.0 } else { -1.0 };
        GammaLaurent {
            pow: -1,
            // η⁻¹ = sign·ε⁻¹ because sign² = 1.
            coeff: sign * base / factorial(k),
            series: e,
        }
    } else {
        // Γ(α + η) = Γ(α) exp(Σ_{j≥1} ψ^{(j−1)}(α) η^j / j!).
        let mut t = vec![0.0; len];
        for (j, tj) in t.iter_mut().enumerate().skip(1) {
            *tj = polygamma_half_grid(j - 1, alpha) / factorial(j);
        }
        let e = Series::from_coeffs(t).exp();
        let e = if sign < 0.0 { e.flip() } else { e };
        GammaLaurent {
            pow: 0,
            coeff: gamma_half_grid(alpha),
            series: e,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{digamma, gamma_real, trigamma};
    use std::f64::consts::PI;

    #[test]
    fn zeta_values_match_euler_maclaurin_oracle() {
        // Independent oracle: Σ_{k<K} k^{-s} + K^{1-s}/(s-1) + K^{-s}/2
        //   + s·K^{-s-1}/12 − s(s+1)(s+2)·K^{-s-3}/720.
        let oracle = |s: f64| {
            let kk = 50.0f64;
            let mut sum = 0.0;
            for k in 1..50 {
                sum += (k as f64).powf(-s);
            }
            sum + kk.powf(1.0 - s) / (s - 1.0) + 0.5 * kk.powf(-s)
                + s * kk.powf(-s - 1.0) / 12.0
                - s * (s + 1.0) * (s + 2.0) * kk.powf(-s - 3.0) / 720.0
        };
        for n in 2..=16 {
            let got = zeta(n);
            let want = oracle(n as f64);
            assert!(
                (got - want).abs() < 1e-13,
                "zeta({n}): {got} vs {want}"
            );
        }
        assert!((zeta(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(20) - 1.000_000_953_962_033_9).abs() < 1e-15);
    }

    #[test]
    fn series_exp_recip_roundtrip() {
        let s = Series::from_coeffs(vec![0.0, 0.3, -0.2, 0.05, 0.01, 0.0, 0.0, 0.0]);
        let e = s.exp();
        let back = e.recip();
        let again = back.recip();
        for i in 0..e.len() {
            assert!((again.c[i] - e.c[i]).abs() < 1e-14);
        }
        // exp(s)·exp(−s) = 1
        let mut neg = s.clone();
        for v in neg.c.iter_mut() {
            *v = -*v;
        }
        let prod = e.mul(&neg.exp());
        assert!((prod.c[0] - 1.0).abs() < 1e-15);
        for i in 1..prod.len() {
            assert!(prod.c[i].abs() < 1e-14, "i = {i}: {}", prod.c[i]);
        }
    }

    #[test]
    fn polygamma_matches_specfun() {
        for &a in &[0.5, 1.0, 1.5, 2.0, 3.5, 7.0] {
            assert!(
                (polygamma_half_grid(0, a) - digamma(a)).abs() < 1e-12,
                "digamma at {a}"
            );
            assert!(
                (polygamma_half_grid(1, a) - trigamma(a)).abs() < 1e-12,
                "trigamma at {a}"
            );
        }
        // Negative half-grid points through the recurrence.
        let a = -1.5;
        assert!((polygamma_half_grid(0, a) - digamma(a)).abs() < 1e-12);
    }

    #[test]
    fn gamma_half_grid_matches_specfun() {
        for &a in &[0.5, 1.0, 1.5, 2.0, 2.5, 6.0, 10.5] {
            assert!(
                (gamma_half_grid(a) - gamma_real(a)).abs() <= 1e-13 * gamma_real(a),
                "gamma at {a}"
            );
        }
        // Γ(−1/2) = −2√π, Γ(−3/2) = 4√π/3.
        assert!((gamma_half_grid(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((gamma_half_grid(-1.5) - 4.0 * PI.sqrt() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_laurent_regular_point_reproduces_taylor() {
        // Γ(1/2 + ε) against finite differences of gamma_real.
        let gl = gamma_laurent(0.5, 1.0, 6);
        assert_eq!(gl.pow, 0);
        let eps = 1e-3;
        let direct = gamma_real(0.5 + eps);
        let mut series_val = 0.0;
        for (i, &c) in gl.series.c.iter().enumerate() {
            series_val += c * eps.powi(i as i32);
        }
        assert!((gl.coeff * series_val - direct).abs() < 1e-12);
    }

    #[test]
    fn gamma_laurent_pole_reproduces_limit() {
        // Γ(−2 + η) ≈ (1/2)·η⁻¹·E(η); compare against gamma_real at η = 1e-4
        // via the reflection-free identity Γ(−2+η) = Γ(1+η)/(η(η−1)(η−2)).
        let gl = gamma_laurent(-2.0, 1.0, 8);
        assert_eq!(gl.pow, -1);
        assert!((gl.coeff - 0.5).abs() < 1e-15);
        let eta = 1e-4;
        let exact = gamma_real(1.0 + eta) / (eta * (eta - 1.0) * (eta - 2.0));
        let mut series_val = 0.0;
        for (i, &c) in gl.series.c.iter().enumerate() {
            series_val += c * eta.powi(i as i32);
        }
        let approx = gl.coeff / eta * series_val;
        assert!(
            (approx - exact).abs() <= 1e-10 * exact.abs(),
            "{approx} vs {exact}"
        );
        // And with the flipped argument direction Γ(−2 − ε).
        let gl_neg = gamma_laurent(-2.0, -1.0, 8);
        let exact_neg = gamma_real(1.0 - eta) / (-eta * (-eta - 1.0) * (-eta - 2.0));
        let mut sv = 0.0;
        for (i, &c) in gl_neg.series.c.iter().enumerate() {
            sv += c * eta.powi(i as i32);
        }
        let approx_neg = gl_neg.coeff / eta * sv;
        assert!(
            (approx_neg - exact_neg).abs() <= 1e-10 * exact_neg.abs(),
            "{approx_neg} vs {exact_neg}"
        );
    }
}
