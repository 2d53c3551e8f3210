//! Cross-route consistency at the distribution level: the characteristic
//! function against direct cosine-transform quadrature of the density, CDF
//! monotonicity, kernel-vs-quadrature route agreement, and the exactness of
//! the bounded near-zero limit.

use std::f64::consts::PI;

use normratio::{asym, quad, DistParams, Method, NormalRatio};

fn unit(m: usize, n: usize) -> DistParams {
    DistParams::unit(m, n).unwrap()
}

/// φ(t) must match 2∫₀^∞ cos(tz) f(z) dz. The body integrates to W; beyond
/// W two integration-by-parts boundary terms of the tail law complete the
/// oscillatory remainder to O(|g''|/t²).
#[test]
fn characteristic_function_matches_cosine_transform() {
    for total in 1..=4usize {
        for m in 0..=total {
            let n = total - m;
            let params = unit(m, n);
            let dist = NormalRatio::new(params.clone());
            let lambda = params.lambda();
            let w = if n >= 3 {
                1200.0 / lambda
            } else if n >= 1 {
                300.0 / lambda
            } else {
                params.sigma_prod() * (120.0 / m as f64).powf(m as f64 / 2.0)
            };
            for &t in &[0.5, 1.0, 2.0] {
                let f = |z: f64| {
                    let pdf = dist.pdf(z, Method::Auto).map(|r| r.value);
                    (t * z).cos() * pdf.unwrap_or(f64::NAN)
                };
                // Panels sized to the oscillation; near-zero log panel for
                // the singular densities.
                let z1 = (0.5 / lambda).min(w);
                let g = |u: f64| {
                    let z = u.exp();
                    f(z) * z
                };
                let pts: Vec<f64> = (0..=24)
                    .map(|i| (z1 * 1e-10).ln() + (z1.ln() - (z1 * 1e-10).ln()) * i as f64 / 24.0)
                    .collect();
                let near = quad::adaptive(&g, &pts, 1e-9, 1e-8, 100_000).unwrap().value;
                let n_seg = ((w - z1) * t / PI).ceil().max(32.0).min(3000.0) as usize;
                let pts: Vec<f64> = (0..=n_seg)
                    .map(|i| z1 + (w - z1) * i as f64 / n_seg as f64)
                    .collect();
                let far = quad::adaptive(&f, &pts, 1e-9, 1e-8, 400_000).unwrap().value;
                // Boundary completion from the tail law g(z) ~ C(ln z)^{N−1}/z²:
                // ∫_W^∞ cos(tz) g dz = −sin(tW)g(W)/t − cos(tW)g′(W)/t² + O(∫|g″|/t²).
                let completion = if n >= 1 {
                    // Leading boundary term uses the exact density (the law
                    // is still ~1/ln W off at the window edge); the t⁻² term
                    // may use the law's derivative.
                    let g_w = dist.pdf(w, Method::Meijer).unwrap().value;
                    let c = asym::tail_constant(&params);
                    let lw = w.ln();
                    let g_prime = c
                        * ((n as f64 - 1.0) * lw.powi(n as i32 - 2) - 2.0 * lw.powi(n as i32 - 1))
                        / (w * w * w);
                    -(t * w).sin() * g_w / t - (t * w).cos() * g_prime / (t * t)
                } else {
                    0.0
                };
                let transform = 2.0 * (near + far + completion);
                let phi = dist.cf(t).unwrap().value;
                assert!(
                    (phi - transform).abs() <= 1e-4,
                    "(M,N)=({m},{n}) t={t}: cf {phi} vs transform {transform}"
                );
            }
        }
    }
}

#[test]
fn cdf_is_nondecreasing_on_a_wide_grid() {
    for (m, n) in [(1usize, 1usize), (2, 1), (0, 2), (3, 2)] {
        let params = unit(m, n);
        let dist = NormalRatio::new(params.clone());
        let lambda = params.lambda();
        // 10³ points spanning [−10⁴/λ, 10⁴/λ], dense near the origin.
        let mut grid = Vec::with_capacity(1000);
        for i in 0..500 {
            let mag = 1e4 / lambda * 10f64.powf(-8.0 * (499 - i) as f64 / 499.0);
            grid.push(-mag);
        }
        for i in 0..500 {
            let mag = 1e4 / lambda * 10f64.powf(-8.0 * i as f64 / 499.0);
            grid.push(mag);
        }
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut prev = -1.0f64;
        for &z in &grid {
            let f = dist.cdf(z, Method::Auto).unwrap().value;
            assert!(
                f >= prev - 1e-12,
                "(M,N)=({m},{n}): cdf decreased at z = {z}: {f} < {prev}"
            );
            prev = f;
        }
    }
}

#[test]
fn kernel_and_quadrature_cdf_routes_agree_across_scales() {
    for (m, n) in [(1usize, 1usize), (2, 2), (1, 2)] {
        let params = unit(m, n);
        let dist = NormalRatio::new(params.clone());
        let lambda = params.lambda();
        for &scaled in &[1e-3, 1e-2, 0.1, 0.7, 1.0, 5.0, 1e2, 1e3] {
            let z = scaled / lambda;
            let a = dist.cdf(z, Method::Auto).unwrap().value;
            let b = dist.cdf(z, Method::Quadrature).unwrap().value;
            assert!(
                (a - b).abs() <= 1e-7,
                "(M,N)=({m},{n}) λz={scaled}: kernel {a} vs quadrature {b}"
            );
        }
    }
}

/// With a single numerator factor the near-zero law is argument-free and
/// must equal the exact bounded density limit at the origin.
#[test]
fn near_zero_law_is_exact_for_single_numerator_factor() {
    for n in 0..=3usize {
        let params = unit(1, n);
        let law = asym::pdf_near_zero(&params, 1e-9).unwrap();
        let center = NormalRatio::new(params).pdf(0.0, Method::Auto).unwrap().value;
        assert!(
            (law - center).abs() <= 1e-8 * center,
            "N={n}: law {law} vs center {center}"
        );
    }
}
