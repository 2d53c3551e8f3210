//! The unit Cauchy distribution is the M = N = 1 case: every general-route
//! quantity must reproduce the elementary closed forms.

use std::f64::consts::PI;

use normratio::{DistParams, Method, NormalRatio};

fn main() {
    let dist = NormalRatio::new(DistParams::new(1, 1, &[1.0], &[1.0]).unwrap());
    println!("{:>8} {:>22} {:>22} {:>12}", "z", "pdf (general)", "pdf (analytic)", "rel diff");
    for z in [0.0, 0.5, 1.0, 2.0, 10.0, -3.0] {
        let general = dist.pdf(z, Method::Auto).unwrap().value;
        let analytic = 1.0 / (PI * (1.0 + z * z));
        println!(
            "{z:>8.2} {general:>22.16} {analytic:>22.16} {:>12.2e}",
            (general - analytic).abs() / analytic
        );
    }
    println!();
    for p in [0.75, 0.9, 0.99, 0.001] {
        let q = dist.quantile(p).unwrap().value;
        let analytic = (PI * (p - 0.5)).tan();
        println!("Q({p}) = {q:.12}  (tan form {analytic:.12})");
    }
    let phi = dist.cf(1.0).unwrap().value;
    println!("\ncf(1) = {phi:.15}  (e^-1 = {:.15})", (-1.0f64).exp());
}
