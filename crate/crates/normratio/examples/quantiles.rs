//! Quantile evaluation: central, moderate, and deep-tail probabilities, with
//! round-trip residuals through the distribution function.

use normratio::{DistParams, Method, NormalRatio};

fn main() {
    let dist = NormalRatio::new(DistParams::unit(2, 2).unwrap());
    println!("{:>12} {:>20} {:>14}", "p", "Q(p)", "|F(Q)-p|");
    for p in [0.5, 0.75, 0.95, 0.999, 1e-4, 1e-7] {
        let q = dist.quantile(p).unwrap().value;
        let back = dist.cdf(q, Method::Auto).unwrap().value;
        println!("{p:>12} {q:>20.10e} {:>14.2e}", (back - p).abs());
    }
    // Branch symmetry: Q(1-p) = -Q(p) exactly.
    let a = dist.quantile(0.123).unwrap().value;
    let b = dist.quantile(0.877).unwrap().value;
    println!("\nQ(0.123) = {a:.12}, Q(0.877) = {b:.12}");
}
