//! Fractional absolute moments: the closed product-of-gammas formula against
//! direct quadrature, and the divergence outside the admissible order range.

use normratio::verify;
use normratio::{DistParams, NormalRatio};

fn main() {
    let params = DistParams::unit(1, 1).unwrap();
    let dist = NormalRatio::new(params.clone());
    println!("E|Z|^r for the unit Cauchy:");
    for r in [-0.5, 0.0, 0.25, 0.5, 0.9] {
        let v = dist.fractional_moment(r).unwrap().value;
        let dev = if r == 0.0 { 0.0 } else { verify::moment_consistency(&params, r).unwrap() };
        println!("  r = {r:>5}: {v:.12}   (vs quadrature: {dev:.2e})");
    }
    // The mean does not exist: the tail decays like 1/z².
    match dist.fractional_moment(1.0) {
        Err(e) => println!("\nr = 1: {e}"),
        Ok(_) => unreachable!(),
    }
}
