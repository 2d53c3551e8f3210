//! Density, distribution and survival values for Z = X1·X2/Y1, the simplest
//! case with both a product and a ratio component.

use normratio::{DistParams, Method, NormalRatio};

fn main() {
    let params = DistParams::new(2, 1, &[1.0, 1.0], &[1.0]).unwrap();
    let dist = NormalRatio::new(params);
    println!("{:>10} {:>18} {:>18} {:>18} {:>14}", "z", "pdf", "cdf", "sf", "method");
    for z in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 25.0, 200.0] {
        let pdf = dist.pdf(z, Method::Auto).unwrap();
        let cdf = dist.cdf(z, Method::Auto).unwrap();
        let sf = dist.sf(z, Method::Auto).unwrap();
        println!(
            "{z:>10.3} {:>18.12} {:>18.12} {:>18.12} {:>14}",
            pdf.value, cdf.value, sf.value, pdf.method
        );
    }
    // The density has an integrable logarithmic singularity at the origin.
    println!("\npdf(0) = {}", dist.pdf(0.0, Method::Auto).unwrap().value);
}
