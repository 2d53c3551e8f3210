//! How fast the exact density, survival and quantile approach their
//! asymptotic laws, decade by decade.

use normratio::verify;
use normratio::DistParams;

fn main() {
    for (m, n) in [(1usize, 1usize), (2, 1), (0, 2), (2, 2)] {
        let params = DistParams::unit(m, n).unwrap();
        println!("(M,N)=({m},{n})");
        println!("  density tail   ratio by decade: {:?}", verify::tail_trend(&params).unwrap());
        println!("  survival tail  ratio by decade: {:?}", verify::sf_trend(&params).unwrap());
        println!("  density near 0 ratio by decade: {:?}", verify::near_zero_trend(&params).unwrap());
        println!("  quantile       ratio by decade: {:?}", verify::quantile_trend(&params).unwrap());
    }
}
