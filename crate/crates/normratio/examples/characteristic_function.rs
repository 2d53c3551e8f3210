//! Characteristic functions across parameter counts, including the two cases
//! with elementary reductions: (2,1) via the incomplete gamma and (3,1) via
//! the arccos kernel.

use normratio::closed::{self, ClosedOp};
use normratio::{DistParams, NormalRatio};

fn main() {
    for (m, n) in [(1usize, 0usize), (1, 1), (2, 1), (3, 1), (0, 1)] {
        let params = DistParams::unit(m, n).unwrap();
        let dist = NormalRatio::new(params.clone());
        print!("(M,N)=({m},{n}): ");
        for t in [0.5, 1.0, 2.0] {
            print!(" phi({t}) = {:.10}", dist.cf(t).unwrap().value);
        }
        if let Some(case) = closed::match_case(&params).filter(|c| c.supports(ClosedOp::Cf)) {
            let general = dist.cf(1.0).unwrap().value;
            let reduced = closed::cf_closed(&case, &params, 1.0).unwrap();
            print!("  [closed-form gap {:.2e}]", (general - reduced).abs());
        }
        println!();
    }
}
