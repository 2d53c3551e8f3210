//! Every special-case closed form against the general contour route: the
//! worst relative deviation over a log grid of arguments.

use normratio::closed::ClosedOp;
use normratio::verify::{equivalence_sweep, log_grid};
use normratio::DistParams;

fn main() {
    let z_grid = log_grid(1e-3, 1e3, 50);
    let t_grid = log_grid(0.1, 5.0, 50);
    let cases: &[(usize, usize, ClosedOp)] = &[
        (2, 0, ClosedOp::Pdf),
        (0, 1, ClosedOp::Pdf),
        (0, 1, ClosedOp::Cf),
        (0, 2, ClosedOp::Pdf),
        (0, 2, ClosedOp::Cdf),
        (2, 2, ClosedOp::Pdf),
        (2, 2, ClosedOp::Cdf),
        (3, 3, ClosedOp::Pdf),
        (2, 1, ClosedOp::Pdf),
        (2, 1, ClosedOp::Cf),
        (1, 2, ClosedOp::Pdf),
        (3, 1, ClosedOp::Cf),
    ];
    println!("{:>8} {:>6} {:>14}", "(M,N)", "op", "max rel dev");
    for &(m, n, op) in cases {
        let grid = if op == ClosedOp::Cf { &t_grid } else { &z_grid };
        let dev = equivalence_sweep(&DistParams::unit(m, n).unwrap(), op, grid).unwrap();
        println!("{:>8} {:>6} {dev:>14.3e}", format!("({m},{n})"), format!("{op:?}"));
    }
}
