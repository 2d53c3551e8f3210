//! A full verification run with its machine-readable report.

use normratio::verify::{run_full_with, RunConfig};
use normratio::DistParams;

fn main() {
    let params = DistParams::new(2, 2, &[1.0, 1.0], &[1.0, 1.0]).unwrap();
    let report = run_full_with(
        &params,
        7,
        RunConfig {
            sample_size: 200_000,
            threads: 2,
        },
    )
    .unwrap();
    println!("{}", report.to_json());
    assert!(report.all_passed);
}
