//! Direct use of the restricted Meijer G evaluator: known reductions and the
//! identities connecting inverted, shifted and reduced parameter sets.

use normratio::meijer::{eval_g, eval_g_contour, eval_g_residue, MeijerSpec};

fn main() {
    // G^{1,0}_{0,1}(x | -; 0) = e^{-x}: the single-gamma Mellin pair.
    let exp_spec = MeijerSpec::new(1, 0, vec![], vec![0.0], -0.5).unwrap();
    let g = eval_g(&exp_spec, 1.0).unwrap();
    println!("G^(1,0)_(0,1)(1) = {:.15}  (e^-1 = {:.15})", g.value, (-1.0f64).exp());

    // G^{1,1}_{1,1}(x | 0; 0) = 1/(1+x), through two different code paths.
    let cauchy_spec = MeijerSpec::new(1, 1, vec![0.0], vec![0.0], -0.5).unwrap();
    let by_contour = eval_g_contour(&cauchy_spec, 0.2).unwrap().value;
    let by_series = eval_g_residue(&cauchy_spec, 0.2).unwrap().value;
    println!("contour {by_contour:.15} vs residue series {by_series:.15} vs 1/1.2 = {:.15}", 1.0 / 1.2);

    // Argument inversion swaps the pole families.
    let inv = cauchy_spec.invert();
    let lhs = eval_g(&cauchy_spec, 0.3).unwrap().value;
    let rhs = eval_g(&inv, 1.0 / 0.3).unwrap().value;
    println!("inversion identity gap: {:.2e}", (lhs - rhs).abs());

    // Parameter shift multiplies by x^alpha.
    let shifted = cauchy_spec.shifted(0.5).unwrap();
    let lhs = 0.7f64.sqrt() * eval_g(&cauchy_spec, 0.7).unwrap().value;
    let rhs = eval_g(&shifted, 0.7).unwrap().value;
    println!("shift identity gap:     {:.2e}", (lhs - rhs).abs());
}
