//! Estimate the uniform interior Lipschitz constant empirically: the running
//! max of sup_{B(0,3/4)} |∇u| over random normalized solutions Hu = μu with
//! 1 ≤ |μ| ≤ 2. A plateau (second half ≈ first half) indicates uniform
//! boundedness; divergence would falsify it.

use inradius_lab::{estimate_uniform_lipschitz, Symbol};

fn main() {
    let sym = Symbol::laplacian(2);
    println!("Laplacian d=2, grid h = 1/48 on the unit ball\n");
    println!("  samples   L_hat     first half   second half");
    for samples in [16usize, 64, 256] {
        let est = estimate_uniform_lipschitz(&sym, samples, 7, 1.0 / 48.0).expect("estimator");
        println!(
            "  {samples:>6}    {:.4}    {:.4}       {:.4}",
            est.l_hat, est.first_half_max, est.second_half_max
        );
    }
    println!("\nsingle plane wave at μ = 1 has sup|∇u| = 1/√vol(B(0,1)) = 1/√π ≈ 0.5642;");
    println!("superpositions push the constant higher but the running max plateaus.");
}
