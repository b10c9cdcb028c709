//! Step through the whole constructive pipeline on one field: good ball,
//! unit rescaling, amplitude point, Lipschitz ball, and the mapped-back
//! certified inradius with its effective constant.

use num_complex::Complex64;

use inradius_lab::field::{synth, Recipe, RecipeTerm};
use inradius_lab::harness::ProofOutcome;
use inradius_lab::{run_proof_pipeline, Domain, Grid, Symbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let sym = Symbol::laplacian(2);
    let pi = std::f64::consts::PI;
    let lambda = c(2.0 * pi * pi, 0.0);
    let recipe = Recipe(vec![
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 0, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0, c(0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 1, c(0.25, 0.0)),
    ]);
    let ef = synth(&sym, lambda, &recipe).expect("synthesis");
    let dom = Domain::unit_box(2);
    let grid = Grid::new(dom.clone(), 1.0 / 256.0).unwrap();

    println!("field: sin(πx₁)sin(πx₂), λ = 2π² ≈ {:.3}", lambda.re);
    match run_proof_pipeline(&ef, &dom, &grid).expect("pipeline") {
        ProofOutcome::Trivial => println!("interior mass vanishes: the bound is trivial"),
        ProofOutcome::Run(run) => {
            println!("wavelength scale r = |λ|^(-1/2) = {:.5}\n", run.r);
            println!("step 1 — good ball:");
            println!("  center x₀ = {:?}", run.good_ball.center);
            println!(
                "  inner/outer mass ratio {:.4} ≥ guarantee {:.6}",
                run.good_ball.ratio, run.good_ball.guarantee
            );
            println!("step 2 — rescale to B(0,1):");
            println!("  μ = {:.6} {:+.6}i, |μ| = {:.12}", run.mu.re, run.mu.im, run.mu.norm());
            println!("step 3 — amplitude point:");
            println!("  y₀ = {:?}", run.amplitude_point);
            println!("  |u(y₀)| = {:.5} ≥ bound {:.5}", run.amplitude, run.amp_bound);
            println!("step 4 — Lipschitz ball:");
            println!("  sup|∇u| over B(0,3/4) ≤ {:.4}", run.l_emp);
            println!("  ρ₀ = min(|u(y₀)|/2L, 1/4) = {:.5}", run.rho0);
            println!("\nmapped back:");
            println!("  constructive inradius r·ρ₀ = {:.6}", run.constructive_inradius);
            println!("  ball center = {:?}", run.ball_center);
            println!("  effective constant ρ₀/√(M/N) = {:.4}", run.constructive_constant);
            run.verify_dense(10_000, 1).expect("dense nonvanishing check");
            println!("  ball verified nonvanishing at 10000 random points");
        }
    }
}
