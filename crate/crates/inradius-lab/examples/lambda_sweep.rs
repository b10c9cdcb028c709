//! Sweep the spectral parameter and verify the scale-invariant inradius
//! inequality at every λ. Prints the CSV that the `sweep` subcommand writes.

use inradius_lab::field::{Recipe, RecipeTerm};
use inradius_lab::harness::Family;
use inradius_lab::{sweep, Domain, SweepConfig, Symbol};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let recipe = Recipe(vec![
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 0, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0, c(0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 1, c(0.25, 0.0)),
    ]);
    let config = SweepConfig {
        domain: Domain::unit_box(2),
        symbol: Symbol::laplacian(2),
        lambda_moduli: vec![10.0, 100.0, 1000.0, 10000.0],
        lambda_phase: 0.0,
        family: Family::Fixed(recipe),
        h_policy: None, // r_λ/16, capped at 4·10⁶ cells
        tau_rel: 1e-6,
    };
    let result = sweep(&config).expect("sweep");
    print!("{}", result.to_csv());
    println!();
    println!("min Q over the sweep: {:.4} (positive = inequality verified)", result.min_q);
    println!("min effective constant c_min: {:.4}", result.c_min);
    println!(
        "ordering constructive ≤ certified + 2h ≤ measured + 4h holds on all {} records",
        result.records.len()
    );
}
