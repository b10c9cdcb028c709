//! The localized form of the inradius bound: run the identical pipeline on
//! an open subset A ⊆ Ω. Taking A = Ω reproduces the global record exactly.

use num_complex::Complex64;

use inradius_lab::field::{synth, Recipe, RecipeTerm};
use inradius_lab::{verify_localized, verify_theorem, Domain, Grid, Symbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let sym = Symbol::laplacian(2);
    let recipe = Recipe(vec![
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 0, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0, c(0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 1, c(0.25, 0.0)),
    ]);
    let ef = synth(&sym, c(200.0, 0.0), &recipe).expect("synthesis");
    let dom = Domain::unit_box(2);
    let grid = Grid::new(dom.clone(), 1.0 / 256.0).unwrap();

    let global = verify_theorem(&ef, &dom, &grid).expect("global");
    println!("global record:    {}", global.to_json());

    let half = Domain::new_box(vec![0.0, 0.0], vec![0.5, 1.0]).unwrap();
    let local = verify_localized(&ef, &dom, &half, &grid).expect("localized");
    println!("A = left half:    {}", local.to_json());

    let quarter = Domain::new_box(vec![0.5, 0.5], vec![1.0, 1.0]).unwrap();
    let q = verify_localized(&ef, &dom, &quarter, &grid).expect("localized");
    println!("A = top-right:    {}", q.to_json());

    let same = verify_localized(&ef, &dom, &dom.clone(), &grid).expect("identity");
    println!("\nA = Ω reproduces the global record exactly: {}", same == global);
}
