//! Build an exact eigenfunction as a plane-wave superposition and check the
//! eigenequation residual pointwise.
//!
//! The recipe expands sin(πx₁)sin(πx₂) into four exponentials; the synthesis
//! solves P(ξ) = λ along each direction and verifies Hψ = λψ per term.

use num_complex::Complex64;

use inradius_lab::field::{synth, Recipe, RecipeTerm};
use inradius_lab::Symbol;

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

    println!("ψ = sin(πx₁)sin(πx₂) as {} plane waves, λ = 2π²", ef.terms().len());
    for (k, term) in ef.terms().iter().enumerate() {
        let xi: Vec<String> = term
            .frequency
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        println!("  term {k}: a = {:+.3}{:+.3}i, ξ = ({})", term.amplitude.re, term.amplitude.im, xi.join(", "));
    }
    println!("\n     x            ψ(x)              |Hψ−λψ|");
    for x in [[0.5, 0.5], [0.25, 0.75], [0.1, 0.9], [0.333, 0.667]] {
        let v = ef.eval(&x);
        let r = ef.residual(&x).unwrap();
        println!("  {:?}   {:+.6} {:+.6}i   {r:.3e}", x, v.re, v.im);
    }

    // a complex-frequency solution of the same equation: a single term with
    // P(ξ) = λ along a complex direction; |ψ| is then a pure exponential
    let one_term = Recipe(vec![RecipeTerm::new(vec![c(0.0, 1.0), c(2.0, 0.0)], 0, c(1.0, 0.0))]);
    let decaying = synth(&sym, lambda, &one_term).expect("synthesis");
    let xi: Vec<String> = decaying.terms()[0]
        .frequency
        .iter()
        .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
        .collect();
    println!("\ncomplex-frequency solution (never zero): ξ = ({})", xi.join(", "));
    for x in [[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]] {
        println!("  |ψ({:?})| = {:.6}", x, decaying.eval(&x).norm());
    }
}
