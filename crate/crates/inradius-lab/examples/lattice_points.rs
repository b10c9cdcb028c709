//! Counting integer frequencies nearly resonant with λ:
//! N_λ = #{ξ ∈ ℤ^d : |P(ξ)−λ| ≤ |ξ|^{m−1/2}}.
//!
//! The counter derives a finite enumeration radius from ellipticity and
//! checks an empty safety margin out to twice that radius. On any compact
//! set of λ the count stays bounded; the table below samples the annulus
//! 1 ≤ |μ| ≤ 2.

use num_complex::Complex64;

use inradius_lab::{count_lattice, Symbol};

fn main() {
    let sym = Symbol::laplacian(2);

    let res = count_lattice(&sym, Complex64::new(1.0, 0.0)).expect("count");
    println!("Laplacian d=2, λ = 1: N_λ = {} (R₁ = {:.2})", res.count, res.enumeration_radius);
    println!("  witnesses: {:?}", res.witnesses);

    println!("\nλ on the annulus 1 ≤ |μ| ≤ 2 (margin shell (R₁,2R₁] empty in every case):");
    println!("  |μ|   phase    N_μ");
    let mut max_count = 0;
    for i in 0..16 {
        let modulus = if i % 2 == 0 { 1.0 } else { 2.0 };
        let phase = std::f64::consts::TAU * (i as f64) / 16.0;
        let mu = Complex64::from_polar(modulus, phase);
        let res = count_lattice(&sym, mu).expect("count");
        println!("  {modulus:.0}    {phase:>6.3}   {}", res.count);
        max_count = max_count.max(res.count);
    }
    println!("  sup over the samples: {max_count}");

    // growing |λ| pulls more lattice points into resonance
    println!("\n  |λ|      N_λ    R₁");
    for modulus in [1.0, 10.0, 100.0, 1000.0] {
        let res = count_lattice(&sym, Complex64::new(modulus, 0.0)).expect("count");
        println!("  {modulus:>6}   {:>4}   {:.1}", res.count, res.enumeration_radius);
    }
}
