//! Symbols and their sampled ellipticity constants, including a failure:
//! the wave-operator symbol ξ₁² − ξ₂² vanishes on real directions and is
//! rejected with a witness.

use num_complex::Complex64;

use inradius_lab::{count_lattice, MultiIndex, Symbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sym2(entries: [(u32, u32, Complex64); 2]) -> Symbol {
    Symbol::new(
        2,
        entries
            .into_iter()
            .map(|(a, b, z)| (MultiIndex::new(vec![a, b]).unwrap(), z)),
    )
    .unwrap()
}

fn main() {
    let zoo: Vec<(&str, Symbol)> = vec![
        ("Δ (Laplacian)", Symbol::laplacian(2)),
        ("ξ₁² + 2ξ₂²", sym2([(2, 0, c(1.0, 0.0)), (0, 2, c(2.0, 0.0))])),
        ("ξ₁² + i·ξ₂²", sym2([(2, 0, c(1.0, 0.0)), (0, 2, c(0.0, 1.0))])),
        ("(1+i)ξ₁³ + ξ₂³ (order 3)", sym2([(3, 0, c(1.0, 1.0)), (0, 3, c(1.0, 0.0))])),
    ];
    println!("sampled c_ell = min |P_m(ω)| over unit directions (refinement 3):\n");
    for (name, mut sym) in zoo {
        let v = sym.estimate_ellipticity(3).expect("elliptic");
        print!("  {name:<28} c_ell ≈ {v:.6}");
        match count_lattice(&sym, c(1.0, 0.0)) {
            Ok(res) => println!("   N₁ = {} (R₁ = {:.1})", res.count, res.enumeration_radius),
            Err(e) => println!("   lattice count unavailable: {e}"),
        }
    }

    let mut wave = sym2([(2, 0, c(1.0, 0.0)), (0, 2, c(-1.0, 0.0))]);
    println!("\nnon-elliptic detection:");
    match wave.estimate_ellipticity(2) {
        Ok(v) => println!("  unexpected: {v}"),
        Err(e) => println!("  ξ₁² − ξ₂² rejected: {e}"),
    }
}
