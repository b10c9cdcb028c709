//! Render |ψ| as a PPM heatmap with the best certified ball drawn in red.
//! Writes `heatmap.ppm` in the current directory.

use num_complex::Complex64;

use inradius_lab::field::{synth, Recipe, RecipeTerm};
use inradius_lab::ppm::write_ppm_heatmap;
use inradius_lab::{certified_inradius, Domain, Grid, Symbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let sym = Symbol::laplacian(2);
    let pi = std::f64::consts::PI;
    let recipe = Recipe(vec![
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 0, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1, c(-0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0, c(0.25, 0.0)),
        RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 1, c(0.25, 0.0)),
    ]);
    let ef = synth(&sym, c(18.0 * pi * pi, 0.0), &recipe).expect("synthesis");
    let dom = Domain::unit_box(2);
    let grid = Grid::new(dom.clone(), 1.0 / 384.0).unwrap();

    let abs = grid.sample_abs_unscaled(&ef);
    let cert = certified_inradius(&ef, &dom, &grid).expect("certified");
    let path = std::path::Path::new("heatmap.ppm");
    write_ppm_heatmap(path, &grid, &abs, Some((&cert.center, cert.radius))).expect("ppm");
    println!(
        "wrote {} ({}×{} P6): |ψ| grayscale, certified ball at {:?} radius {:.4} in red",
        path.display(),
        grid.axis_counts()[0],
        grid.axis_counts()[1],
        cert.center,
        cert.radius
    );
}
