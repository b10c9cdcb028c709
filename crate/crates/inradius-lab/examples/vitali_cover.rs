//! Greedy bounded-overlap covers and the good-ball selection.
//!
//! The cover accepts points in input order at pairwise distance ≥ r/2; the
//! r/2-balls then cover every input point and the dilated r-balls overlap at
//! most 5^d times. The good ball maximizes the inner/outer mass ratio with
//! the guarantee M/(2·5^d·∫f).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use inradius_lab::cover::GoodBallResult;
use inradius_lab::geom::dist;
use inradius_lab::{good_ball, vitali_cover, Domain, Grid};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let points: Vec<Vec<f64>> = (0..1000)
        .map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
        .collect();
    let r = 0.2;
    let cover = vitali_cover(&points, r).expect("cover");
    println!("1000 random points in [0,1]³, r = {r}");
    println!("  centers accepted: {}", cover.centers.len());
    println!("  observed overlap: {} (bound 5³ = {})", cover.max_overlap, cover.overlap_bound);
    let covered = points
        .iter()
        .all(|p| cover.centers.iter().any(|q| dist(q, p) < r / 2.0));
    println!("  every point within r/2 of a center: {covered}");

    // good ball for a two-bump density on a grid
    let dom = Domain::unit_box(2);
    let grid = Grid::new(dom.clone(), 1.0 / 64.0).unwrap();
    let bump = |x: &[f64], c: [f64; 2], w: f64| {
        let d2 = (x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2);
        (-d2 / (w * w)).exp()
    };
    let f: Vec<f64> = (0..grid.lattice_len())
        .map(|lin| {
            let x = grid.center(lin);
            bump(&x, [0.3, 0.3], 0.08) + 0.2 * bump(&x, [0.7, 0.6], 0.15)
        })
        .collect();
    let r = 0.15;
    let e = dom.r_interior(r).unwrap();
    match good_ball(&grid, &f, &e, r).expect("good ball") {
        GoodBallResult::Ball(ball) => {
            println!("\ntwo-bump density, r = {r}:");
            println!("  good ball center {:?}", ball.center);
            println!("  inner/outer mass ratio {:.4} ≥ guarantee {:.6}", ball.ratio, ball.guarantee);
        }
        GoodBallResult::Vacuous => println!("no interior mass"),
    }
}
