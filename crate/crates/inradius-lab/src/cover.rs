//! Greedy bounded-overlap covers and good-ball selection.
//!
//! A maximal packing of r/4-balls (equivalently: greedily accepted centers
//! at pairwise distance ≥ r/2) covers the input set with r/2-balls, and the
//! dilated r-balls overlap at most 5^d times by the volume comparison
//! argument. The good ball is the cover center maximizing the inner/outer
//! mass ratio; its guarantee is M/(2·5^d·∫f).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{dist, Domain, Grid};

/// A greedy cover: centers at pairwise distance ≥ r/2 whose r/2-balls cover
/// every input point.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub centers: Vec<Vec<f64>>,
    pub r: f64,
    /// Largest observed number of dilated r-balls containing one input point.
    pub max_overlap: usize,
    /// The 5^d bound the good-ball guarantee uses.
    pub overlap_bound: usize,
}

/// Spatial hash over buckets of side `cell`; maps bucket coords to center
/// indices. Distances under `reach` only need nearby buckets.
struct BucketIndex {
    cell: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl BucketIndex {
    fn new(cell: f64) -> Self {
        Self { cell, buckets: HashMap::new() }
    }

    fn key(&self, p: &[f64]) -> Vec<i64> {
        p.iter().map(|&x| (x / self.cell).floor() as i64).collect()
    }

    fn insert(&mut self, p: &[f64], idx: usize) {
        self.buckets.entry(self.key(p)).or_default().push(idx);
    }

    /// Visit indices in buckets within `span` cells of p's bucket.
    fn for_neighbors(&self, p: &[f64], span: i64, mut visit: impl FnMut(usize)) {
        let key = self.key(p);
        let d = key.len();
        let mut offset = vec![-span; d];
        loop {
            let probe: Vec<i64> = key.iter().zip(&offset).map(|(&k, &o)| k + o).collect();
            if let Some(ids) = self.buckets.get(&probe) {
                for &i in ids {
                    visit(i);
                }
            }
            // odometer increment
            let mut axis = 0;
            loop {
                if axis == d {
                    return;
                }
                offset[axis] += 1;
                if offset[axis] <= span {
                    break;
                }
                offset[axis] = -span;
                axis += 1;
            }
        }
    }
}

/// Greedy scan in input order: accept a point iff its distance to every
/// accepted center is ≥ r/2. Maximality gives the covering property; the
/// packing gives overlap ≤ 5^d for the dilated r-balls.
pub fn vitali_cover(points: &[Vec<f64>], r: f64) -> Result<CoverResult> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("vitali_cover needs ≥ 1 point".into()));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidArgument("cover radius must be positive".into()));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: 0 });
    }
    let half = r / 2.0;
    let mut centers: Vec<Vec<f64>> = Vec::new();
    let mut index = BucketIndex::new(half);
    'next_point: for p in points {
        let mut ok = true;
        index.for_neighbors(p, 1, |i| {
            if ok && dist(p, &centers[i]) < half {
                ok = false;
            }
        });
        if !ok {
            continue 'next_point;
        }
        index.insert(p, centers.len());
        centers.push(p.clone());
    }

    // Observed overlap of the open r-balls over the input points. Centers
    // within r of p live in buckets at most 2 cells away (cell = r/2).
    let max_overlap = points
        .par_iter()
        .map(|p| {
            let mut count = 0usize;
            index.for_neighbors(p, 2, |i| {
                if dist(p, &centers[i]) < r {
                    count += 1;
                }
            });
            count
        })
        .reduce(|| 0, usize::max);

    let overlap_bound = 5usize.pow(d as u32);
    Ok(CoverResult { centers, r, max_overlap, overlap_bound })
}

/// A cover ball whose inner/outer mass ratio meets the guarantee.
#[derive(Debug, Clone)]
pub struct GoodBall {
    pub center: Vec<f64>,
    pub r: f64,
    /// ∫_{B(center, r/2)} f (midpoint quadrature).
    pub inner_mass: f64,
    /// ∫_{B(center, r)} f.
    pub outer_mass: f64,
    pub ratio: f64,
    /// α = M/(2·5^d·∫_Ω f).
    pub guarantee: f64,
}

/// `good_ball` outcome; the claim is vacuous when the interior mass M = 0.
#[derive(Debug, Clone)]
pub enum GoodBallResult {
    Ball(GoodBall),
    Vacuous,
}

/// Quadrature mass of `f` over the cells of `grid` inside the domain whose
/// centers lie in the open ball B(center, radius). Iterates only the index
/// window around the ball; summation order is row-major, so the result is
/// deterministic.
pub fn ball_mass(grid: &Grid, f: &[f64], center: &[f64], radius: f64) -> f64 {
    let d = grid.dim();
    let n = grid.axis_counts();
    let h = grid.spacing();
    let (lo, _) = grid.domain().bounding_box();
    let mut lo_idx = vec![0usize; d];
    let mut hi_idx = vec![0usize; d];
    for j in 0..d {
        let a = ((center[j] - radius - lo[j]) / h - 0.5).ceil().max(0.0) as usize;
        let b = ((center[j] + radius - lo[j]) / h - 0.5).floor().min((n[j] - 1) as f64);
        if b < 0.0 {
            return 0.0;
        }
        lo_idx[j] = a.min(n[j] - 1);
        hi_idx[j] = b as usize;
        if lo_idx[j] > hi_idx[j] {
            return 0.0;
        }
    }
    let mut idx = lo_idx.clone();
    let mut sum = 0.0;
    let r2 = radius * radius;
    loop {
        // linear index of idx
        let mut lin = 0usize;
        for j in 0..d {
            lin = lin * n[j] + idx[j];
        }
        if grid.is_inside(lin) {
            let x = grid.center(lin);
            let dd: f64 = x
                .iter()
                .zip(center)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            if dd < r2 {
                sum += f[lin];
            }
        }
        // odometer over the window, last axis fastest
        let mut axis = d;
        loop {
            if axis == 0 {
                return sum * grid.cell_volume();
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] <= hi_idx[axis] {
                break;
            }
            idx[axis] = lo_idx[axis];
        }
    }
}

/// Pick the cover center maximizing the inner/outer mass ratio among the
/// grid cells lying in E, and assert the ratio ≥ M/(2·5^d·∫f) guarantee.
pub fn good_ball(grid: &Grid, f: &[f64], e: &Domain, r: f64) -> Result<GoodBallResult> {
    if f.len() != grid.lattice_len() {
        return Err(Error::InvalidArgument("density length must match the lattice".into()));
    }
    let total = grid.cell_volume()
        * grid.pairwise_map_sum(|lin| if grid.is_inside(lin) { f[lin] } else { 0.0 });
    if !(total > 0.0) {
        return Err(Error::InvalidArgument("good_ball needs positive total mass".into()));
    }
    let interior_mass = grid.cell_volume()
        * grid.pairwise_map_sum(|lin| {
            if grid.is_inside(lin) && e.contains(&grid.center(lin)) {
                f[lin]
            } else {
                0.0
            }
        });
    if interior_mass == 0.0 {
        return Ok(GoodBallResult::Vacuous);
    }
    let points: Vec<Vec<f64>> = (0..grid.lattice_len())
        .filter(|&lin| grid.is_inside(lin) && e.contains(&grid.center(lin)))
        .map(|lin| grid.center(lin))
        .collect();
    let cover = vitali_cover(&points, r)?;
    let masses: Vec<(f64, f64)> = cover
        .centers
        .par_iter()
        .map(|c| {
            let inner = ball_mass(grid, f, c, r / 2.0);
            let outer = ball_mass(grid, f, c, r);
            (inner, outer)
        })
        .collect();
    let mut best = 0usize;
    let mut best_ratio = f64::NEG_INFINITY;
    for (i, &(inner, outer)) in masses.iter().enumerate() {
        let ratio = if outer > 0.0 { inner / outer } else { 0.0 };
        if ratio > best_ratio {
            best_ratio = ratio;
            best = i;
        }
    }
    let guarantee = interior_mass / (2.0 * cover.overlap_bound as f64 * total);
    if best_ratio < guarantee * (1.0 - 1e-12) {
        return Err(Error::GoodBallGuarantee { ratio: best_ratio, guarantee });
    }
    let (inner_mass, outer_mass) = masses[best];
    Ok(GoodBallResult::Ball(GoodBall {
        center: cover.centers[best].clone(),
        r,
        inner_mass,
        outer_mass,
        ratio: best_ratio,
        guarantee,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_cover() {
        let cover = vitali_cover(&[vec![0.3, 0.4]], 1.0).unwrap();
        assert_eq!(cover.centers.len(), 1);
        assert_eq!(cover.max_overlap, 1);
        assert_eq!(cover.overlap_bound, 25);
    }

    #[test]
    fn two_points_distance_one() {
        // d=1, {0, 1}, r=1: distance 1 ≥ 0.5, both accepted.
        let cover = vitali_cover(&[vec![0.0], vec![1.0]], 1.0).unwrap();
        assert_eq!(cover.centers.len(), 2);
        for p in [[0.0], [1.0]] {
            assert!(cover.centers.iter().any(|c| dist(c, &p) < 0.5));
        }
    }

    #[test]
    fn cover_properties_random_cloud() {
        // covering, packing, overlap bound on a deterministic pseudo-random cloud
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let points: Vec<Vec<f64>> = (0..1000).map(|_| vec![next(), next(), next()]).collect();
        let r = 0.2;
        let cover = vitali_cover(&points, r).unwrap();
        for p in &points {
            assert!(cover.centers.iter().any(|c| dist(c, p) < r / 2.0));
        }
        for (i, a) in cover.centers.iter().enumerate() {
            for b in cover.centers.iter().skip(i + 1) {
                assert!(dist(a, b) >= r / 2.0);
            }
        }
        assert!(cover.max_overlap <= 125, "{}", cover.max_overlap);
    }

    #[test]
    fn good_ball_uniform_density() {
        // f ≡ 1 on the unit box: interior balls have ratio ≈ 2^{−d}, far
        // above the guarantee M/(2·25·N).
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 64.0).unwrap();
        let f = vec![1.0; grid.lattice_len()];
        let e = dom.r_interior(0.2).unwrap();
        match good_ball(&grid, &f, &e, 0.2).unwrap() {
            GoodBallResult::Ball(ball) => {
                assert!(ball.ratio >= ball.guarantee);
                assert!(ball.ratio > 0.2, "ratio {}", ball.ratio);
                assert!(ball.guarantee < 0.01, "guarantee {}", ball.guarantee);
            }
            GoodBallResult::Vacuous => panic!("expected a ball"),
        }
    }

    #[test]
    fn good_ball_concentrated_density() {
        // f supported in one r/2-ball centered in E: the best ratio is 1.
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 64.0).unwrap();
        let target = [0.5, 0.5];
        let f: Vec<f64> = (0..grid.lattice_len())
            .map(|lin| {
                let x = grid.center(lin);
                if dist(&x, &target) < 0.05 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let e = dom.r_interior(0.2).unwrap();
        match good_ball(&grid, &f, &e, 0.2).unwrap() {
            GoodBallResult::Ball(ball) => {
                assert!((ball.ratio - 1.0).abs() < 1e-12, "ratio {}", ball.ratio);
            }
            GoodBallResult::Vacuous => panic!("expected a ball"),
        }
    }

    #[test]
    fn good_ball_vacuous_when_interior_empty() {
        // f supported outside E only.
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 32.0).unwrap();
        let e = dom.r_interior(0.3).unwrap();
        let f: Vec<f64> = (0..grid.lattice_len())
            .map(|lin| {
                let x = grid.center(lin);
                if e.contains(&x) {
                    0.0
                } else {
                    1.0
                }
            })
            .collect();
        assert!(matches!(
            good_ball(&grid, &f, &e, 0.3).unwrap(),
            GoodBallResult::Vacuous
        ));
    }

    #[test]
    fn ball_mass_window_matches_full_scan() {
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 50.0).unwrap();
        let f: Vec<f64> = (0..grid.lattice_len())
            .map(|lin| (lin % 7) as f64 * 0.1 + 0.3)
            .collect();
        let center = [0.41, 0.63];
        let radius = 0.17;
        let fast = ball_mass(&grid, &f, &center, radius);
        let slow: f64 = (0..grid.lattice_len())
            .filter(|&lin| grid.is_inside(lin) && dist(&grid.center(lin), &center) < radius)
            .map(|lin| f[lin])
            .sum::<f64>()
            * grid.cell_volume();
        assert!((fast - slow).abs() < 1e-12 * slow.max(1.0));
    }
}
