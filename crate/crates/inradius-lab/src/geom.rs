//! Domains, r-interiors, uniform cell-center grids and L² masses.
//!
//! Two analytic shapes are supported (axis-aligned boxes and balls) so that
//! distances to the complement and r-interiors are exact. Quadrature is the
//! midpoint rule on cell centers; sums use a fixed pairwise tree reduction,
//! so results are bit-stable across thread counts.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Eigenfunction;

/// Hard cap on lattice points per grid (memory guard).
pub const MAX_LATTICE_POINTS: usize = 200_000_000;

/// Default cap on total cells for the auto grid policy.
pub const MAX_GRID_CELLS: f64 = 4.0e6;

/// An open axis-aligned box or an open Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

impl Domain {
    pub fn unit_box(dim: usize) -> Self {
        Domain::Box {
            lo: vec![0.0; dim],
            hi: vec![1.0; dim],
        }
    }

    pub fn new_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidArgument("box corners need equal dim ≥ 1".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidArgument("box needs lo < hi componentwise".into()));
        }
        Ok(Domain::Box { lo, hi })
    }

    pub fn new_ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidArgument("ball center needs dim ≥ 1".into()));
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument("ball radius must be positive".into()));
        }
        Ok(Domain::Ball { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box { lo, .. } => lo.len(),
            Domain::Ball { center, .. } => center.len(),
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Domain::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&xi, (&l, &h))| l < xi && xi < h),
            Domain::Ball { center, radius } => dist(x, center) < *radius,
        }
    }

    /// The r-interior Ω_{−r} = {x ∈ Ω : B(x,r) ⊂ Ω}; `None` when it is empty.
    pub fn r_interior(&self, r: f64) -> Option<Domain> {
        debug_assert!(r > 0.0);
        match self {
            Domain::Box { lo, hi } => {
                let lo2: Vec<f64> = lo.iter().map(|&v| v + r).collect();
                let hi2: Vec<f64> = hi.iter().map(|&v| v - r).collect();
                if lo2.iter().zip(&hi2).any(|(a, b)| a >= b) {
                    None
                } else {
                    Some(Domain::Box { lo: lo2, hi: hi2 })
                }
            }
            Domain::Ball { center, radius } => {
                let r2 = radius - r;
                if r2 <= 0.0 {
                    None
                } else {
                    Some(Domain::Ball {
                        center: center.clone(),
                        radius: r2,
                    })
                }
            }
        }
    }

    /// dist(x, Ω^c) for x ∈ Ω.
    pub fn dist_to_complement(&self, x: &[f64]) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::InvalidArgument(format!(
                "point {x:?} is not inside the domain"
            )));
        }
        Ok(match self {
            Domain::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&xi, (&l, &h))| (xi - l).min(h - xi))
                .fold(f64::INFINITY, f64::min),
            Domain::Ball { center, radius } => radius - dist(x, center),
        })
    }

    /// Axis-aligned bounding box (lo, hi).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Domain::Box { lo, hi } => (lo.clone(), hi.clone()),
            Domain::Ball { center, radius } => (
                center.iter().map(|&c| c - radius).collect(),
                center.iter().map(|&c| c + radius).collect(),
            ),
        }
    }

    /// Exact sup over the domain closure of the linear form −x·w.
    /// Boxes maximize at a corner; balls at center + radius along −w.
    pub fn sup_neg_dot(&self, w: &[f64]) -> f64 {
        match self {
            Domain::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .zip(w)
                .map(|((&l, &h), &wj)| (-l * wj).max(-h * wj))
                .sum(),
            Domain::Ball { center, radius } => {
                let c_dot: f64 = center.iter().zip(w).map(|(&c, &wj)| c * wj).sum();
                -c_dot + radius * norm(w)
            }
        }
    }

    /// Whether `other` is contained in `self` (closure-level check on the
    /// analytic parameters).
    pub fn contains_domain(&self, other: &Domain) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self, other) {
            (Domain::Box { lo, hi }, Domain::Box { lo: lo2, hi: hi2 }) => {
                lo.iter().zip(lo2).all(|(a, b)| a <= b) && hi2.iter().zip(hi).all(|(a, b)| a <= b)
            }
            (Domain::Box { lo, hi }, Domain::Ball { center, radius }) => center
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&c, (&l, &h))| c - radius >= l && c + radius <= h),
            (Domain::Ball { center, radius }, Domain::Box { lo, hi }) => {
                // farthest box corner from the ball center
                let far: f64 = lo
                    .iter()
                    .zip(hi)
                    .zip(center)
                    .map(|((&l, &h), &c)| (l - c).abs().max((h - c).abs()).powi(2))
                    .sum::<f64>()
                    .sqrt();
                far <= *radius
            }
            (Domain::Ball { center, radius }, Domain::Ball { center: c2, radius: r2 }) => {
                dist(center, c2) + r2 <= *radius
            }
        }
    }

    /// Inner radius of the domain itself.
    pub fn inradius(&self) -> f64 {
        match self {
            Domain::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .map(|(&l, &h)| (h - l) / 2.0)
                .fold(f64::INFINITY, f64::min),
            Domain::Ball { radius, .. } => *radius,
        }
    }

    pub fn parse(text: &str) -> Result<Domain> {
        let mut toks = text.split_whitespace();
        let kind = toks
            .next()
            .ok_or_else(|| Error::Parse("empty domain spec".into()))?;
        let nums: Vec<f64> = toks
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        match kind {
            "box" => {
                if !nums.len().is_multiple_of(2) || nums.is_empty() {
                    return Err(Error::Parse("box needs 2d numbers: lo..., hi...".into()));
                }
                let d = nums.len() / 2;
                Domain::new_box(nums[..d].to_vec(), nums[d..].to_vec())
            }
            "ball" => {
                if nums.len() < 2 {
                    return Err(Error::Parse("ball needs d+1 numbers: center..., radius".into()));
                }
                let d = nums.len() - 1;
                Domain::new_ball(nums[..d].to_vec(), nums[d])
            }
            other => Err(Error::Parse(format!("unknown domain kind `{other}`"))),
        }
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|&x| x * x).sum::<f64>().sqrt()
}

/// Volume of the Euclidean d-ball of radius r, via the two-step recurrence
/// V_d = (2πr²/d)·V_{d−2} with V_0 = 1, V_1 = 2r.
pub fn ball_volume(dim: usize, r: f64) -> f64 {
    let even = dim.is_multiple_of(2);
    let mut vol = if even { 1.0 } else { 2.0 * r };
    let mut d = if even { 2 } else { 3 };
    while d <= dim {
        vol *= 2.0 * std::f64::consts::PI * r * r / (d as f64);
        d += 2;
    }
    vol
}

/// Uniform cell-center grid over a domain's bounding box.
///
/// Lattice points sit at `lo + (i + 1/2)·h` per axis, enumerated in
/// row-major order (last axis fastest); the `inside` mask marks centers
/// strictly inside the domain.
#[derive(Debug, Clone)]
pub struct Grid {
    domain: Domain,
    h: f64,
    n: Vec<usize>,
    lo: Vec<f64>,
    inside: Vec<bool>,
    inside_count: usize,
}

impl Grid {
    pub fn new(domain: Domain, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument("grid spacing must be positive".into()));
        }
        let (lo, hi) = domain.bounding_box();
        let n: Vec<usize> = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &u)| (((u - l) / h).round() as usize).max(1))
            .collect();
        let total: usize = n.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or_else(|| Error::InvalidArgument("grid size overflows".into()))?;
        if total > MAX_LATTICE_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid with {total} lattice points exceeds cap {MAX_LATTICE_POINTS}"
            )));
        }
        let mut grid = Self {
            domain,
            h,
            n,
            lo,
            inside: Vec::new(),
            inside_count: 0,
        };
        let inside: Vec<bool> = (0..total)
            .into_par_iter()
            .map(|lin| {
                let x = grid.center(lin);
                grid.domain.contains(&x)
            })
            .collect();
        grid.inside_count = inside.iter().filter(|&&b| b).count();
        grid.inside = inside;
        Ok(grid)
    }

    /// Grid spacing for the auto policy: h = scale/16 capped so the bounding
    /// box holds at most `MAX_GRID_CELLS` cells.
    pub fn auto_spacing(domain: &Domain, scale: f64) -> f64 {
        let (lo, hi) = domain.bounding_box();
        let volume: f64 = lo.iter().zip(&hi).map(|(&l, &u)| u - l).product();
        let d = lo.len() as f64;
        let h_cap = (volume / MAX_GRID_CELLS).powf(1.0 / d);
        (scale / 16.0).max(h_cap)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    /// Lattice points in the bounding box (including outside-domain ones).
    pub fn lattice_len(&self) -> usize {
        self.n.iter().product()
    }

    /// Number of cells strictly inside the domain.
    pub fn cell_count(&self) -> usize {
        self.inside_count
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.powi(self.dim() as i32)
    }

    pub fn axis_counts(&self) -> &[usize] {
        &self.n
    }

    pub fn is_inside(&self, lin: usize) -> bool {
        self.inside[lin]
    }

    /// Multi-index of a linear (row-major) lattice index.
    pub fn multi(&self, lin: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.n.len()];
        let mut rem = lin;
        for j in (0..self.n.len()).rev() {
            idx[j] = rem % self.n[j];
            rem /= self.n[j];
        }
        idx
    }

    /// Cell center of a linear lattice index.
    pub fn center(&self, lin: usize) -> Vec<f64> {
        let idx = self.multi(lin);
        idx.iter()
            .zip(self.lo.iter())
            .map(|(&i, &l)| l + (i as f64 + 0.5) * self.h)
            .collect()
    }

    /// |ψ| at every lattice point, without the field's scalar prefactor.
    /// The prefactor is 0-homogeneous-invariant metadata; see `Eigenfunction`.
    pub fn sample_abs_unscaled(&self, ef: &Eigenfunction) -> Vec<f64> {
        (0..self.lattice_len())
            .into_par_iter()
            .map(|lin| ef.eval_unscaled(&self.center(lin)).norm())
            .collect()
    }

    /// ψ (with scale) at every lattice point.
    pub fn sample(&self, ef: &Eigenfunction) -> Vec<Complex64> {
        (0..self.lattice_len())
            .into_par_iter()
            .map(|lin| ef.eval(&self.center(lin)))
            .collect()
    }

    /// Deterministic pairwise-tree sum of `f(lin)` over lattice indices.
    pub fn pairwise_map_sum(&self, f: impl Fn(usize) -> f64 + Sync) -> f64 {
        pairwise_map_sum(0, self.lattice_len(), &f)
    }
}

const PAIRWISE_LEAF: usize = 1024;
const PAIRWISE_PAR_MIN: usize = 1 << 16;

/// Pairwise (tree) summation over an index range. The split points depend
/// only on the range, so the result is identical for any thread count.
pub fn pairwise_map_sum(start: usize, end: usize, f: &(impl Fn(usize) -> f64 + Sync)) -> f64 {
    let len = end - start;
    if len <= PAIRWISE_LEAF {
        let mut acc = 0.0;
        for i in start..end {
            acc += f(i);
        }
        return acc;
    }
    let mid = start + len / 2;
    if len >= PAIRWISE_PAR_MIN {
        let (a, b) = rayon::join(
            || pairwise_map_sum(start, mid, f),
            || pairwise_map_sum(mid, end, f),
        );
        a + b
    } else {
        pairwise_map_sum(start, mid, f) + pairwise_map_sum(mid, end, f)
    }
}

pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_map_sum(0, values.len(), &|i| values[i])
}

/// ‖ψ‖²_{L²(region)} by the midpoint rule over grid cells whose centers lie
/// in `region` (and inside the grid's domain). `region ⊆ grid.domain`.
pub fn l2_mass(ef: &Eigenfunction, region: &Domain, grid: &Grid) -> f64 {
    let abs = grid.sample_abs_unscaled(ef);
    ef.scale().norm_sqr() * l2_mass_from_samples(&abs, region, grid)
}

/// Unscaled mass from pre-sampled |ψ| values (one per lattice point).
pub fn l2_mass_from_samples(abs_unscaled: &[f64], region: &Domain, grid: &Grid) -> f64 {
    let sum = grid.pairwise_map_sum(|lin| {
        if grid.is_inside(lin) && region.contains(&grid.center(lin)) {
            let v = abs_unscaled[lin];
            v * v
        } else {
            0.0
        }
    });
    grid.cell_volume() * sum
}

/// The L² masses the inradius bound compares: N over Ω, M over the
/// r-interior Ω_{−r}, and √(M/N).
#[derive(Debug, Clone, PartialEq)]
pub struct MassReport {
    /// N = ‖ψ‖²_{L²(Ω)}.
    pub total: f64,
    /// M = ‖ψ‖²_{L²(Ω_{−r})}.
    pub interior: f64,
    /// √(M/N), the mass-ratio factor of the inradius bound.
    pub ratio_sqrt: f64,
}

pub fn mass_report(ef: &Eigenfunction, dom: &Domain, r: f64, grid: &Grid) -> Result<MassReport> {
    let abs = grid.sample_abs_unscaled(ef);
    mass_report_from_samples(ef, &abs, dom, r, grid)
}

pub fn mass_report_from_samples(
    ef: &Eigenfunction,
    abs_unscaled: &[f64],
    dom: &Domain,
    r: f64,
    grid: &Grid,
) -> Result<MassReport> {
    let n_unscaled = l2_mass_from_samples(abs_unscaled, dom, grid);
    if n_unscaled == 0.0 {
        return Err(Error::ZeroField);
    }
    let m_unscaled = match dom.r_interior(r) {
        Some(interior) => l2_mass_from_samples(abs_unscaled, &interior, grid),
        None => 0.0,
    };
    // The ratio is 0-homogeneous in ψ; computing it before applying the
    // scalar prefactor keeps it bit-identical under field scaling.
    let ratio_sqrt = (m_unscaled / n_unscaled).sqrt();
    let s2 = ef.scale().norm_sqr();
    Ok(MassReport {
        total: s2 * n_unscaled,
        interior: s2 * m_unscaled,
        ratio_sqrt,
    })
}
