//! Certified nonvanishing balls and inner radii of the nonvanishing set.
//!
//! The certificate route: a pointwise amplitude η = |ψ(x₀)| plus a Lipschitz
//! bound L give the radius ρ = min{η/2L, dist(x₀, Ω^c)} on which |ψ| ≥ η/2,
//! hence ψ ≠ 0. The measured route: mark near-zero cells, run an exact
//! distance transform, and report the best distance to a marked cell or the
//! boundary. Certification is a sound lower bound; measurement is an
//! upper-resolution estimate.
//!
//! All radii are computed from the field's unit-prefactor data, so they are
//! bit-identical under scalar rescaling of the field.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::edt::squared_edt;
use crate::error::{Error, Result};
use crate::field::Eigenfunction;
use crate::geom::{ball_volume, dist, Domain, Grid};

/// Relative slack for probe checks inside certified balls.
const PROBE_SLACK: f64 = 1e-9;

/// ρ = min{η/(2L), dist(x₀, Ω^c)}: on this ball a Lipschitz-L function
/// with |G(x₀)| ≥ η stays ≥ η/2 in modulus, hence never vanishes.
pub fn lipschitz_ball(eta: f64, lipschitz: f64, boundary_dist: f64) -> Result<f64> {
    if !(eta > 0.0) || !(lipschitz > 0.0) || !(boundary_dist > 0.0) {
        return Err(Error::InvalidArgument(
            "lipschitz_ball needs positive η, L, dist".into(),
        ));
    }
    Ok((eta / (2.0 * lipschitz)).min(boundary_dist))
}

/// sup_{B(0,R)} |u| ≥ ‖u‖_{L²(B(0,R))} / vol(B(0,R))^{1/2}; returns the
/// right-hand side. `mass` is the L² norm itself, not its square.
pub fn sup_lower_bound(mass: f64, ball_radius: f64, dim: usize) -> f64 {
    mass / ball_volume(dim, ball_radius).sqrt()
}

/// A certified nonvanishing ball: the evidence that B(center, radius) avoids
/// the zero set. Amplitude and Lipschitz bound are recorded for the field's
/// unit-prefactor normalization; the radius is their 0-homogeneous
/// combination with the boundary distance.
#[derive(Debug, Clone, PartialEq)]
pub struct InradiusCertificate {
    pub center: Vec<f64>,
    pub radius: f64,
    /// η = |ψ(center)| (unit prefactor).
    pub amplitude: f64,
    /// L, a rigorous bound for sup |∇ψ| over the domain (unit prefactor).
    pub lipschitz: f64,
    pub boundary_dist: f64,
}

/// Certify the ball at `center`, probing |ψ| at the center and the 2d axis
/// extremes just inside the radius.
pub fn certify_at(
    ef: &Eigenfunction,
    dom: &Domain,
    center: &[f64],
    lipschitz_unscaled: f64,
) -> Result<InradiusCertificate> {
    let amplitude = ef.eval_unscaled(center).norm();
    let boundary_dist = dom.dist_to_complement(center)?;
    let radius = lipschitz_ball(amplitude, lipschitz_unscaled, boundary_dist)?;
    let floor = 0.5 * amplitude * (1.0 - PROBE_SLACK);
    let mut probes = vec![center.to_vec()];
    for j in 0..center.len() {
        for sign in [-1.0, 1.0] {
            let mut p = center.to_vec();
            p[j] += sign * radius * (1.0 - PROBE_SLACK);
            probes.push(p);
        }
    }
    for probe in probes {
        let value = ef.eval_unscaled(&probe).norm();
        if !(value >= floor) {
            return Err(Error::CertificationFailure { probe, value, floor });
        }
    }
    Ok(InradiusCertificate {
        center: center.to_vec(),
        radius,
        amplitude,
        lipschitz: lipschitz_unscaled,
        boundary_dist,
    })
}

/// Dense re-sampling check of a certificate: `n` uniform points in the open
/// ball must all satisfy |ψ| ≥ η/2·(1−1e−6).
pub fn verify_certificate_dense(
    ef: &Eigenfunction,
    cert: &InradiusCertificate,
    n: usize,
    seed: u64,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = cert.center.len();
    let floor = 0.5 * cert.amplitude * (1.0 - 1e-6);
    for _ in 0..n {
        let p = sample_in_ball(&mut rng, &cert.center, cert.radius * (1.0 - 1e-12), d);
        let value = ef.eval_unscaled(&p).norm();
        if !(value >= floor) {
            return Err(Error::CertificationFailure { probe: p, value, floor });
        }
    }
    Ok(())
}

pub(crate) fn sample_in_ball(
    rng: &mut ChaCha8Rng,
    center: &[f64],
    radius: f64,
    dim: usize,
) -> Vec<f64> {
    // gaussian direction, radius ~ U^{1/d}·R
    loop {
        let dir: Vec<f64> = (0..dim)
            .map(|_| {
                let u: f64 = rng.random_range(1e-12..1.0);
                let v: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                (-2.0 * u.ln()).sqrt() * v.cos()
            })
            .collect();
        let n = crate::geom::norm(&dir);
        if n > 1e-12 {
            let u: f64 = rng.random_range(0.0..1.0);
            let rr = radius * u.powf(1.0 / dim as f64);
            return center
                .iter()
                .zip(&dir)
                .map(|(&c, &g)| c + rr * g / n)
                .collect();
        }
    }
}

/// Certified and measured inner radii of Σ = {ψ ≠ 0}.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaEstimate {
    pub certified_inradius: f64,
    pub certified_center: Vec<f64>,
    pub measured_inradius: f64,
    /// The absolute zero threshold τ used by the measured part.
    pub zero_threshold: f64,
}

/// Output of the certificate search over grid centers.
#[derive(Debug, Clone)]
pub struct CertifiedPart {
    pub radius: f64,
    pub center: Vec<f64>,
    /// Unit-prefactor Lipschitz bound used for every cell.
    pub lipschitz: f64,
    pub certificate: Option<InradiusCertificate>,
    /// Set when every sample vanished; the radius is then 0.
    pub all_zero: bool,
}

/// Output of the distance-transform measurement.
#[derive(Debug, Clone)]
pub struct MeasuredPart {
    pub radius: f64,
    pub zero_threshold: f64,
}

/// Search all grid cells for the best Lipschitz certificate:
/// ρ(x) = min(|ψ(x)|/2L, dist(x, Ω^c)), maximized over cell centers,
/// ties broken by enumeration order.
pub fn certified_inradius(ef: &Eigenfunction, dom: &Domain, grid: &Grid) -> Result<CertifiedPart> {
    let abs = grid.sample_abs_unscaled(ef);
    certified_inradius_from_samples(ef, &abs, dom, grid)
}

pub fn certified_inradius_from_samples(
    ef: &Eigenfunction,
    abs_unscaled: &[f64],
    dom: &Domain,
    grid: &Grid,
) -> Result<CertifiedPart> {
    use rayon::prelude::*;
    let lipschitz = ef.gradient_sup_bound_unscaled(dom);
    let best = (0..grid.lattice_len())
        .into_par_iter()
        .map(|lin| {
            if !grid.is_inside(lin) {
                return (f64::NEG_INFINITY, usize::MAX);
            }
            let u = abs_unscaled[lin];
            if u == 0.0 {
                return (0.0, lin);
            }
            let x = grid.center(lin);
            let bd = dom
                .dist_to_complement(&x)
                .expect("inside cell has a boundary distance");
            let rho = (u / (2.0 * lipschitz)).min(bd);
            (rho, lin)
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    if best.1 == usize::MAX {
        return Err(Error::InvalidArgument("grid has no cells inside the domain".into()));
    }
    let center = grid.center(best.1);
    if !(best.0 > 0.0) {
        return Ok(CertifiedPart {
            radius: 0.0,
            center,
            lipschitz,
            certificate: None,
            all_zero: true,
        });
    }
    let certificate = certify_at(ef, dom, &center, lipschitz)?;
    Ok(CertifiedPart {
        radius: best.0,
        center,
        lipschitz,
        certificate: Some(certificate),
        all_zero: false,
    })
}

/// Zero threshold for the measured inradius: relative thresholds are
/// multiples of the max sampled |ψ| (scale-free); absolute thresholds are
/// compared against |ψ| including the prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroThreshold {
    Relative(f64),
    Absolute(f64),
}

impl Default for ZeroThreshold {
    fn default() -> Self {
        ZeroThreshold::Relative(1e-6)
    }
}

/// Mark cells with |ψ| ≤ τ as possibly zero, take the exact Euclidean
/// distance transform to the marked set, combine with the distance to the
/// domain complement, and return the maximum.
pub fn measured_inradius(
    ef: &Eigenfunction,
    dom: &Domain,
    grid: &Grid,
    tau: ZeroThreshold,
) -> MeasuredPart {
    let abs = grid.sample_abs_unscaled(ef);
    measured_inradius_from_samples(ef, &abs, dom, grid, tau)
}

pub fn measured_inradius_from_samples(
    ef: &Eigenfunction,
    abs_unscaled: &[f64],
    dom: &Domain,
    grid: &Grid,
    tau: ZeroThreshold,
) -> MeasuredPart {
    use rayon::prelude::*;
    let scale = ef.scale().norm();
    let max_u = (0..grid.lattice_len())
        .into_par_iter()
        .map(|lin| if grid.is_inside(lin) { abs_unscaled[lin] } else { 0.0 })
        .reduce(|| 0.0f64, f64::max);
    // Compare in the unit-prefactor normalization so relative thresholds are
    // scale-free.
    let tau_u = match tau {
        ZeroThreshold::Absolute(t) => t / scale,
        ZeroThreshold::Relative(rel) => rel * max_u,
    };
    let marked: Vec<bool> = (0..grid.lattice_len())
        .into_par_iter()
        .map(|lin| grid.is_inside(lin) && abs_unscaled[lin] <= tau_u)
        .collect();
    let has_marks = marked.iter().any(|&b| b);
    let dt = if has_marks {
        squared_edt(&marked, grid.axis_counts())
    } else {
        Vec::new()
    };
    let h = grid.spacing();
    let radius = (0..grid.lattice_len())
        .into_par_iter()
        .map(|lin| {
            if !grid.is_inside(lin) {
                return 0.0;
            }
            let x = grid.center(lin);
            let bd = dom
                .dist_to_complement(&x)
                .expect("inside cell has a boundary distance");
            if has_marks {
                bd.min(h * dt[lin].sqrt())
            } else {
                bd
            }
        })
        .reduce(|| 0.0f64, f64::max);
    MeasuredPart {
        radius,
        zero_threshold: tau_u * scale,
    }
}

/// Combined estimate; with a relative threshold the certified value must
/// stay below the measured one up to the grid-resolution slack.
pub fn sigma_estimate(
    ef: &Eigenfunction,
    dom: &Domain,
    grid: &Grid,
    tau: ZeroThreshold,
) -> Result<SigmaEstimate> {
    let abs = grid.sample_abs_unscaled(ef);
    let cert = certified_inradius_from_samples(ef, &abs, dom, grid)?;
    let meas = measured_inradius_from_samples(ef, &abs, dom, grid, tau);
    let est = SigmaEstimate {
        certified_inradius: cert.radius,
        certified_center: cert.center,
        measured_inradius: meas.radius,
        zero_threshold: meas.zero_threshold,
    };
    let default_tau = matches!(tau, ZeroThreshold::Relative(r) if r <= 1e-3);
    if default_tau && est.certified_inradius > est.measured_inradius + 2.0 * grid.spacing() {
        return Err(Error::OrderingChain(format!(
            "certified {} > measured {} + 2h",
            est.certified_inradius, est.measured_inradius
        )));
    }
    Ok(est)
}

/// Distance between two points (re-exported convenience for callers mixing
/// certificates and raw coordinates).
pub fn point_dist(a: &[f64], b: &[f64]) -> f64 {
    dist(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{synth, Recipe, RecipeTerm};
    use crate::symbol::Symbol;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plane_wave_diag() -> Eigenfunction {
        let sym = Symbol::laplacian(2);
        let recipe = Recipe(vec![RecipeTerm::new(
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            1,
            c(1.0, 0.0),
        )]);
        synth(&sym, c(2.0 * PI * PI, 0.0), &recipe).unwrap()
    }

    fn sin2_product() -> Eigenfunction {
        // sin(2πx₁)sin(2πx₂), λ = 8π².
        let sym = Symbol::laplacian(2);
        let recipe = Recipe(vec![
            RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 0, c(-0.25, 0.0)),
            RecipeTerm::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1, c(-0.25, 0.0)),
            RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0, c(0.25, 0.0)),
            RecipeTerm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 1, c(0.25, 0.0)),
        ]);
        synth(&sym, c(8.0 * PI * PI, 0.0), &recipe).unwrap()
    }

    #[test]
    fn lipschitz_ball_formula() {
        assert_eq!(lipschitz_ball(1.0, 1.0, 10.0).unwrap(), 0.5);
        assert_eq!(lipschitz_ball(1.0, 1.0, 0.1).unwrap(), 0.1);
        assert!((lipschitz_ball(1e-3, 1e3, 1.0).unwrap() - 5e-7).abs() < 1e-20);
        assert!(lipschitz_ball(0.0, 1.0, 1.0).is_err());
        assert!(lipschitz_ball(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn sup_lower_bound_values() {
        // equality case: constant |u| ≡ c on B(0,R)
        for (d, r, cval) in [(1, 0.7, 2.5), (2, 0.5, 1.0), (3, 1.3, 0.2)] {
            let mass = cval * ball_volume(d, r).sqrt();
            let bound = sup_lower_bound(mass, r, d);
            assert!((bound - cval).abs() < 1e-12 * cval, "d={d}");
        }
        let b = sup_lower_bound(1.0, 0.5, 2);
        assert!((b - 2.0 / PI.sqrt()).abs() < 1e-12, "{b}");
        assert_eq!(sup_lower_bound(0.0, 1.0, 2), 0.0);
    }

    #[test]
    fn certified_plane_wave_value() {
        // |ψ| ≡ 1, L = |(π,π)| = π√2: certified = 1/(2π√2) (far from walls).
        let ef = plane_wave_diag();
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 64.0).unwrap();
        let part = certified_inradius(&ef, &dom, &grid).unwrap();
        let expected = 1.0 / (2.0 * PI * 2.0f64.sqrt());
        assert!((part.radius - expected).abs() < 1e-12, "{}", part.radius);
        assert!(!part.all_zero);
        let cert = part.certificate.unwrap();
        assert_eq!(cert.radius.min(cert.boundary_dist), cert.radius);
    }

    #[test]
    fn certified_bitwise_scale_invariant() {
        let ef = plane_wave_diag();
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 1.0 / 32.0).unwrap();
        let a = certified_inradius(&ef, &dom, &grid).unwrap();
        let b = certified_inradius(&ef.scaled(c(3.7, -1.9)), &dom, &grid).unwrap();
        assert_eq!(a.radius.to_bits(), b.radius.to_bits());
        assert_eq!(a.center, b.center);
    }

    #[test]
    fn certified_zero_field() {
        let sym = Symbol::laplacian(2);
        let ef = crate::field::Eigenfunction::from_terms(
            sym,
            c(2.0, 0.0),
            vec![crate::field::PlaneWaveTerm::new(
                c(0.0, 0.0),
                vec![c(-1.0, 0.0), c(-1.0, 0.0)],
            )],
        )
        .unwrap();
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 0.125).unwrap();
        let part = certified_inradius(&ef, &dom, &grid).unwrap();
        assert_eq!(part.radius, 0.0);
        assert!(part.all_zero);
    }

    #[test]
    fn measured_plane_wave_full_domain() {
        // Σ = Ω for a nonvanishing field, so measured ≈ inradius(Ω) = 0.5.
        let ef = plane_wave_diag();
        let dom = Domain::unit_box(2);
        let h = 1.0 / 128.0;
        let grid = Grid::new(dom.clone(), h).unwrap();
        let part = measured_inradius(&ef, &dom, &grid, ZeroThreshold::default());
        assert!((part.radius - 0.5).abs() <= 2.0 * h, "{}", part.radius);
    }

    #[test]
    fn measured_sin2_quarter_squares() {
        // Nodal lines at x_i ∈ {1/2}: four quarter squares, inradius 1/4.
        // The threshold must see zeros at grid resolution: τ = L·h marks all
        // cells within one cell of the nodal set.
        let ef = sin2_product();
        let dom = Domain::unit_box(2);
        let h = 1.0 / 256.0;
        let grid = Grid::new(dom.clone(), h).unwrap();
        let tau = ef.gradient_sup_bound(&dom) * h;
        let part = measured_inradius(&ef, &dom, &grid, ZeroThreshold::Absolute(tau));
        assert!((part.radius - 0.25).abs() <= 2.0 * h, "{}", part.radius);
    }

    #[test]
    fn measured_huge_tau_marks_everything() {
        let ef = plane_wave_diag();
        let dom = Domain::unit_box(2);
        let grid = Grid::new(dom.clone(), 0.0625).unwrap();
        let part = measured_inradius(&ef, &dom, &grid, ZeroThreshold::Absolute(1e9));
        assert_eq!(part.radius, 0.0);
    }

    #[test]
    fn certificate_dense_verification() {
        let ef = sin2_product();
        let dom = Domain::unit_box(2);
        let l = ef.gradient_sup_bound_unscaled(&dom);
        let cert = certify_at(&ef, &dom, &[0.25, 0.25], l).unwrap();
        assert!(cert.radius > 0.0);
        verify_certificate_dense(&ef, &cert, 5000, 42).unwrap();
    }

    #[test]
    fn sigma_estimate_ordering() {
        let ef = sin2_product();
        let dom = Domain::unit_box(2);
        let h = 1.0 / 128.0;
        let grid = Grid::new(dom.clone(), h).unwrap();
        let est = sigma_estimate(&ef, &dom, &grid, ZeroThreshold::default()).unwrap();
        assert!(est.certified_inradius <= est.measured_inradius + 2.0 * h);
        assert!(est.certified_inradius > 0.0);
    }
}
