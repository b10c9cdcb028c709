//! Counting integer frequencies nearly resonant with λ:
//! N_λ = #{ξ ∈ ℤ^d : |P(ξ) − λ| ≤ |ξ|^{m−1+δ}}, δ = 1/2.
//!
//! The enumeration radius comes from ellipticity: beyond R₀ the full symbol
//! dominates, |P(ξ)| ≥ (c₀/2)|ξ|^m, and the defining inequality forces
//! (c₀/2)|ξ|^m ≤ |λ| + |ξ|^{m−1+δ}, which fails for |ξ| > R₁. The counter
//! enumerates up to 2R₁ and requires the margin shell (R₁, 2R₁] to be empty,
//! validating the radius empirically (c₀ is a sampled estimate).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Fixed exponent offset δ of the resonance condition.
pub const DELTA: f64 = 0.5;

/// Enumeration budget: the integer box may not exceed this many points.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct LatticeCount {
    pub lambda: Complex64,
    pub delta: f64,
    /// R₁, the radius past which no witness can exist (empirically checked
    /// out to 2R₁).
    pub enumeration_radius: f64,
    pub count: usize,
    pub witnesses: Vec<Vec<i64>>,
}

/// Count lattice witnesses with the default δ = 1/2.
pub fn count_lattice(sym: &Symbol, lambda: Complex64) -> Result<LatticeCount> {
    count_lattice_with_delta(sym, lambda, DELTA)
}

pub fn count_lattice_with_delta(
    sym: &Symbol,
    lambda: Complex64,
    delta: f64,
) -> Result<LatticeCount> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument("δ must lie in (0, 1)".into()));
    }
    let m = sym.order();
    if m < 1 {
        return Err(Error::InvalidArgument("symbol order must be ≥ 1".into()));
    }
    let (c0, witness) = sym.sampled_ellipticity(4)?;
    if c0 < crate::symbol::NON_ELLIPTIC_FLOOR {
        return Err(Error::NonElliptic {
            witness,
            value: c0,
            floor: crate::symbol::NON_ELLIPTIC_FLOOR,
        });
    }
    let r0 = dominance_radius(sym, c0)?;
    let r1 = resonance_radius(sym, c0, lambda.norm(), delta)?.max(r0);
    let d = sym.dim();
    let bound = (2.0 * r1).ceil() as i64;
    let points = (2 * bound as u128 + 1).pow(d as u32);
    if points > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded { r1, points, budget: ENUMERATION_BUDGET });
    }

    let exponent = m as f64 - 1.0 + delta;
    let outer = 2.0 * r1;
    // Slabs over the first axis, merged in slab order.
    type SlabHits = (Vec<Vec<i64>>, Vec<Vec<i64>>);
    let slabs: Vec<Result<SlabHits>> = (-bound..=bound)
        .into_par_iter()
        .map(|first| {
            let mut inner_hits: Vec<Vec<i64>> = Vec::new();
            let mut shell_hits: Vec<Vec<i64>> = Vec::new();
            let mut xi = vec![0i64; d];
            xi[0] = first;
            enumerate_slab(sym, lambda, exponent, r1, outer, &mut xi, 1, &mut inner_hits, &mut shell_hits)?;
            Ok((inner_hits, shell_hits))
        })
        .collect();

    let mut witnesses = Vec::new();
    for slab in slabs {
        let (inner_hits, shell_hits) = slab?;
        if let Some(w) = shell_hits.into_iter().next() {
            return Err(Error::MarginShell { witness: w, r1, r2: 2.0 * r1 });
        }
        witnesses.extend(inner_hits);
    }
    Ok(LatticeCount {
        lambda,
        delta,
        enumeration_radius: r1,
        count: witnesses.len(),
        witnesses,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_slab(
    sym: &Symbol,
    lambda: Complex64,
    exponent: f64,
    r1: f64,
    outer: f64,
    xi: &mut Vec<i64>,
    axis: usize,
    inner_hits: &mut Vec<Vec<i64>>,
    shell_hits: &mut Vec<Vec<i64>>,
) -> Result<()> {
    if axis == xi.len() {
        let norm = (xi.iter().map(|&k| (k * k) as f64).sum::<f64>()).sqrt();
        if norm > outer {
            return Ok(());
        }
        let z: Vec<Complex64> = xi.iter().map(|&k| Complex64::new(k as f64, 0.0)).collect();
        let val = sym.eval(&z)?;
        if (val - lambda).norm() <= norm.powf(exponent) {
            if norm <= r1 {
                inner_hits.push(xi.clone());
            } else {
                shell_hits.push(xi.clone());
            }
        }
        return Ok(());
    }
    let bound = outer.ceil() as i64;
    for k in -bound..=bound {
        xi[axis] = k;
        enumerate_slab(sym, lambda, exponent, r1, outer, xi, axis + 1, inner_hits, shell_hits)?;
    }
    Ok(())
}

/// Smallest radius with |P(ξ)| ≥ (c₀/2)|ξ|^m beyond it. Homogeneous symbols
/// satisfy the estimate everywhere; otherwise bound the lower-order part by
/// C_low·(1+t)^{m−1} and bisect (c₀/2)t^m = C_low·(1+t)^{m−1} on [1, 10⁶].
fn dominance_radius(sym: &Symbol, c0: f64) -> Result<f64> {
    let c_low = sym.lower_order_scale();
    if c_low == 0.0 {
        return Ok(1.0);
    }
    let m = sym.order() as i32;
    let g = |t: f64| (c0 / 2.0) * t.powi(m) - c_low * (1.0 + t).powi(m - 1);
    if g(1.0) >= 0.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (1.0f64, 1e6f64);
    if g(hi) < 0.0 {
        return Err(Error::InvalidArgument(
            "lower-order terms dominate out to 10^6; symbol too degenerate".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Smallest t with (c₀/2)t^m ≥ |λ| + t^{m−1+δ}, found by doubling then
/// bisection.
fn resonance_radius(sym: &Symbol, c0: f64, lambda_abs: f64, delta: f64) -> Result<f64> {
    let m = sym.order() as f64;
    let phi = |t: f64| (c0 / 2.0) * t.powf(m) - t.powf(m - 1.0 + delta) - lambda_abs;
    let mut hi = 1.0f64;
    let mut steps = 0;
    while phi(hi) <= 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 200 {
            return Err(Error::InvalidArgument("resonance radius does not close".into()));
        }
    }
    let mut lo = hi / 2.0;
    if phi(lo) > 0.0 {
        lo = 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::MultiIndex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Straight nested loops, no slabs, no radius machinery: the oracle.
    pub(crate) fn brute_force(
        sym: &Symbol,
        lambda: Complex64,
        delta: f64,
        radius: f64,
    ) -> Vec<Vec<i64>> {
        let d = sym.dim();
        let b = radius.ceil() as i64;
        let exponent = sym.order() as f64 - 1.0 + delta;
        let mut hits = Vec::new();
        let mut xi = vec![0i64; d];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            sym: &Symbol,
            lambda: Complex64,
            exponent: f64,
            radius: f64,
            b: i64,
            xi: &mut Vec<i64>,
            axis: usize,
            hits: &mut Vec<Vec<i64>>,
        ) {
            if axis == xi.len() {
                let norm = (xi.iter().map(|&k| (k * k) as f64).sum::<f64>()).sqrt();
                if norm > radius {
                    return;
                }
                let z: Vec<Complex64> =
                    xi.iter().map(|&k| Complex64::new(k as f64, 0.0)).collect();
                let val = sym.eval(&z).unwrap();
                if (val - lambda).norm() <= norm.powf(exponent) {
                    hits.push(xi.clone());
                }
                return;
            }
            for k in -b..=b {
                xi[axis] = k;
                rec(sym, lambda, exponent, radius, b, xi, axis + 1, hits);
            }
        }
        rec(sym, lambda, exponent, radius, b, &mut xi, 0, &mut hits);
        hits
    }

    #[test]
    fn laplacian_lambda_one_counts_eight() {
        // ||ξ|²−1| ≤ |ξ|^{3/2}: the four |ξ|²=1 points and four |ξ|²=2
        // points; the origin fails (1 > 0).
        let sym = Symbol::laplacian(2);
        let res = count_lattice(&sym, c(1.0, 0.0)).unwrap();
        assert_eq!(res.count, 8, "witnesses: {:?}", res.witnesses);
        let oracle = brute_force(&sym, c(1.0, 0.0), DELTA, 10.0);
        assert_eq!(oracle.len(), 8);
        let mut a = res.witnesses.clone();
        let mut b = oracle;
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn origin_counts_for_lambda_zero() {
        let sym = Symbol::laplacian(2);
        let res = count_lattice(&sym, c(0.0, 0.0)).unwrap();
        assert!(res.witnesses.contains(&vec![0, 0]));
        let mut a = res.witnesses.clone();
        let mut b = brute_force(&sym, c(0.0, 0.0), DELTA, 2.0 * res.enumeration_radius);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn inhomogeneous_symbol_counts() {
        // H = Δ + lower-order term.
        let sym = Symbol::new(
            2,
            [
                (MultiIndex::new(vec![2, 0]).unwrap(), c(1.0, 0.0)),
                (MultiIndex::new(vec![0, 2]).unwrap(), c(1.0, 0.0)),
                (MultiIndex::new(vec![1, 0]).unwrap(), c(0.3, 0.1)),
            ],
        )
        .unwrap();
        let res = count_lattice(&sym, c(2.0, 0.0)).unwrap();
        let mut a = res.witnesses.clone();
        let mut b = brute_force(&sym, c(2.0, 0.0), DELTA, 2.0 * res.enumeration_radius);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_error_for_huge_lambda() {
        let sym = Symbol::laplacian(3);
        assert!(matches!(
            count_lattice(&sym, c(1e8, 0.0)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn delta_must_be_in_range() {
        let sym = Symbol::laplacian(2);
        assert!(count_lattice_with_delta(&sym, c(1.0, 0.0), 1.5).is_err());
    }
}
