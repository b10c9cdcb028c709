//! Constant-coefficient elliptic symbols.
//!
//! A symbol is the polynomial `P(ξ) = Σ c_α ξ^α` attached to the operator
//! `H = Σ c_α D^α` with `D = i∂`. Ellipticity means `|P_m(ξ)| ≥ c·|ξ|^m`
//! on real ξ, where `P_m` is the principal (top-order) part. The constant
//! is estimated by sampling unit directions; it is an empirical estimate,
//! not a certified lower bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Floor below which a sampled |P_m(ω)| is reported as non-elliptic.
pub const NON_ELLIPTIC_FLOOR: f64 = 1e-10;

/// Integer power of a complex number by repeated multiplication.
pub fn cpowu(z: Complex64, n: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// A multi-index α = (α₁, …, α_d) with |α| = α₁ + ⋯ + α_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("multi-index needs d ≥ 1".into()));
        }
        Ok(Self { entries })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            entries: vec![0; dim],
        }
    }

    /// Unit multi-index e_j.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut entries = vec![0; dim];
        entries[axis] = 1;
        Self { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// |α|, the total order.
    pub fn order(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// ξ^α = Π ξ_j^{α_j}, extended to complex arguments.
    pub fn monomial(&self, xi: &[Complex64]) -> Complex64 {
        self.entries
            .iter()
            .zip(xi)
            .fold(Complex64::new(1.0, 0.0), |acc, (&a, &z)| {
                acc * cpowu(z, a)
            })
    }
}

// Graded lexicographic order: by |α| first, then lexicographic. This is the
// canonical serialization order for coefficient maps.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A constant-coefficient symbol with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    dim: usize,
    order: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
    homogeneous: bool,
    ell_const: Option<f64>,
}

impl Symbol {
    /// Build a symbol from a coefficient map. Zero coefficients are dropped;
    /// the order is the maximal |α| carrying a nonzero coefficient.
    pub fn new(dim: usize, coeffs: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be ≥ 1".into()));
        }
        let mut map = BTreeMap::new();
        for (alpha, c) in coeffs {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            if c != Complex64::new(0.0, 0.0) {
                map.insert(alpha, c);
            }
        }
        let order = map
            .keys()
            .map(|a| a.order())
            .max()
            .ok_or_else(|| Error::InvalidArgument("symbol needs a nonzero coefficient".into()))?;
        let homogeneous = map.keys().all(|a| a.order() == order);
        Ok(Self {
            dim,
            order,
            coeffs: map,
            homogeneous,
            ell_const: None,
        })
    }

    /// The Laplacian symbol P(ξ) = ξ₁² + ⋯ + ξ_d².
    pub fn laplacian(dim: usize) -> Self {
        let coeffs = (0..dim).map(|j| {
            let mut entries = vec![0u32; dim];
            entries[j] = 2;
            (MultiIndex { entries }, Complex64::new(1.0, 0.0))
        });
        Self::new(dim, coeffs).expect("laplacian is a valid symbol")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The order m.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Complex64> {
        &self.coeffs
    }

    pub fn ell_const(&self) -> Option<f64> {
        self.ell_const
    }

    /// Σ |c_α| over all terms; the natural coefficient scale.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// Σ |c_α| over lower-order terms (|α| ≤ m−1).
    pub fn lower_order_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .filter(|(a, _)| a.order() < self.order)
            .map(|(_, c)| c.norm())
            .sum()
    }

    /// Evaluate P(ξ) = Σ c_α ξ^α at a complex argument.
    pub fn eval(&self, xi: &[Complex64]) -> Result<Complex64> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(a, c)| c * a.monomial(xi))
            .sum())
    }

    /// Evaluate the principal part P_m(ξ) (top-order terms only).
    pub fn eval_principal(&self, xi: &[Complex64]) -> Result<Complex64> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .filter(|(a, _)| a.order() == self.order)
            .map(|(a, c)| c * a.monomial(xi))
            .sum())
    }

    /// Evaluate at a real argument.
    pub fn eval_real(&self, xi: &[f64]) -> Result<Complex64> {
        let z: Vec<Complex64> = xi.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.eval(&z)
    }

    /// |P(t·v) − t^m·P(v)| for a homogeneous symbol. Zero up to round-off.
    pub fn homogeneity_residual(&self, v: &[Complex64], t: Complex64) -> Result<f64> {
        if !self.homogeneous {
            return Err(Error::NotHomogeneous);
        }
        if v.iter().all(|z| z.norm() == 0.0) {
            return Err(Error::InvalidArgument("v must be nonzero".into()));
        }
        let tv: Vec<Complex64> = v.iter().map(|&z| t * z).collect();
        let lhs = self.eval(&tv)?;
        let rhs = cpowu(t, self.order) * self.eval(v)?;
        Ok((lhs - rhs).norm())
    }

    /// Sampled minimum of |P_m(ω)| over unit directions; the result is stored
    /// in `ell_const`. The refinement level doubles the sampling density per
    /// step and the minimum accumulates across levels, so the output is
    /// monotone non-increasing in `refinement`.
    pub fn estimate_ellipticity(&mut self, refinement: u32) -> Result<f64> {
        let (min, witness) = self.sampled_ellipticity(refinement)?;
        if min < NON_ELLIPTIC_FLOOR {
            return Err(Error::NonElliptic {
                witness,
                value: min,
                floor: NON_ELLIPTIC_FLOOR,
            });
        }
        self.ell_const = Some(min);
        Ok(min)
    }

    /// Non-mutating core of `estimate_ellipticity`: (min |P_m(ω)|, argmin ω).
    pub fn sampled_ellipticity(&self, refinement: u32) -> Result<(f64, Vec<f64>)> {
        if refinement == 0 {
            return Err(Error::InvalidArgument("refinement must be ≥ 1".into()));
        }
        let mut best = f64::INFINITY;
        let mut witness = vec![0.0; self.dim];
        for level in 1..=refinement {
            for omega in unit_directions(self.dim, level)? {
                let z: Vec<Complex64> = omega.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                let val = self.eval_principal(&z)?.norm();
                if val < best {
                    best = val;
                    witness = omega;
                }
            }
        }
        Ok((best, witness))
    }

    /// Serialize: header `dim=<d> order=<m>`, one line per coefficient in
    /// graded-lex order: `alpha = a1 ... ad ; re im`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim={} order={}", self.dim, self.order);
        for (a, c) in &self.coeffs {
            let idx: Vec<String> = a.entries().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "alpha = {} ; {} {}", idx.join(" "), c.re, c.im);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty symbol file".into()))?;
        let mut dim = None;
        let mut order = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("dim=") {
                dim = Some(v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = tok.strip_prefix("order=") {
                order = Some(v.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("header missing dim=".into()))?;
        let order = order.ok_or_else(|| Error::Parse("header missing order=".into()))?;
        let mut coeffs = Vec::new();
        for line in lines {
            let body = line
                .strip_prefix("alpha")
                .map(|s| s.trim_start().strip_prefix('=').unwrap_or(s).trim())
                .ok_or_else(|| Error::Parse(format!("expected `alpha = ...` line, got `{line}`")))?;
            let (idx_part, coeff_part) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing `;` in `{line}`")))?;
            let entries: Vec<u32> = idx_part
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            let nums: Vec<f64> = coeff_part
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if entries.len() != dim || nums.len() != 2 {
                return Err(Error::Parse(format!("malformed coefficient line `{line}`")));
            }
            coeffs.push((MultiIndex::new(entries)?, Complex64::new(nums[0], nums[1])));
        }
        let sym = Self::new(dim, coeffs)?;
        if sym.order != order {
            return Err(Error::Parse(format!(
                "header order={} disagrees with coefficients (max |α| = {})",
                order, sym.order
            )));
        }
        Ok(sym)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Deterministic unit directions on S^{d−1} at a refinement level.
///
/// d=1: {+1, −1}. d=2: 64·2^{level−1} uniform angles (nested as the level
/// doubles). d=3: Fibonacci sphere with 256·2^{level−1} points.
pub fn unit_directions(dim: usize, level: u32) -> Result<Vec<Vec<f64>>> {
    match dim {
        1 => Ok(vec![vec![1.0], vec![-1.0]]),
        2 => {
            let n = 64usize << (level - 1);
            Ok((0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                    vec![theta.cos(), theta.sin()]
                })
                .collect())
        }
        3 => {
            let n = 256usize << (level - 1);
            let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
            Ok((0..n)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / (n as f64);
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let phi = 2.0 * std::f64::consts::PI * (k as f64) / golden;
                    vec![rho * phi.cos(), rho * phi.sin(), z]
                })
                .collect())
        }
        d => Err(Error::InvalidArgument(format!(
            "ellipticity sampling implemented for d ≤ 3, got d = {d}"
        ))),
    }
}
