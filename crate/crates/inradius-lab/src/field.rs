//! Exact eigenfunctions as finite plane-wave superpositions.
//!
//! With the convention `D = i∂`, a plane wave `e^{i x·ξ}` satisfies
//! `D^α e^{i x·ξ} = (−ξ)^α e^{i x·ξ}`, so `H e^{i x·ξ} = P(−ξ) e^{i x·ξ}`.
//! Frequencies may be complex: for symbols with complex coefficients the
//! equation `P(ξ) = λ` need not have real solutions, and the plane wave with
//! complex ξ is still an exact solution. Every constructor verifies the
//! eigenequation per term, so a sign-convention slip is a hard failure.
//!
//! An `Eigenfunction` carries a scalar prefactor (`scale`) separate from the
//! term amplitudes. Scaling a field multiplies the prefactor only; all
//! 0-homogeneous quantities downstream (certified/measured inradii, mass
//! ratios, the proof pipeline) are computed from the unscaled terms and are
//! therefore bit-identical under scaling.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::Domain;
use crate::symbol::{cpowu, MultiIndex, Symbol};

/// Construction-time relative tolerance for the eigenequation check.
pub const CONSTRUCTION_RESIDUAL_TOL: f64 = 1e-10;

/// One plane-wave term `a · e^{i x·ξ}` with complex amplitude and frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveTerm {
    pub amplitude: Complex64,
    pub frequency: Vec<Complex64>,
}

impl PlaneWaveTerm {
    pub fn new(amplitude: Complex64, frequency: Vec<Complex64>) -> Self {
        Self { amplitude, frequency }
    }

    /// Euclidean norm of the complex frequency vector.
    pub fn frequency_norm(&self) -> f64 {
        self.frequency.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Im ξ as a real vector; the exponent of |e^{i x·ξ}| is −x·Im ξ.
    pub fn im_frequency(&self) -> Vec<f64> {
        self.frequency.iter().map(|z| z.im).collect()
    }
}

/// A finite plane-wave superposition solving `Hψ = λψ` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    symbol: Symbol,
    lambda: Complex64,
    scale: Complex64,
    terms: Vec<PlaneWaveTerm>,
}

/// The spectral length scale of λ: `r_λ = |λ|^{−1/m}` and the unit-modulus
/// parameter `μ = λ/|λ|` of the rescaled equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralScale {
    pub lambda: Complex64,
    pub r_lambda: f64,
    pub mu: Complex64,
}

impl SpectralScale {
    pub fn new(lambda: Complex64, order: u32) -> Result<Self> {
        let modulus = lambda.norm();
        if modulus == 0.0 {
            return Err(Error::InvalidArgument("λ must be nonzero".into()));
        }
        Ok(Self {
            lambda,
            r_lambda: modulus.powf(-1.0 / order as f64),
            mu: lambda / modulus,
        })
    }
}

/// One entry of a synthesis recipe: a non-characteristic direction, which of
/// the m frequency roots to take, and the complex amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct RecipeTerm {
    pub direction: Vec<Complex64>,
    pub root_index: usize,
    pub amplitude: Complex64,
}

impl RecipeTerm {
    pub fn new(direction: Vec<Complex64>, root_index: usize, amplitude: Complex64) -> Self {
        Self { direction, root_index, amplitude }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recipe(pub Vec<RecipeTerm>);

impl Recipe {
    /// Parse `dir re im ... root k amp re im [; ...]`.
    pub fn parse(text: &str, dim: usize) -> Result<Recipe> {
        let mut terms = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let toks: Vec<&str> = part.split_whitespace().collect();
            let expect = 2 * dim + 6;
            if toks.len() != expect || toks[0] != "dir" {
                return Err(Error::Parse(format!(
                    "recipe term `{part}`: expected `dir <2d floats> root <k> amp <re> <im>`"
                )));
            }
            let mut direction = Vec::with_capacity(dim);
            for j in 0..dim {
                let re: f64 = toks[1 + 2 * j].parse().map_err(|_| bad_num(toks[1 + 2 * j]))?;
                let im: f64 = toks[2 + 2 * j].parse().map_err(|_| bad_num(toks[2 + 2 * j]))?;
                direction.push(Complex64::new(re, im));
            }
            if toks[1 + 2 * dim] != "root" {
                return Err(Error::Parse(format!("recipe term `{part}`: missing `root`")));
            }
            let root_index: usize = toks[2 + 2 * dim]
                .parse()
                .map_err(|_| bad_num(toks[2 + 2 * dim]))?;
            if toks[3 + 2 * dim] != "amp" {
                return Err(Error::Parse(format!("recipe term `{part}`: missing `amp`")));
            }
            let re: f64 = toks[4 + 2 * dim].parse().map_err(|_| bad_num(toks[4 + 2 * dim]))?;
            let im: f64 = toks[5 + 2 * dim].parse().map_err(|_| bad_num(toks[5 + 2 * dim]))?;
            terms.push(RecipeTerm::new(direction, root_index, Complex64::new(re, im)));
        }
        if terms.is_empty() {
            return Err(Error::Parse("recipe has no terms".into()));
        }
        Ok(Recipe(terms))
    }
}

fn bad_num(tok: &str) -> Error {
    Error::Parse(format!("bad number `{tok}`"))
}

/// All m frequency vectors ξ = t_j·v with P(ξ) = λ, for a homogeneous symbol
/// and a non-characteristic direction v. The t_j are the m-th roots of
/// λ/P(v), ordered by increasing principal argument (ties by modulus).
pub fn solve_frequencies(
    sym: &Symbol,
    lambda: Complex64,
    v: &[Complex64],
) -> Result<Vec<Vec<Complex64>>> {
    if !sym.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if v.len() != sym.dim() {
        return Err(Error::DimensionMismatch { expected: sym.dim(), got: v.len() });
    }
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if vnorm == 0.0 {
        return Err(Error::InvalidArgument("direction v must be nonzero".into()));
    }
    let m = sym.order();
    let pv = sym.eval(v)?;
    let char_floor = 1e-14 * sym.coeff_scale() * vnorm.max(1.0).powi(m as i32);
    if pv.norm() <= char_floor {
        return Err(Error::CharacteristicDirection(
            v.iter().map(|z| format!("{z}")).collect(),
        ));
    }
    let w = lambda / pv;
    let rho = w.norm().powf(1.0 / m as f64);
    let theta = w.arg();
    let mut roots: Vec<Complex64> = (0..m)
        .map(|j| {
            Complex64::from_polar(
                rho,
                (theta + 2.0 * std::f64::consts::PI * j as f64) / m as f64,
            )
        })
        .collect();
    roots.sort_by(|a, b| {
        a.arg()
            .total_cmp(&b.arg())
            .then_with(|| a.norm().total_cmp(&b.norm()))
    });

    let mut out = Vec::with_capacity(m as usize);
    for t in roots {
        let xi: Vec<Complex64> = v.iter().map(|&z| t * z).collect();
        let val = sym.eval(&xi)?;
        let tol = 1e-12 * (1.0 + lambda.norm() + eval_scale(sym, &xi));
        let residual = (val - lambda).norm();
        if !(residual <= tol) {
            return Err(Error::ResidualCheck { term: 0, residual, tolerance: tol });
        }
        out.push(xi);
    }
    Ok(out)
}

/// Natural magnitude of a symbol evaluation, Σ |c_α|·‖ξ‖^{|α|}.
fn eval_scale(sym: &Symbol, xi: &[Complex64]) -> f64 {
    let n = xi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    sym.coeffs()
        .iter()
        .map(|(a, c)| c.norm() * n.powi(a.order() as i32))
        .sum()
}

/// Synthesize an eigenfunction from (direction, root, amplitude) entries.
/// Each solved frequency is negated so that, under `D = i∂`, the advertised
/// λ is the true eigenvalue.
pub fn synth(sym: &Symbol, lambda: Complex64, recipe: &Recipe) -> Result<Eigenfunction> {
    if recipe.0.is_empty() {
        return Err(Error::InvalidArgument("recipe must be non-empty".into()));
    }
    let mut terms = Vec::with_capacity(recipe.0.len());
    for entry in &recipe.0 {
        let roots = solve_frequencies(sym, lambda, &entry.direction)?;
        if entry.root_index >= roots.len() {
            return Err(Error::InvalidArgument(format!(
                "root index {} out of range [0, {})",
                entry.root_index,
                roots.len()
            )));
        }
        let frequency: Vec<Complex64> =
            roots[entry.root_index].iter().map(|&z| -z).collect();
        terms.push(PlaneWaveTerm::new(entry.amplitude, frequency));
    }
    Eigenfunction::from_terms(sym.clone(), lambda, terms)
}

impl Eigenfunction {
    /// Build from explicit terms, verifying `P(−ξ_k) = λ` for every term.
    pub fn from_terms(
        symbol: Symbol,
        lambda: Complex64,
        terms: Vec<PlaneWaveTerm>,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("eigenfunction needs ≥ 1 term".into()));
        }
        for (k, term) in terms.iter().enumerate() {
            if term.frequency.len() != symbol.dim() {
                return Err(Error::DimensionMismatch {
                    expected: symbol.dim(),
                    got: term.frequency.len(),
                });
            }
            let neg: Vec<Complex64> = term.frequency.iter().map(|&z| -z).collect();
            let val = symbol.eval(&neg)?;
            let tol =
                CONSTRUCTION_RESIDUAL_TOL * (1.0 + lambda.norm() + eval_scale(&symbol, &neg));
            let residual = (val - lambda).norm();
            if !(residual <= tol) {
                return Err(Error::ResidualCheck { term: k, residual, tolerance: tol });
            }
        }
        Ok(Self { symbol, lambda, scale: Complex64::new(1.0, 0.0), terms })
    }

    /// Build without the eigenequation check. For negative controls and
    /// diagnostics only.
    pub fn from_terms_unchecked(
        symbol: Symbol,
        lambda: Complex64,
        terms: Vec<PlaneWaveTerm>,
    ) -> Self {
        Self { symbol, lambda, scale: Complex64::new(1.0, 0.0), terms }
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn terms(&self) -> &[PlaneWaveTerm] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.symbol.dim()
    }

    pub fn spectral_scale(&self) -> Result<SpectralScale> {
        SpectralScale::new(self.lambda, self.symbol.order())
    }

    /// The field multiplied by a complex constant. Only the scalar prefactor
    /// changes; term data is untouched.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.scale *= c;
        out
    }

    /// ψ(x) without the scalar prefactor.
    pub fn eval_unscaled(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim());
        self.terms
            .iter()
            .filter(|t| t.amplitude != Complex64::new(0.0, 0.0))
            .map(|t| {
                let dot: Complex64 = x
                    .iter()
                    .zip(&t.frequency)
                    .map(|(&xj, &fj)| fj * xj)
                    .sum();
                t.amplitude * (Complex64::i() * dot).exp()
            })
            .sum()
    }

    /// ψ(x).
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.scale * self.eval_unscaled(x)
    }

    /// D^γ ψ(x) = Σ_k a_k (−ξ_k)^γ e^{i x·ξ_k}, exact.
    pub fn eval_derivative(&self, gamma: &MultiIndex, x: &[f64]) -> Result<Complex64> {
        if gamma.dim() != self.dim() || x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: gamma.dim().max(x.len()) });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if t.amplitude == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dot: Complex64 = x
                .iter()
                .zip(&t.frequency)
                .map(|(&xj, &fj)| fj * xj)
                .sum();
            let factor = gamma
                .entries()
                .iter()
                .zip(&t.frequency)
                .fold(Complex64::new(1.0, 0.0), |acc, (&g, &fj)| {
                    acc * cpowu(-fj, g)
                });
            acc += t.amplitude * factor * (Complex64::i() * dot).exp();
        }
        Ok(self.scale * acc)
    }

    /// The spatial gradient ∂ψ(x) (not D), without the prefactor.
    pub fn eval_gradient_unscaled(&self, x: &[f64]) -> Vec<Complex64> {
        let mut grad = vec![Complex64::new(0.0, 0.0); self.dim()];
        for t in &self.terms {
            if t.amplitude == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dot: Complex64 = x
                .iter()
                .zip(&t.frequency)
                .map(|(&xj, &fj)| fj * xj)
                .sum();
            let e = t.amplitude * (Complex64::i() * dot).exp();
            for (g, &fj) in grad.iter_mut().zip(&t.frequency) {
                *g += e * Complex64::i() * fj;
            }
        }
        grad
    }

    /// |∇ψ(x)| without the prefactor.
    pub fn gradient_norm_unscaled(&self, x: &[f64]) -> f64 {
        self.eval_gradient_unscaled(x)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// |(Hψ)(x) − λψ(x)|, with H applied through `eval_derivative` summed
    /// against the coefficient map. This route is independent of the
    /// construction-time per-term check.
    pub fn residual(&self, x: &[f64]) -> Result<f64> {
        let mut h_psi = Complex64::new(0.0, 0.0);
        for (alpha, &c) in self.symbol.coeffs() {
            h_psi += c * self.eval_derivative(alpha, x)?;
        }
        Ok((h_psi - self.lambda * self.eval(x)).norm())
    }

    /// The residual contract scale at x:
    /// `1e−10 · (1+|λ|) · Σ|a_k| · max_k e^{−x·Im ξ_k}`.
    pub fn residual_tolerance(&self, x: &[f64]) -> f64 {
        let amp_sum: f64 = self.terms.iter().map(|t| t.amplitude.norm()).sum();
        let max_exp = self
            .terms
            .iter()
            .map(|t| {
                let e: f64 = x.iter().zip(t.im_frequency()).map(|(&xj, wj)| -xj * wj).sum();
                e.exp()
            })
            .fold(0.0f64, f64::max);
        1e-10 * (1.0 + self.lambda.norm()) * self.scale.norm() * amp_sum * max_exp
    }

    /// Rigorous upper bound for `sup_domain |∇ψ|`, without the prefactor:
    /// Σ_k |a_k| ‖ξ_k‖ e^{S_k} with S_k the exact sup of −x·Im ξ_k.
    pub fn gradient_sup_bound_unscaled(&self, domain: &Domain) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let s = domain.sup_neg_dot(&t.im_frequency());
                t.amplitude.norm() * t.frequency_norm() * s.exp()
            })
            .sum()
    }

    /// Rigorous upper bound for `sup_domain |∇ψ|` including the prefactor.
    pub fn gradient_sup_bound(&self, domain: &Domain) -> f64 {
        self.scale.norm() * self.gradient_sup_bound_unscaled(domain)
    }

    /// The unit-scale field `u(y) = r^{d/2} ψ(x₀ + r y)/‖ψ‖` as a genuine
    /// eigenfunction with frequencies r·ξ_k and eigenvalue μ = λ/|λ|.
    ///
    /// The rescaling converts the eigenequation to eigenvalue r^m·λ, which
    /// equals the unit-modulus μ only at the wavelength scale, so `r` must be
    /// r_λ. `unscaled_norm` must be ‖ψ‖_{L²(B(x₀,r))} computed WITHOUT the
    /// scalar prefactor; u is then independent of the prefactor
    /// (0-homogeneous).
    pub fn rescaled(&self, center: &[f64], r: f64, unscaled_norm: f64) -> Result<Eigenfunction> {
        if center.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: center.len() });
        }
        if !(r > 0.0) || !(unscaled_norm > 0.0) {
            return Err(Error::InvalidArgument("rescaling needs r > 0 and norm > 0".into()));
        }
        let scale = SpectralScale::new(self.lambda, self.symbol.order())?;
        if (r / scale.r_lambda - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "rescaling radius {} must be the wavelength scale r_λ = {}",
                r, scale.r_lambda
            )));
        }
        let d_half = self.dim() as f64 / 2.0;
        let factor = r.powf(d_half) / unscaled_norm;
        let terms: Vec<PlaneWaveTerm> = self
            .terms
            .iter()
            .map(|t| {
                let dot: Complex64 = center
                    .iter()
                    .zip(&t.frequency)
                    .map(|(&cj, &fj)| fj * cj)
                    .sum();
                let amplitude = t.amplitude * factor * (Complex64::i() * dot).exp();
                let frequency: Vec<Complex64> = t.frequency.iter().map(|&z| z * r).collect();
                PlaneWaveTerm::new(amplitude, frequency)
            })
            .collect();
        Eigenfunction::from_terms(self.symbol.clone(), scale.mu, terms)
    }

    /// Serialize (the prefactor is folded into the amplitudes).
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "dim={} lambda={} {}", self.dim(), self.lambda.re, self.lambda.im);
        for t in &self.terms {
            let a = self.scale * t.amplitude;
            let xi: Vec<String> = t
                .frequency
                .iter()
                .flat_map(|z| [z.re.to_string(), z.im.to_string()])
                .collect();
            let _ = writeln!(out, "term: {} {} ; xi = {}", a.re, a.im, xi.join(" "));
        }
        out
    }

    pub fn from_text(text: &str, symbol: &Symbol) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty field file".into()))?;
        let mut dim = None;
        let mut lam: Vec<f64> = Vec::new();
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("dim=") {
                dim = Some(v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = tok.strip_prefix("lambda=") {
                lam.push(v.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))?);
            } else {
                lam.push(tok.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("header missing dim=".into()))?;
        if dim != symbol.dim() {
            return Err(Error::DimensionMismatch { expected: symbol.dim(), got: dim });
        }
        if lam.len() != 2 {
            return Err(Error::Parse("header needs lambda=<re> <im>".into()));
        }
        let lambda = Complex64::new(lam[0], lam[1]);
        let mut terms = Vec::new();
        for line in lines {
            let body = line
                .strip_prefix("term:")
                .ok_or_else(|| Error::Parse(format!("expected `term:` line, got `{line}`")))?;
            let (amp_part, xi_part) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing `;` in `{line}`")))?;
            let amp_nums: Vec<f64> = amp_part
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            let xi_body = xi_part
                .trim()
                .strip_prefix("xi")
                .map(|s| s.trim_start().strip_prefix('=').unwrap_or(s))
                .ok_or_else(|| Error::Parse(format!("missing `xi =` in `{line}`")))?;
            let xi_nums: Vec<f64> = xi_body
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if amp_nums.len() != 2 || xi_nums.len() != 2 * dim {
                return Err(Error::Parse(format!("malformed term line `{line}`")));
            }
            let frequency: Vec<Complex64> = (0..dim)
                .map(|j| Complex64::new(xi_nums[2 * j], xi_nums[2 * j + 1]))
                .collect();
            terms.push(PlaneWaveTerm::new(Complex64::new(amp_nums[0], amp_nums[1]), frequency));
        }
        Eigenfunction::from_terms(symbol.clone(), lambda, terms)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &std::path::Path, symbol: &Symbol) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?, symbol)
    }
}
