//! The proof pipeline run as an algorithm, λ-sweeps, and the empirical
//! uniform Lipschitz constant.
//!
//! One run: pick a good ball at scale r = |λ|^{−1/m} inside Ω_{−r}, rescale
//! the field to the unit ball (eigenvalue μ = λ/|λ|), find the grid argmax
//! of |u| over B(0,1/2), bound its amplitude from below by the interior
//! mass ratio, and inscribe a Lipschitz nonvanishing ball of radius
//! ρ₀ = min{|u(y₀)|/2L, 1/4}. Mapping back gives a constructive inradius
//! r·ρ₀ and the run's effective constant ρ₀/√(M/N).
//!
//! The abstract constant in the bound rests on a non-explicit interior
//! derivative estimate, so every check here is positivity and ordering,
//! never comparison with a fixed numeric constant; the estimator below
//! reports an empirical stand-in for the uniform Lipschitz constant.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{
    certified_inradius_from_samples, certify_at, measured_inradius_from_samples,
    sample_in_ball, InradiusCertificate, ZeroThreshold,
};
use crate::cover::{good_ball, GoodBall, GoodBallResult};
use crate::error::{Error, Result};
use crate::field::{solve_frequencies, synth, Eigenfunction, PlaneWaveTerm, Recipe};
use crate::geom::{ball_volume, l2_mass_from_samples, mass_report_from_samples, Domain, Grid};
use crate::symbol::Symbol;

/// The full trace of one proof-pipeline run.
#[derive(Debug, Clone)]
pub struct ProofRun {
    /// r = r_λ.
    pub r: f64,
    pub good_ball: GoodBall,
    /// u, the rescaled unit-ball field with Hu = μu.
    pub rescaled: Eigenfunction,
    pub mu: Complex64,
    /// y₀, the grid argmax of |u| over B(0,1/2).
    pub amplitude_point: Vec<f64>,
    /// |u(y₀)|.
    pub amplitude: f64,
    /// (M/(2·5^d·N))^{1/2} / vol(B(0,1/2))^{1/2}.
    pub amp_bound: f64,
    /// Rigorous bound for sup |∇u| over B(0,3/4).
    pub l_emp: f64,
    /// min{amplitude/(2·l_emp), 1/4}.
    pub rho0: f64,
    /// r·ρ₀.
    pub constructive_inradius: f64,
    /// ρ₀/√(M/N): the run's effective constant.
    pub constructive_constant: f64,
    /// x₀ + r·y₀, the center of the constructive ball in Ω.
    pub ball_center: Vec<f64>,
    pub certificate: InradiusCertificate,
    /// √(M/N).
    pub mass_ratio: f64,
}

impl ProofRun {
    /// Dense nonvanishing re-sampling of the constructive ball in the
    /// rescaled field: `n` points, floor amplitude/2·(1−1e−6).
    pub fn verify_dense(&self, n: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let floor = 0.5 * self.amplitude * (1.0 - 1e-6);
        let d = self.amplitude_point.len();
        for _ in 0..n {
            let p = sample_in_ball(&mut rng, &self.amplitude_point, self.rho0 * (1.0 - 1e-12), d);
            let value = self.rescaled.eval_unscaled(&p).norm();
            if !(value >= floor) {
                return Err(Error::CertificationFailure { probe: p, value, floor });
            }
        }
        Ok(())
    }
}

/// Pipeline outcome: a run, or the trivial marker when M = 0 (the bound is
/// then vacuous, as the mass ratio vanishes).
#[derive(Debug, Clone)]
pub enum ProofOutcome {
    Run(Box<ProofRun>),
    Trivial,
}

pub fn run_proof_pipeline(ef: &Eigenfunction, dom: &Domain, grid: &Grid) -> Result<ProofOutcome> {
    let abs = grid.sample_abs_unscaled(ef);
    run_proof_pipeline_from_samples(ef, &abs, dom, grid)
}

pub fn run_proof_pipeline_from_samples(
    ef: &Eigenfunction,
    abs_unscaled: &[f64],
    dom: &Domain,
    grid: &Grid,
) -> Result<ProofOutcome> {
    let spectral = ef.spectral_scale()?;
    if spectral.lambda.norm() < 1.0 {
        return Err(Error::HypothesisViolation(format!(
            "|λ| = {} < 1",
            spectral.lambda.norm()
        )));
    }
    let r = spectral.r_lambda;
    let d = ef.dim();

    let n_mass = l2_mass_from_samples(abs_unscaled, dom, grid);
    if n_mass == 0.0 {
        return Err(Error::ZeroField);
    }
    let interior = match dom.r_interior(r) {
        Some(e) => e,
        None => return Ok(ProofOutcome::Trivial),
    };
    let m_mass = l2_mass_from_samples(abs_unscaled, &interior, grid);
    if m_mass == 0.0 {
        return Ok(ProofOutcome::Trivial);
    }
    let mass_ratio = (m_mass / n_mass).sqrt();

    // Step 1: good ball at scale r with f = |ψ|².
    let f: Vec<f64> = abs_unscaled.iter().map(|&v| v * v).collect();
    let ball = match good_ball(grid, &f, &interior, r)? {
        GoodBallResult::Ball(b) => b,
        GoodBallResult::Vacuous => return Ok(ProofOutcome::Trivial),
    };
    let x0 = ball.center.clone();
    let bd = dom.dist_to_complement(&x0)?;
    if bd < r * (1.0 - 1e-9) {
        return Err(Error::OrderingChain(format!(
            "good ball escapes the domain: dist {bd} < r {r}"
        )));
    }

    // Step 2: rescale to the unit ball and verify Hu = μu.
    let norm_u = ball.outer_mass.sqrt();
    let u = ef.rescaled(&x0, r, norm_u)?;
    let mu = u.lambda();
    if (mu.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::OrderingChain(format!("|μ| = {} ≠ 1", mu.norm())));
    }
    for probe in unit_ball_probes(d) {
        let res = u.residual(&probe)?;
        let tol = u.residual_tolerance(&probe);
        if !(res <= tol) {
            return Err(Error::ResidualCheck { term: 0, residual: res, tolerance: tol });
        }
    }

    // Step 3: grid argmax of |u| over B(0,1/2), which is the argmax of |ψ|
    // over the cells in B(x₀, r/2) pulled back to unit coordinates.
    let (argmax_lin, _) = ball_argmax(grid, abs_unscaled, &x0, r / 2.0).ok_or_else(|| {
        Error::InvalidArgument("no grid cells inside the half good ball".into())
    })?;
    let x_star = grid.center(argmax_lin);
    let y0: Vec<f64> = x_star.iter().zip(&x0).map(|(&a, &b)| (a - b) / r).collect();
    let amplitude = u.eval_unscaled(&y0).norm();
    let n_d = 5f64.powi(d as i32);
    let amp_bound = (m_mass / (2.0 * n_d * n_mass)).sqrt() / ball_volume(d, 0.5).sqrt();
    if !(amplitude >= amp_bound * (1.0 - 1e-12)) {
        return Err(Error::OrderingChain(format!(
            "amplitude {amplitude} below bound {amp_bound}"
        )));
    }

    // Step 4: uniform Lipschitz bound on B(0,3/4), then the certified ball.
    let three_quarter = Domain::new_ball(vec![0.0; d], 0.75)?;
    let l_emp = u.gradient_sup_bound_unscaled(&three_quarter);
    let rho0 = (amplitude / (2.0 * l_emp)).min(0.25);
    let certificate = certify_at(&u, &three_quarter, &y0, l_emp)?;
    let constructive_inradius = r * rho0;
    let constructive_constant = rho0 / mass_ratio;

    Ok(ProofOutcome::Run(Box::new(ProofRun {
        r,
        good_ball: ball,
        rescaled: u,
        mu,
        amplitude_point: y0,
        amplitude,
        amp_bound,
        l_emp,
        rho0,
        constructive_inradius,
        constructive_constant,
        ball_center: x_star,
        certificate,
        mass_ratio,
    })))
}

/// Deterministic residual probe points in B(0,1).
fn unit_ball_probes(d: usize) -> Vec<Vec<f64>> {
    let mut probes = vec![vec![0.0; d]];
    for j in 0..d {
        for sign in [-0.5, 0.5] {
            let mut p = vec![0.0; d];
            p[j] = sign;
            probes.push(p);
        }
    }
    probes.push(vec![0.25; d]);
    probes
}

/// Argmax of sampled values over grid cells inside the open ball, ties to
/// the smaller enumeration index. Scans only the index window of the ball.
fn ball_argmax(grid: &Grid, values: &[f64], center: &[f64], radius: f64) -> Option<(usize, f64)> {
    let d = grid.dim();
    let n = grid.axis_counts();
    let h = grid.spacing();
    let (lo, _) = grid.domain().bounding_box();
    let mut lo_idx = vec![0usize; d];
    let mut hi_idx = vec![0usize; d];
    for j in 0..d {
        let a = ((center[j] - radius - lo[j]) / h - 0.5).ceil().max(0.0) as usize;
        let b = ((center[j] + radius - lo[j]) / h - 0.5).floor();
        if b < 0.0 {
            return None;
        }
        lo_idx[j] = a.min(n[j] - 1);
        hi_idx[j] = (b as usize).min(n[j] - 1);
        if lo_idx[j] > hi_idx[j] {
            return None;
        }
    }
    let r2 = radius * radius;
    let mut best: Option<(usize, f64)> = None;
    let mut idx = lo_idx.clone();
    loop {
        let mut lin = 0usize;
        for j in 0..d {
            lin = lin * n[j] + idx[j];
        }
        if grid.is_inside(lin) {
            let x = grid.center(lin);
            let dd: f64 = x.iter().zip(center).map(|(&a, &b)| (a - b) * (a - b)).sum();
            if dd < r2 {
                let v = values[lin];
                if best.is_none_or(|(_, bv)| v > bv) {
                    best = Some((lin, v));
                }
            }
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                return best;
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

/// One λ's verification record. All inradius fields and Q are 0-homogeneous
/// in ψ and bit-identical under field scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub lambda: Complex64,
    pub r_lambda: f64,
    /// √(M/N).
    pub mass_ratio: f64,
    pub certified_inradius: f64,
    pub measured_inradius: f64,
    pub constructive_inradius: f64,
    /// certified/(r_λ·mass_ratio); 0 when the mass ratio vanishes.
    pub q: f64,
    /// 1 − M/N.
    pub boundary_mass_fraction: f64,
    /// ρ₀/√(M/N) for this run; 0 on trivial records.
    pub constructive_constant: f64,
    pub h: f64,
    pub status: String,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.lambda.re,
            self.lambda.im,
            self.r_lambda,
            self.mass_ratio,
            self.certified_inradius,
            self.measured_inradius,
            self.constructive_inradius,
            self.q,
            self.boundary_mass_fraction,
            self.h,
            self.status
        )
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"lambda\":[{},{}],\"r_lambda\":{},\"mass_ratio\":{},\"certified_inradius\":{},\"measured_inradius\":{},\"constructive_inradius\":{},\"Q\":{},\"boundary_mass_fraction\":{},\"constructive_constant\":{},\"h\":{},\"status\":\"{}\"}}",
            self.lambda.re,
            self.lambda.im,
            self.r_lambda,
            self.mass_ratio,
            self.certified_inradius,
            self.measured_inradius,
            self.constructive_inradius,
            self.q,
            self.boundary_mass_fraction,
            self.constructive_constant,
            self.h,
            self.status
        )
    }
}

pub const CSV_HEADER: &str = "# inradius-lab v1\nre_lambda,im_lambda,r_lambda,mass_ratio,certified,measured,constructive,Q,boundary_fraction,h,status";

/// Verify the main inradius inequality for one field: assemble masses,
/// certified/measured radii and the proof run, and check the ordering chain
/// constructive ≤ certified + 2h ≤ measured + 4h with Q > 0.
pub fn verify_theorem(ef: &Eigenfunction, dom: &Domain, grid: &Grid) -> Result<SweepRecord> {
    verify_on_region(ef, dom, grid, ZeroThreshold::default())
}

/// The localized variant: the identical pipeline with Ω replaced by the open
/// subset A (its own grid at the same spacing). A = Ω reproduces
/// `verify_theorem` bit-exactly.
pub fn verify_localized(
    ef: &Eigenfunction,
    dom: &Domain,
    a: &Domain,
    grid: &Grid,
) -> Result<SweepRecord> {
    if !dom.contains_domain(a) {
        return Err(Error::HypothesisViolation("A is not contained in Ω".into()));
    }
    let grid_a = Grid::new(a.clone(), grid.spacing())?;
    match verify_on_region(ef, a, &grid_a, ZeroThreshold::default()) {
        Err(Error::ZeroField) => Err(Error::HypothesisViolation(
            "‖ψ‖_{L²(A)} = 0: the localized bound assumes positive mass on A".into(),
        )),
        other => other,
    }
}

fn verify_on_region(
    ef: &Eigenfunction,
    region: &Domain,
    grid: &Grid,
    tau: ZeroThreshold,
) -> Result<SweepRecord> {
    let spectral = ef.spectral_scale()?;
    let r = spectral.r_lambda;
    let h = grid.spacing();
    let abs = grid.sample_abs_unscaled(ef);
    let report = mass_report_from_samples(ef, &abs, region, r, grid)?;
    let cert = certified_inradius_from_samples(ef, &abs, region, grid)?;
    let meas = measured_inradius_from_samples(ef, &abs, region, grid, tau);
    let outcome = run_proof_pipeline_from_samples(ef, &abs, region, grid)?;

    let (constructive, constant, status) = match &outcome {
        ProofOutcome::Run(run) => (
            run.constructive_inradius,
            run.constructive_constant,
            "ok".to_string(),
        ),
        ProofOutcome::Trivial => (0.0, 0.0, "trivial".to_string()),
    };
    let q = if report.ratio_sqrt > 0.0 {
        cert.radius / (r * report.ratio_sqrt)
    } else {
        0.0
    };
    let record = SweepRecord {
        lambda: ef.lambda(),
        r_lambda: r,
        mass_ratio: report.ratio_sqrt,
        certified_inradius: cert.radius,
        measured_inradius: meas.radius,
        constructive_inradius: constructive,
        q,
        boundary_mass_fraction: 1.0 - (report.interior / report.total),
        constructive_constant: constant,
        h,
        status,
    };
    if record.constructive_inradius > record.certified_inradius + 2.0 * h {
        return Err(Error::OrderingChain(format!(
            "constructive {} > certified {} + 2h",
            record.constructive_inradius, record.certified_inradius
        )));
    }
    if record.certified_inradius > record.measured_inradius + 2.0 * h {
        return Err(Error::OrderingChain(format!(
            "certified {} > measured {} + 2h",
            record.certified_inradius, record.measured_inradius
        )));
    }
    if record.status == "ok" && record.mass_ratio > 0.0 && !(record.q > 0.0) {
        return Err(Error::OrderingChain("Q is not positive".into()));
    }
    Ok(record)
}

/// λ-family construction for sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Re-solve the same recipe at each λ.
    Fixed(Recipe),
    /// One term per λ with Im ξ normal to the first axis, magnitude
    /// κ/r_λ with κ = |λ|^kappa_exponent: an exponential boundary layer
    /// whose relative thickness shrinks as |λ| grows.
    BoundaryLayer { kappa_exponent: f64 },
}

/// Parsed sweep configuration.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub domain: Domain,
    pub symbol: Symbol,
    pub lambda_moduli: Vec<f64>,
    pub lambda_phase: f64,
    pub family: Family,
    /// None = auto (r_λ/16 capped at 4·10⁶ cells).
    pub h_policy: Option<f64>,
    pub tau_rel: f64,
}

impl SweepConfig {
    /// Line-based `key = value` format; `symbol_file` is resolved against
    /// `base_dir`.
    pub fn parse(text: &str, base_dir: &std::path::Path) -> Result<SweepConfig> {
        let mut domain = None;
        let mut symbol = None;
        let mut lambda_moduli = Vec::new();
        let mut lambda_phase = 0.0;
        let mut recipe_text = None;
        let mut family_name = "fixed".to_string();
        let mut kappa_exponent = 0.125;
        let mut h_policy = None;
        let mut tau_rel = 1e-6;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "domain" => domain = Some(Domain::parse(value)?),
                "symbol_file" => {
                    symbol = Some(Symbol::read_file(&base_dir.join(value))?);
                }
                "lambda_moduli" => {
                    lambda_moduli = value
                        .split(',')
                        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                        .collect::<Result<_>>()?;
                }
                "lambda_phase" => {
                    lambda_phase = value.parse().map_err(|_| Error::Parse(format!("bad phase `{value}`")))?;
                }
                "recipe" => recipe_text = Some(value.to_string()),
                "family" => family_name = value.to_string(),
                "kappa_exponent" => {
                    kappa_exponent = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad kappa_exponent `{value}`")))?;
                }
                "h_policy" => {
                    h_policy = if value == "auto" {
                        None
                    } else {
                        Some(value.parse().map_err(|_| Error::Parse(format!("bad h `{value}`")))?)
                    };
                }
                "tau_rel" => {
                    tau_rel = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad tau_rel `{value}`")))?;
                }
                other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
            }
        }
        let domain = domain.ok_or_else(|| Error::Parse("config needs `domain`".into()))?;
        let symbol = symbol.ok_or_else(|| Error::Parse("config needs `symbol_file`".into()))?;
        if lambda_moduli.is_empty() {
            return Err(Error::Parse("config needs `lambda_moduli`".into()));
        }
        let family = match family_name.as_str() {
            "fixed" => {
                let text = recipe_text
                    .ok_or_else(|| Error::Parse("family `fixed` needs `recipe`".into()))?;
                Family::Fixed(Recipe::parse(&text, symbol.dim())?)
            }
            "boundary-layer" => Family::BoundaryLayer { kappa_exponent },
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        };
        Ok(SweepConfig {
            domain,
            symbol,
            lambda_moduli,
            lambda_phase,
            family,
            h_policy,
            tau_rel,
        })
    }
}

/// A single-term field whose modulus is an exponential boundary layer:
/// Im ξ points along the first axis with |Im ξ| = κ/r_λ, and the amplitude
/// normalizes the peak modulus over the domain to 1.
pub fn boundary_layer_field(
    sym: &Symbol,
    lambda: Complex64,
    dom: &Domain,
    kappa: f64,
) -> Result<Eigenfunction> {
    let d = sym.dim();
    if d < 2 {
        return Err(Error::InvalidArgument("boundary layer family needs d ≥ 2".into()));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); d];
    v[0] = Complex64::new(0.0, kappa);
    v[1] = Complex64::new((1.0 + kappa * kappa).sqrt(), 0.0);
    let roots = solve_frequencies(sym, lambda, &v)?;
    let frequency: Vec<Complex64> = roots[0].iter().map(|&z| -z).collect();
    let w: Vec<f64> = frequency.iter().map(|z| z.im).collect();
    let sup_exp = dom.sup_neg_dot(&w);
    if sup_exp > 600.0 {
        return Err(Error::InvalidArgument(format!(
            "boundary layer too sharp for f64: exponent range {sup_exp}"
        )));
    }
    let amplitude = Complex64::new((-sup_exp).exp(), 0.0);
    Eigenfunction::from_terms(sym.clone(), lambda, vec![PlaneWaveTerm::new(amplitude, frequency)])
}

/// Sweep output: records in λ-order plus the dichotomy monitor.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    /// min constructive_constant over ok records.
    pub c_min: f64,
    /// min Q over ok records.
    pub min_q: f64,
    /// Per record: mass_ratio ≤ measured/(c_min·r_λ), the contrapositive
    /// monitor of the boundary-layer dichotomy.
    pub monitor: Vec<bool>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for rec in &self.records {
            out.push_str(&rec.csv_row());
            out.push('\n');
        }
        out
    }
}

/// Run the sweep: one record per λ, errors recorded without aborting.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    let mut records = Vec::with_capacity(config.lambda_moduli.len());
    let phase = Complex64::from_polar(1.0, config.lambda_phase);
    for &modulus in &config.lambda_moduli {
        let lambda = phase * modulus;
        let record = sweep_record(config, lambda);
        records.push(match record {
            Ok(rec) => rec,
            Err(err) => SweepRecord {
                lambda,
                r_lambda: modulus.powf(-1.0 / config.symbol.order() as f64),
                mass_ratio: 0.0,
                certified_inradius: 0.0,
                measured_inradius: 0.0,
                constructive_inradius: 0.0,
                q: 0.0,
                boundary_mass_fraction: 0.0,
                constructive_constant: 0.0,
                h: 0.0,
                status: format!("error: {}", err.to_string().replace([',', '\n'], ";")),
            },
        });
    }
    let ok: Vec<&SweepRecord> = records.iter().filter(|r| r.status == "ok").collect();
    let c_min = ok
        .iter()
        .map(|r| r.constructive_constant)
        .fold(f64::INFINITY, f64::min);
    let min_q = ok.iter().map(|r| r.q).fold(f64::INFINITY, f64::min);
    let monitor = records
        .iter()
        .map(|r| {
            if r.status != "ok" || !c_min.is_finite() {
                return true;
            }
            r.mass_ratio <= r.measured_inradius / (c_min * r.r_lambda)
        })
        .collect();
    Ok(SweepResult { records, c_min, min_q, monitor })
}

fn sweep_record(config: &SweepConfig, lambda: Complex64) -> Result<SweepRecord> {
    let spectral = crate::field::SpectralScale::new(lambda, config.symbol.order())?;
    let h = config
        .h_policy
        .unwrap_or_else(|| Grid::auto_spacing(&config.domain, spectral.r_lambda));
    let grid = Grid::new(config.domain.clone(), h)?;
    let ef = match &config.family {
        Family::Fixed(recipe) => synth(&config.symbol, lambda, recipe)?,
        Family::BoundaryLayer { kappa_exponent } => {
            let kappa = lambda.norm().powf(*kappa_exponent);
            boundary_layer_field(&config.symbol, lambda, &config.domain, kappa)?
        }
    };
    verify_on_region(&ef, &config.domain, &grid, ZeroThreshold::Relative(config.tau_rel))
}

/// Empirical stand-in for the uniform Lipschitz constant: the running max of
/// sup_{B(0,3/4)} |∇u| over random normalized solutions of Hu = μu with
/// 1 ≤ |μ| ≤ 2.
#[derive(Debug, Clone)]
pub struct LipschitzEstimate {
    pub l_hat: f64,
    pub samples: usize,
    /// Plateau diagnostic: running max over the first and second halves.
    pub first_half_max: f64,
    pub second_half_max: f64,
}

pub fn estimate_uniform_lipschitz(
    sym: &Symbol,
    samples: usize,
    seed: u64,
    grid_h: f64,
) -> Result<LipschitzEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be ≥ 1".into()));
    }
    let d = sym.dim();
    let unit_ball = Domain::new_ball(vec![0.0; d], 1.0)?;
    let inner_ball = Domain::new_ball(vec![0.0; d], 0.75)?;
    let grid = Grid::new(unit_ball.clone(), grid_h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l_hat = 0.0f64;
    let mut first_half_max = 0.0f64;
    let mut second_half_max = 0.0f64;
    for i in 0..samples {
        let ef = random_unit_solution(sym, &mut rng)?;
        let abs = grid.sample_abs_unscaled(&ef);
        let mass = l2_mass_from_samples(&abs, &unit_ball, &grid);
        if mass <= 0.0 {
            continue;
        }
        let norm = mass.sqrt();
        let sup_grad = grid_sup_gradient(&ef, &grid, &inner_ball);
        let l_sample = sup_grad / norm;
        l_hat = l_hat.max(l_sample);
        if i < samples / 2 || samples == 1 {
            first_half_max = first_half_max.max(l_sample);
        } else {
            second_half_max = second_half_max.max(l_sample);
        }
    }
    Ok(LipschitzEstimate { l_hat, samples, first_half_max, second_half_max })
}

fn grid_sup_gradient(ef: &Eigenfunction, grid: &Grid, region: &Domain) -> f64 {
    use rayon::prelude::*;
    (0..grid.lattice_len())
        .into_par_iter()
        .map(|lin| {
            if !grid.is_inside(lin) {
                return 0.0;
            }
            let x = grid.center(lin);
            if region.contains(&x) {
                ef.gradient_norm_unscaled(&x)
            } else {
                0.0
            }
        })
        .reduce(|| 0.0f64, f64::max)
}

/// A random μ with 1 ≤ |μ| ≤ 2 and a random small recipe, re-drawn until the
/// directions are non-characteristic.
fn random_unit_solution(sym: &Symbol, rng: &mut ChaCha8Rng) -> Result<Eigenfunction> {
    let d = sym.dim();
    let m = sym.order() as usize;
    for _ in 0..64 {
        let modulus: f64 = rng.random_range(1.0..=2.0);
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let mu = Complex64::from_polar(modulus, phase);
        let n_terms = rng.random_range(1..=4usize);
        let mut terms = Vec::with_capacity(n_terms);
        for _ in 0..n_terms {
            let dir: Vec<Complex64> = (0..d)
                .map(|_| {
                    let u: f64 = rng.random_range(1e-12..1.0);
                    let v: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::new((-2.0 * u.ln()).sqrt() * v.cos(), 0.0)
                })
                .collect();
            let amp = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            terms.push(crate::field::RecipeTerm::new(dir, rng.random_range(0..m), amp));
        }
        match synth(sym, mu, &Recipe(terms)) {
            Ok(ef) => return Ok(ef),
            Err(Error::CharacteristicDirection(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument("could not draw a non-characteristic recipe".into()))
}

/// The elementary inequality used in the final constant assembly:
/// min{a·t, b} ≥ min{a, b}·t for t ∈ [0, 1].
pub fn min_scaling_inequality_holds(a: f64, b: f64, t: f64) -> bool {
    (a * t).min(b) >= a.min(b) * t
}
