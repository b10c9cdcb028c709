//! Thin CLI over the library:
//! `inradius-lab <synth|inradius|cover|lattice-count|prove|sweep|estimate-L>`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use num_complex::Complex64;

use inradius_lab::certify::ZeroThreshold;
use inradius_lab::error::{Error, Result};
use inradius_lab::harness::{ProofOutcome, SweepConfig, CSV_HEADER};
use inradius_lab::{Domain, Eigenfunction, Grid, Recipe, Symbol};

const USAGE: &str = "\
usage: inradius-lab <command> [flags]

commands:
  synth          --symbol-file F --lambda RE IM --recipe \"dir .. root .. amp ..\" --field-file OUT
  inradius       --symbol-file F --field-file F --domain \"box ..|ball ..\" [--h H] [--tau T] [--ppm F]
  cover          --points F --r R
  lattice-count  --symbol-file F --lambda RE IM [--delta 0.5]
  prove          --symbol-file F --field-file F --domain SPEC [--h H] [--ppm F]
  sweep          --config F [--out DIR]
  estimate-L     --symbol-file F [--samples N] [--h H]

global flags: --symbol-file PATH, --out DIR, --seed U64, --threads N
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

struct Flags {
    values: HashMap<String, Vec<String>>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags> {
        let mut values: HashMap<String, Vec<String>> = HashMap::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            if !arg.starts_with("--") {
                return Err(Error::Parse(format!("unexpected argument `{arg}`")));
            }
            let key = arg.trim_start_matches("--").to_string();
            let mut vals = Vec::new();
            i += 1;
            while i < args.len() && !args[i].starts_with("--") {
                vals.push(args[i].clone());
                i += 1;
            }
            values.insert(key, vals);
        }
        Ok(Flags { values })
    }

    fn one(&self, key: &str) -> Result<&str> {
        match self.values.get(key) {
            Some(v) if v.len() == 1 => Ok(&v[0]),
            Some(_) => Err(Error::Parse(format!("--{key} takes exactly one value"))),
            None => Err(Error::Parse(format!("missing required flag --{key}"))),
        }
    }

    fn opt(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.first()).map(String::as_str)
    }

    fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.opt(key) {
            None => Ok(None),
            Some(s) => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("--{key}: bad number `{s}`"))),
        }
    }

    fn complex(&self, key: &str) -> Result<Complex64> {
        match self.values.get(key) {
            Some(v) if v.len() == 2 => {
                let re: f64 = v[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("--{key}: bad number `{}`", v[0])))?;
                let im: f64 = v[1]
                    .parse()
                    .map_err(|_| Error::Parse(format!("--{key}: bad number `{}`", v[1])))?;
                Ok(Complex64::new(re, im))
            }
            _ => Err(Error::Parse(format!("--{key} takes two values: RE IM"))),
        }
    }
}

fn run(args: &[String]) -> Result<()> {
    let Some(command) = args.first() else {
        print!("{USAGE}");
        return Ok(());
    };
    let flags = Flags::parse(&args[1..])?;

    if let Some(threads) = flags.opt("threads") {
        let n: usize = threads
            .parse()
            .map_err(|_| Error::Parse(format!("--threads: bad count `{threads}`")))?;
        // affects speed only: all reductions are order-fixed
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let seed: u64 = match flags.opt("seed") {
        Some(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("--seed: bad value `{s}`")))?,
        None => 0,
    };
    let out_dir: PathBuf = flags.opt("out").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));

    match command.as_str() {
        "synth" => cmd_synth(&flags),
        "inradius" => cmd_inradius(&flags),
        "cover" => cmd_cover(&flags),
        "lattice-count" => cmd_lattice(&flags),
        "prove" => cmd_prove(&flags),
        "sweep" => cmd_sweep(&flags, &out_dir),
        "estimate-L" => cmd_estimate_l(&flags, seed),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(Error::Parse(format!("unknown command `{other}`"))),
    }
}

fn load_symbol(flags: &Flags) -> Result<Symbol> {
    Symbol::read_file(Path::new(flags.one("symbol-file")?))
}

fn load_field(flags: &Flags, sym: &Symbol) -> Result<Eigenfunction> {
    Eigenfunction::read_file(Path::new(flags.one("field-file")?), sym)
}

fn grid_for(flags: &Flags, dom: &Domain, ef: &Eigenfunction) -> Result<Grid> {
    let h = match flags.opt_f64("h")? {
        Some(h) => h,
        None => Grid::auto_spacing(dom, ef.spectral_scale()?.r_lambda),
    };
    Grid::new(dom.clone(), h)
}

fn json_vec(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_synth(flags: &Flags) -> Result<()> {
    let sym = load_symbol(flags)?;
    let lambda = flags.complex("lambda")?;
    let recipe = Recipe::parse(flags.one("recipe")?, sym.dim())?;
    let ef = inradius_lab::synth(&sym, lambda, &recipe)?;
    let path = PathBuf::from(flags.one("field-file")?);
    ef.write_file(&path)?;
    println!(
        "{{\"field_file\":\"{}\",\"terms\":{},\"lambda\":[{},{}]}}",
        path.display(),
        ef.terms().len(),
        lambda.re,
        lambda.im
    );
    Ok(())
}

fn cmd_inradius(flags: &Flags) -> Result<()> {
    let sym = load_symbol(flags)?;
    let ef = load_field(flags, &sym)?;
    let dom = Domain::parse(flags.one("domain")?)?;
    let grid = grid_for(flags, &dom, &ef)?;
    let tau = match flags.opt_f64("tau")? {
        Some(t) => ZeroThreshold::Absolute(t),
        None => ZeroThreshold::default(),
    };
    let abs = grid.sample_abs_unscaled(&ef);
    let cert = inradius_lab::certify::certified_inradius_from_samples(&ef, &abs, &dom, &grid)?;
    let meas = inradius_lab::certify::measured_inradius_from_samples(&ef, &abs, &dom, &grid, tau);
    if let Some(ppm) = flags.opt("ppm") {
        inradius_lab::ppm::write_ppm_heatmap(
            Path::new(ppm),
            &grid,
            &abs,
            Some((&cert.center, cert.radius)),
        )?;
    }
    println!(
        "{{\"certified\":{},\"center\":{},\"measured\":{},\"L\":{},\"h\":{}}}",
        cert.radius,
        json_vec(&cert.center),
        meas.radius,
        cert.lipschitz * ef.scale().norm(),
        grid.spacing()
    );
    Ok(())
}

fn cmd_cover(flags: &Flags) -> Result<()> {
    let text = std::fs::read_to_string(flags.one("points")?)?;
    let points: Vec<Vec<f64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let r: f64 = flags
        .one("r")?
        .parse()
        .map_err(|_| Error::Parse("--r: bad number".into()))?;
    let cover = inradius_lab::vitali_cover(&points, r)?;
    let centers: Vec<String> = cover.centers.iter().map(|c| json_vec(c)).collect();
    println!(
        "{{\"r\":{},\"n_points\":{},\"n_centers\":{},\"max_overlap\":{},\"overlap_bound\":{},\"centers\":[{}]}}",
        cover.r,
        points.len(),
        cover.centers.len(),
        cover.max_overlap,
        cover.overlap_bound,
        centers.join(",")
    );
    Ok(())
}

fn cmd_lattice(flags: &Flags) -> Result<()> {
    let sym = load_symbol(flags)?;
    let lambda = flags.complex("lambda")?;
    let delta = flags.opt_f64("delta")?.unwrap_or(inradius_lab::lattice::DELTA);
    let count = inradius_lab::count_lattice_with_delta(&sym, lambda, delta)?;
    let witnesses: Vec<String> = count
        .witnesses
        .iter()
        .map(|w| {
            let parts: Vec<String> = w.iter().map(|k| k.to_string()).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    println!(
        "{{\"R1\":{},\"count\":{},\"witnesses\":[{}]}}",
        count.enumeration_radius,
        count.count,
        witnesses.join(",")
    );
    Ok(())
}

fn cmd_prove(flags: &Flags) -> Result<()> {
    let sym = load_symbol(flags)?;
    let ef = load_field(flags, &sym)?;
    let dom = Domain::parse(flags.one("domain")?)?;
    let grid = grid_for(flags, &dom, &ef)?;
    let abs = grid.sample_abs_unscaled(&ef);
    match inradius_lab::harness::run_proof_pipeline_from_samples(&ef, &abs, &dom, &grid)? {
        ProofOutcome::Trivial => println!("{{\"status\":\"trivial\"}}"),
        ProofOutcome::Run(run) => {
            if let Some(ppm) = flags.opt("ppm") {
                inradius_lab::ppm::write_ppm_heatmap(
                    Path::new(ppm),
                    &grid,
                    &abs,
                    Some((&run.ball_center, run.constructive_inradius)),
                )?;
            }
            println!(
                "{{\"status\":\"ok\",\"r\":{},\"good_ball_center\":{},\"good_ball_ratio\":{},\"mu\":[{},{}],\"amplitude_point\":{},\"amplitude\":{},\"amp_bound\":{},\"L_emp\":{},\"rho0\":{},\"constructive_inradius\":{},\"constructive_constant\":{},\"ball_center\":{}}}",
                run.r,
                json_vec(&run.good_ball.center),
                run.good_ball.ratio,
                run.mu.re,
                run.mu.im,
                json_vec(&run.amplitude_point),
                run.amplitude,
                run.amp_bound,
                run.l_emp,
                run.rho0,
                run.constructive_inradius,
                run.constructive_constant,
                json_vec(&run.ball_center)
            );
        }
    }
    Ok(())
}

fn cmd_sweep(flags: &Flags, out_dir: &Path) -> Result<()> {
    let config_path = PathBuf::from(flags.one("config")?);
    let base = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let config = SweepConfig::parse(&std::fs::read_to_string(&config_path)?, &base)?;
    let result = inradius_lab::sweep(&config)?;
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join("sweep.csv");
    std::fs::write(&csv_path, result.to_csv())?;
    for rec in &result.records {
        println!("{}", rec.to_json());
    }
    println!(
        "{{\"csv\":\"{}\",\"records\":{},\"c_min\":{},\"min_Q\":{},\"monitor_ok\":{}}}",
        csv_path.display(),
        result.records.len(),
        result.c_min,
        result.min_q,
        result.monitor.iter().all(|&b| b)
    );
    let _ = CSV_HEADER; // schema lives beside SweepResult::to_csv
    Ok(())
}

fn cmd_estimate_l(flags: &Flags, seed: u64) -> Result<()> {
    let sym = load_symbol(flags)?;
    let samples: usize = match flags.opt("samples") {
        Some(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("--samples: bad count `{s}`")))?,
        None => 256,
    };
    let h = flags.opt_f64("h")?.unwrap_or(1.0 / 48.0);
    let est = inradius_lab::estimate_uniform_lipschitz(&sym, samples, seed, h)?;
    println!(
        "{{\"l_hat\":{},\"samples\":{},\"first_half_max\":{},\"second_half_max\":{}}}",
        est.l_hat, est.samples, est.first_half_max, est.second_half_max
    );
    Ok(())
}
