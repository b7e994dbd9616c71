use std::path::{Path, PathBuf};

use num_complex::Complex;
use phasespace::io::{write_phase, Format};
use phasespace::{
    hermite_basis, kernel_to_r, make_grid, phi_rs, purity_residual, recover_a, star, star_twisted_oracle,
    wigner_of_state, autv_residual, FactorizeError, GaussianAlphaSpec, Gauge, Grid64, Phase64, RecoverOptions,
    State64, C64,
};
use phasespace_reps as reps;
use phasespace_symbolic::{moyal_symbolic, star_symbolic, BigRational, Coefficient, Symbol};
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::{CheckLine, RunReport};
use crate::suites::{run_suite, Suite};
use crate::CliError;

/// Result of one subcommand: the report and the files written.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub json: String,
    pub files: Vec<PathBuf>,
}

fn out_file(cfg: &RunConfig, stem: &str) -> Option<PathBuf> {
    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    cfg.out.as_ref().map(|d| d.join(format!("{stem}.{ext}")))
}

fn ensure_dir(cfg: &RunConfig) -> Result<(), CliError> {
    if let Some(d) = &cfg.out {
        std::fs::create_dir_all(d).map_err(|e| CliError::Failure(format!("cannot create {}: {e}", d.display())))?;
    }
    Ok(())
}

fn save_phase(cfg: &RunConfig, stem: &str, a: &Phase64, files: &mut Vec<PathBuf>) -> Result<Option<String>, CliError> {
    match out_file(cfg, stem) {
        Some(path) => {
            ensure_dir(cfg)?;
            write_phase(&path, a, cfg.format)?;
            files.push(path.clone());
            Ok(Some(path.display().to_string()))
        }
        None => Ok(None),
    }
}

fn finish<B: Serialize>(command: &str, cfg: &RunConfig, passed: bool, body: B, mut files: Vec<PathBuf>) -> Result<Outcome, CliError> {
    let json = RunReport::new(command, cfg, passed, body).to_json();
    if let Some(d) = &cfg.out {
        ensure_dir(cfg)?;
        let path = d.join(format!("{command}_report.json"));
        std::fs::write(&path, &json).map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
        files.push(path);
    }
    Ok(Outcome { passed, json, files })
}

// ---------------------------------------------------------------- wigner

/// Parses `hermite:k`, a sum such as `0.6*hermite:0 - 0.8i*hermite:1`, or
/// `file:PATH` holding one `re,im` (or `re`) sample per line.
pub fn parse_state(spec: &str, grid: Grid64, r_max: usize) -> Result<State64, CliError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("file:") {
        return read_state_file(Path::new(path), grid);
    }
    let basis = hermite_basis(&grid, r_max)?;
    let mut v = ndarray::Array1::<C64>::zeros(grid.n());
    let normalised = spec.replace('-', "+-");
    for raw in normalised.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, name) = match raw.rsplit_once('*') {
            Some((c, n)) => (parse_coef(c.trim())?, n.trim()),
            None if raw.starts_with('-') => (C64::new(-1.0, 0.0), raw[1..].trim()),
            None => (C64::new(1.0, 0.0), raw),
        };
        let k: usize = name
            .strip_prefix("hermite:")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("unknown state '{name}' (expected hermite:<k> or file:<path>)")))?;
        if k >= r_max {
            return Err(CliError::Usage(format!("hermite:{k} outside the basis of size r_max = {r_max}")));
        }
        v = v + basis.complex(k).mapv(|z| z * coef);
    }
    Ok(State64::new(grid, v)?)
}

fn parse_coef(s: &str) -> Result<C64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse coefficient '{s}'"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, s),
    };
    let sign = if neg { -1.0 } else { 1.0 };
    if let Some(im) = body.strip_suffix('i') {
        let v: f64 = if im.is_empty() { 1.0 } else { im.parse().map_err(|_| bad())? };
        Ok(C64::new(0.0, sign * v))
    } else {
        Ok(C64::new(sign * body.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

fn read_state_file(path: &Path, grid: Grid64) -> Result<State64, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut vals = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let bad = || CliError::Usage(format!("{} line {}: expected re[,im]", path.display(), i + 1));
        let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let im: f64 = match parts.next() {
            Some(t) => t.parse().map_err(|_| bad())?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        vals.push(C64::new(re, im));
    }
    if vals.len() != grid.n() {
        return Err(CliError::Usage(format!("{} has {} samples, grid needs {}", path.display(), vals.len(), grid.n())));
    }
    Ok(State64::new(grid, ndarray::Array1::from(vals))?)
}

#[derive(Serialize)]
struct WignerBody {
    state: String,
    input_norm: f64,
    purity_star_residual: f64,
    purity_integral_residual: f64,
    w_at_origin: Option<f64>,
    integral: f64,
    array_file: Option<String>,
}

pub fn cmd_wigner(state: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let grid = make_grid(cfg.n, cfg.dx)?;
    let psi = parse_state(state, grid, cfg.r_max)?;
    let input_norm = psi.norm();
    if input_norm == 0.0 {
        return Err(CliError::Usage("state is zero".into()));
    }
    let w = wigner_of_state(&psi.normalized());
    let p = purity_residual(&w);
    let mut files = Vec::new();
    let array_file = save_phase(cfg, "wigner", &w, &mut files)?;
    let tol = cfg.tol_or(1e-8);
    let body = WignerBody {
        state: state.to_string(),
        input_norm,
        purity_star_residual: p.r1,
        purity_integral_residual: p.r2,
        w_at_origin: w.value_at(0.0, 0.0).map(|z| z.re),
        integral: w.integral().re,
        array_file,
    };
    finish("wigner", cfg, p.r1 <= tol && p.r2 <= tol, body, files)
}

// ----------------------------------------------------------------- check

#[derive(Serialize)]
struct CheckBody {
    suite: Suite,
    failed: usize,
    checks: Vec<CheckLine>,
}

pub fn cmd_check(suite: Suite, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let checks = run_suite(suite, cfg)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    finish("check", cfg, failed == 0, CheckBody { suite, failed, checks }, Vec::new())
}

// ------------------------------------------------------------- factorize

#[derive(Debug, Clone, Copy)]
pub struct FactorizeArgs {
    pub tau: f64,
    pub sigma: f64,
    pub epsilon: i8,
    pub grid_n: usize,
    pub override_gate: bool,
}

#[derive(Serialize)]
struct FactorizeBody {
    spec: GaussianAlphaSpec,
    threshold: f64,
    residual: f64,
    opposite_sign_residual: f64,
    /// Residual of the `epsilon = -1` kernel over that of `epsilon = +1`.
    residual_ratio: f64,
    gate: &'static str,
    recovered: Option<RecoveredSummary>,
}

#[derive(Serialize)]
struct RecoveredSummary {
    /// Largest gap to `(pi/2) sqrt(sigma tau) exp(-sigma q^2 - tau p^2)`.
    error_vs_closed_form: f64,
    /// Largest gap to `2 pi exp(-q^2 - p^2)`; only for `tau = sigma = 1`.
    error_vs_2pi_gaussian: Option<f64>,
    value_at_origin: f64,
    max_discarded_imag: f64,
    xi_mismatch: f64,
    array_file: Option<String>,
}

pub fn recovery_grid(grid_n: usize) -> Result<Grid64, CliError> {
    Ok(make_grid(grid_n, 12.0 / grid_n as f64)?)
}

fn residual_of(spec: GaussianAlphaSpec, grid: &Grid64, probes: &phasespace::ProbeLattice) -> Result<f64, FactorizeError> {
    let r = kernel_to_r(&spec.kernel::<f64>()).with_box(spec.quadrature_box(box_freq(spec, grid)));
    autv_residual(&r, probes)
}

fn box_freq(spec: GaussianAlphaSpec, grid: &Grid64) -> f64 {
    let far = spec.far_point();
    2.0 * far.0.max(far.1).max(grid.extent()).max(grid.dp() * grid.n() as f64 / 2.0) + 4.0
}

pub fn cmd_factorize(args: FactorizeArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = GaussianAlphaSpec::new(args.tau, args.sigma, args.epsilon)
        .map_err(|_| CliError::Usage("--tau and --sigma must be positive and --epsilon must be 1 or -1".into()))?;
    if args.grid_n < 2 || args.grid_n % 2 != 0 {
        return Err(CliError::Usage(format!("--grid-n must be even and at least 2, got {}", args.grid_n)));
    }
    let grid = recovery_grid(args.grid_n)?;
    let opts = RecoverOptions { threshold: cfg.tol_or(1e-6), override_gate: args.override_gate, ..Default::default() };
    let residual = residual_of(spec, &grid, &opts.probes)?;
    let other = GaussianAlphaSpec::new(args.tau, args.sigma, -args.epsilon).expect("valid");
    let opposite = residual_of(other, &grid, &opts.probes)?;
    let (plus, minus) = if args.epsilon == 1 { (residual, opposite) } else { (opposite, residual) };
    let admitted = residual <= opts.threshold;
    let gate = match (admitted, args.override_gate) {
        (true, _) => "admitted",
        (false, true) => "overridden",
        (false, false) => "refused",
    };
    let mut files = Vec::new();
    let recovered = if admitted || args.override_gate {
        let far = spec.far_point();
        let r = kernel_to_r(&spec.kernel::<f64>()).with_box(spec.quadrature_box(box_freq(spec, &grid)));
        let rec = recover_a(&r, 0.0, &grid, &RecoverOptions { gauge: Gauge::Point(far.0, far.1), ..opts })?;
        let (mut closed, mut printed) = (0.0f64, 0.0f64);
        for c in 0..2 * grid.n() {
            for k in 0..grid.n() {
                let (q, p) = (grid.q(c), grid.p(k));
                let v = rec.a.at(c, k).re;
                closed = closed.max((v - spec.expected_a(q, p)).abs());
                printed = printed.max((v - 2.0 * std::f64::consts::PI * (-q * q - p * p).exp()).abs());
            }
        }
        let unit = args.tau == 1.0 && args.sigma == 1.0;
        let mismatch = phasespace::xi_consistency(&rec.a, &spec.kernel(), &phasespace::ProbeLattice { per_axis: 3, half_width: 1.0 })?;
        let array_file = save_phase(cfg, "recovered_a", &rec.a, &mut files)?;
        Some(RecoveredSummary {
            error_vs_closed_form: closed,
            error_vs_2pi_gaussian: unit.then_some(printed),
            value_at_origin: rec.a.value_at(0.0, 0.0).map(|z| z.re).unwrap_or(f64::NAN),
            max_discarded_imag: rec.max_imag,
            xi_mismatch: mismatch,
            array_file,
        })
    } else {
        None
    };
    let passed = admitted && recovered.as_ref().map(|r| r.error_vs_closed_form <= 1e-6).unwrap_or(false);
    let body = FactorizeBody {
        spec,
        threshold: opts.threshold,
        residual,
        opposite_sign_residual: opposite,
        residual_ratio: minus / plus.max(f64::MIN_POSITIVE),
        gate,
        recovered,
    };
    finish("factorize", cfg, passed, body, files)
}

// ------------------------------------------------------------------ reps

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Example {
    All,
    Hw,
    Tower,
    Galilei,
    Sp2a,
    Sp2b,
    TimeReversal,
}

#[derive(Debug, Clone)]
pub struct RepsArgs {
    pub example: Example,
    pub hbar: String,
    pub mass: String,
    pub a: String,
}

/// Exact value of `3`, `-0.25` or `1/2`.
fn rational(name: &str, s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("--{name}: cannot parse '{s}' as a decimal or fraction"));
    let (neg, body) = match s.trim().strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.trim()),
    };
    let v = match body.split_once('/') {
        Some((n, d)) => {
            let d = BigRational::parse_literal(d.trim()).ok_or_else(bad)?;
            if d == BigRational::from_integer(0.into()) {
                return Err(bad());
            }
            BigRational::parse_literal(n.trim()).ok_or_else(bad)? / d
        }
        None => BigRational::parse_literal(body).ok_or_else(bad)?,
    };
    Ok(if neg { -v } else { v })
}

#[derive(Serialize)]
struct RepsBody {
    examples: Vec<reps::ExampleReport>,
}

fn simple_report(example: &str, relations: Vec<reps::RelationCheck>) -> reps::ExampleReport {
    reps::ExampleReport {
        example: example.into(),
        passed: relations.iter().all(|r| r.holds),
        max_residual: relations.iter().map(|r| r.residual).fold(0.0, f64::max),
        relations_checked: relations,
        casimir_value: None,
        factorized_generators_pretty: Vec::new(),
        phase_generators_pretty: Vec::new(),
        additive_constants: Vec::new(),
        cocycle_phase: 0.0,
    }
}

pub fn cmd_reps(args: &RepsArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let hbar = rational("hbar", &args.hbar)?;
    let mass = rational("mass", &args.mass)?;
    let a = rational("a", &args.a)?;
    let zero = BigRational::from_integer(0.into());
    if hbar <= zero || mass <= zero {
        return Err(CliError::Usage("--hbar and --mass must be positive".into()));
    }
    let want = |e: Example| args.example == Example::All || args.example == e;
    let mut examples = Vec::new();
    if want(Example::Hw) {
        examples.push(reps::hw_factorize(&hbar)?.report());
    }
    if want(Example::Tower) {
        let levels = reps::gen_heisenberg_tower(8)?;
        let mut r = simple_report("heisenberg-tower", reps::tower_checks(&levels));
        r.factorized_generators_pretty = levels.iter().map(|l| format!("B{} = {}", l.n, l.hilbert)).collect();
        r.phase_generators_pretty = levels.iter().map(|l| format!("beta{} = {}", l.n, l.beta)).collect();
        examples.push(r);
    }
    if want(Example::Galilei) {
        examples.push(reps::galilei_factorize(&mass, &hbar)?.report());
    }
    if want(Example::Sp2a) {
        examples.push(reps::sp2_generators(&reps::Sp2Params::case_a())?.factorization.report());
    }
    if want(Example::Sp2b) {
        examples.push(reps::sp2_generators(&reps::Sp2Params::case_b(a))?.factorization.report());
    }
    if want(Example::TimeReversal) {
        use rand::SeedableRng;
        let g = make_grid(32, 0.3)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
        let ks: Vec<_> = (0..20).map(|_| crate::random::kernel(g, &mut rng).entries).collect();
        examples.push(simple_report("time-reversal", reps::time_reversal_check(g, &ks, cfg.tol_or(1e-12))?));
    }
    let passed = examples.iter().all(|e| e.passed);
    finish("reps", cfg, passed, RepsBody { examples }, Vec::new())
}

// ------------------------------------------------------------- star-demo

#[derive(Serialize)]
struct StarDemoBody {
    grid_n: usize,
    grid_dx: f64,
    route_gaps: Vec<(String, f64)>,
    pure_state_gap: f64,
    symbolic: Vec<String>,
    array_file: Option<String>,
}

pub fn cmd_star_demo(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let grid = make_grid(cfg.n, cfg.dx)?;
    let basis = hermite_basis(&grid, 2)?;
    let mut route_gaps = Vec::new();
    for (r, s, u, v) in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 1)] {
        let a = phi_rs(&basis, r, s);
        let b = phi_rs(&basis, u, v);
        let gap = star(&a, &b)?.max_abs_diff(&star_twisted_oracle(&a, &b)?);
        route_gaps.push((format!("Phi_{r}{s} * Phi_{u}{v}"), gap));
    }
    let w0 = wigner_of_state(&State64::new(grid, basis.complex(0))?);
    let pure_state_gap = star(&w0, &w0)?.max_abs_diff(&w0.scale(Complex::new(0.5 / std::f64::consts::PI, 0.0)));
    let q = Symbol::q();
    let p = Symbol::p();
    let q2: Symbol = "q^2".parse().expect("literal");
    let symbolic = vec![
        format!("q * p = {}", star_symbolic(&q, &p)),
        format!("p * q = {}", star_symbolic(&p, &q)),
        format!("q^2 * p = {}", star_symbolic(&q2, &p)),
        format!("{{q, p}} = {}", moyal_symbolic(&q, &p)),
        format!("{{q^2, p^2}} = {}", moyal_symbolic(&q2, &"p^2".parse().expect("literal"))),
    ];
    let mut files = Vec::new();
    let array_file = save_phase(cfg, "star_phi00_phi01", &star(&phi_rs(&basis, 0, 0), &phi_rs(&basis, 0, 1))?, &mut files)?;
    let tol = cfg.tol_or(1e-6);
    let passed = route_gaps.iter().all(|(_, g)| *g <= tol) && pure_state_gap <= tol;
    let body = StarDemoBody { grid_n: grid.n(), grid_dx: grid.dx(), route_gaps, pure_state_gap, symbolic, array_file };
    finish("star-demo", cfg, passed, body, files)
}
