//! Text and JSON layouts for phase functions and kernels.
//!
//! CSV: a header line `# axes q:<2n>:<dq> p:<n>:<dp>` (kernels:
//! `# axes x:<n>:<dx> y:<n>:<dx>`), then one `re,im` pair per line in
//! row-major order. Numbers use the shortest representation that parses
//! back to the same value, so both layouts round-trip bit for bit.
//!
//! JSON: `{"kind", "grid": {"n","dx","dp"}, "axes": {<name>: {"len","start","step"}, ..},
//! "re": [[..]], "im": [[..]]}` with one inner array per row.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndarray::Array2;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::grid::{make_grid, GridSpec};
use crate::scalar::Real;
use crate::wigner::{KernelMatrix, PhaseFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub n: usize,
    pub dx: f64,
    pub dp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisMeta {
    pub len: usize,
    pub start: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub kind: String,
    pub grid: GridMeta,
    pub axes: BTreeMap<String, AxisMeta>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

const PHASE: &str = "phase_function";
const KERNEL: &str = "kernel";

fn grid_meta<T: Real>(g: &GridSpec<T>) -> GridMeta {
    GridMeta { n: g.n(), dx: g.dx().as_f64(), dp: g.dp().as_f64() }
}

fn split<T: Real>(a: &Array2<Complex<T>>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = a.rows().into_iter().map(|r| r.iter().map(|z| z.re.as_f64()).collect()).collect();
    let im = a.rows().into_iter().map(|r| r.iter().map(|z| z.im.as_f64()).collect()).collect();
    (re, im)
}

fn join<T: Real>(env: &Envelope, shape: (usize, usize)) -> Result<Array2<Complex<T>>, IoError> {
    let bad = |d: String| IoError::Malformed { what: "json envelope", detail: d };
    if env.re.len() != shape.0 || env.im.len() != shape.0 {
        return Err(bad(format!("expected {} rows", shape.0)));
    }
    let mut out = Array2::from_elem(shape, Complex::new(T::zero(), T::zero()));
    for (r, (re, im)) in env.re.iter().zip(&env.im).enumerate() {
        if re.len() != shape.1 || im.len() != shape.1 {
            return Err(bad(format!("row {r} has the wrong length")));
        }
        for c in 0..shape.1 {
            let cv = |v: f64| T::from_f64(v).ok_or_else(|| bad(format!("value {v} not representable")));
            out[[r, c]] = Complex::new(cv(re[c])?, cv(im[c])?);
        }
    }
    Ok(out)
}

fn grid_from_meta<T: Real>(m: &GridMeta) -> Result<GridSpec<T>, IoError> {
    let dx = T::from_f64(m.dx).ok_or(IoError::Malformed { what: "grid", detail: "dx".into() })?;
    Ok(make_grid(m.n, dx)?)
}

pub fn phase_to_envelope<T: Real>(a: &PhaseFunction<T>) -> Envelope {
    let g = &a.grid;
    let (re, im) = split(&a.entries);
    let mut axes = BTreeMap::new();
    axes.insert("q".into(), AxisMeta { len: 2 * g.n(), start: g.q(0).as_f64(), step: g.dq().as_f64() });
    axes.insert("p".into(), AxisMeta { len: g.n(), start: g.p(0).as_f64(), step: g.dp().as_f64() });
    Envelope { kind: PHASE.into(), grid: grid_meta(g), axes, re, im }
}

pub fn kernel_to_envelope<T: Real>(k: &KernelMatrix<T>) -> Envelope {
    let g = &k.grid;
    let (re, im) = split(&k.entries);
    let ax = AxisMeta { len: g.n(), start: g.x(0).as_f64(), step: g.dx().as_f64() };
    let mut axes = BTreeMap::new();
    axes.insert("x".into(), ax.clone());
    axes.insert("y".into(), ax);
    Envelope { kind: KERNEL.into(), grid: grid_meta(g), axes, re, im }
}

pub fn phase_from_envelope<T: Real>(env: &Envelope) -> Result<PhaseFunction<T>, IoError> {
    if env.kind != PHASE {
        return Err(IoError::Malformed { what: "json envelope", detail: format!("kind '{}'", env.kind) });
    }
    let g = grid_from_meta::<T>(&env.grid)?;
    Ok(PhaseFunction::new(g, join(env, (2 * g.n(), g.n()))?)?)
}

pub fn kernel_from_envelope<T: Real>(env: &Envelope) -> Result<KernelMatrix<T>, IoError> {
    if env.kind != KERNEL {
        return Err(IoError::Malformed { what: "json envelope", detail: format!("kind '{}'", env.kind) });
    }
    let g = grid_from_meta::<T>(&env.grid)?;
    Ok(KernelMatrix::new(g, join(env, (g.n(), g.n()))?)?)
}

pub fn phase_to_json<T: Real>(a: &PhaseFunction<T>) -> Result<String, IoError> {
    Ok(serde_json::to_string(&phase_to_envelope(a))?)
}

pub fn phase_from_json<T: Real>(s: &str) -> Result<PhaseFunction<T>, IoError> {
    phase_from_envelope(&serde_json::from_str(s)?)
}

pub fn kernel_to_json<T: Real>(k: &KernelMatrix<T>) -> Result<String, IoError> {
    Ok(serde_json::to_string(&kernel_to_envelope(k))?)
}

pub fn kernel_from_json<T: Real>(s: &str) -> Result<KernelMatrix<T>, IoError> {
    kernel_from_envelope(&serde_json::from_str(s)?)
}

fn write_pairs<T: Real>(out: &mut String, a: &Array2<Complex<T>>) {
    for z in a.iter() {
        let _ = writeln!(out, "{},{}", z.re, z.im);
    }
}

pub fn phase_to_csv<T: Real>(a: &PhaseFunction<T>) -> String {
    let g = &a.grid;
    let mut out = format!("# axes q:{}:{} p:{}:{}\n", 2 * g.n(), g.dq(), g.n(), g.dp());
    write_pairs(&mut out, &a.entries);
    out
}

pub fn kernel_to_csv<T: Real>(k: &KernelMatrix<T>) -> String {
    let g = &k.grid;
    let mut out = format!("# axes x:{}:{} y:{}:{}\n", g.n(), g.dx(), g.n(), g.dx());
    write_pairs(&mut out, &k.entries);
    out
}

struct Header<T> {
    names: (String, String),
    lens: (usize, usize),
    steps: (T, T),
}

fn parse_header<T: Real>(line: &str) -> Result<Header<T>, IoError> {
    let bad = |d: &str| IoError::Malformed { what: "csv header", detail: d.to_string() };
    let rest = line.strip_prefix("# axes ").ok_or_else(|| bad("missing '# axes' prefix"))?;
    let parts: Vec<&str> = rest.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(bad("expected two axis descriptors"));
    }
    let axis = |s: &str| -> Result<(String, usize, T), IoError> {
        let f: Vec<&str> = s.split(':').collect();
        if f.len() != 3 {
            return Err(bad(s));
        }
        let len = f[1].parse::<usize>().map_err(|_| bad(s))?;
        let step = f[2].parse::<T>().map_err(|_| bad(s))?;
        Ok((f[0].to_string(), len, step))
    };
    let (a, la, sa) = axis(parts[0])?;
    let (b, lb, sb) = axis(parts[1])?;
    Ok(Header { names: (a, b), lens: (la, lb), steps: (sa, sb) })
}

fn parse_body<T: Real>(lines: std::str::Lines<'_>, shape: (usize, usize)) -> Result<Array2<Complex<T>>, IoError> {
    let mut vals = Vec::with_capacity(shape.0 * shape.1);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || IoError::Malformed { what: "csv row", detail: format!("line {}: '{line}'", i + 2) };
        let (re, im) = line.split_once(',').ok_or_else(bad)?;
        vals.push(Complex::new(re.trim().parse::<T>().map_err(|_| bad())?, im.trim().parse::<T>().map_err(|_| bad())?));
    }
    if vals.len() != shape.0 * shape.1 {
        return Err(IoError::Malformed {
            what: "csv body",
            detail: format!("expected {} values, found {}", shape.0 * shape.1, vals.len()),
        });
    }
    Ok(Array2::from_shape_vec(shape, vals).expect("length checked"))
}

pub fn phase_from_csv<T: Real>(s: &str) -> Result<PhaseFunction<T>, IoError> {
    let mut lines = s.lines();
    let h: Header<T> = parse_header(lines.next().unwrap_or(""))?;
    if h.names != ("q".into(), "p".into()) || h.lens.0 != 2 * h.lens.1 {
        return Err(IoError::Malformed { what: "csv header", detail: "expected q:<2n> p:<n>".into() });
    }
    let g = make_grid(h.lens.1, h.steps.0 + h.steps.0)?;
    PhaseFunction::new(g, parse_body(lines, (h.lens.0, h.lens.1))?).map_err(Into::into)
}

pub fn kernel_from_csv<T: Real>(s: &str) -> Result<KernelMatrix<T>, IoError> {
    let mut lines = s.lines();
    let h: Header<T> = parse_header(lines.next().unwrap_or(""))?;
    if h.names != ("x".into(), "y".into()) || h.lens.0 != h.lens.1 {
        return Err(IoError::Malformed { what: "csv header", detail: "expected x:<n> y:<n>".into() });
    }
    let g = make_grid(h.lens.0, h.steps.0)?;
    KernelMatrix::new(g, parse_body(lines, (h.lens.0, h.lens.1))?).map_err(Into::into)
}

/// Writes a phase function in the chosen layout.
pub fn write_phase<T: Real>(path: &std::path::Path, a: &PhaseFunction<T>, format: Format) -> Result<(), IoError> {
    let text = match format {
        Format::Csv => phase_to_csv(a),
        Format::Json => phase_to_json(a)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_phase<T: Real>(path: &std::path::Path) -> Result<PhaseFunction<T>, IoError> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        phase_from_json(&text)
    } else {
        phase_from_csv(&text)
    }
}
