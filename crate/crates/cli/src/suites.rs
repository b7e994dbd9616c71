//! Invariant suites behind `phasespace check`.
//!
//! Each suite runs on its own fixed grids, chosen so the default
//! tolerances hold with margin; `--tol` replaces every numerical tolerance.

use clap::ValueEnum;
use num_complex::Complex;
use num_traits::ToPrimitive;
use phasespace::{
    hermite_basis, inner_k, make_grid, moyal_bracket, phi_rs, purity_residual, star, weyl_wigner, weyl_wigner_inv,
    wigner_of_state, Grid64, Phase64, State64, TwistedOracle, C64,
};
use phasespace_reps as reps;
use phasespace_symbolic::{
    anticommutator_defect, moyal_symbolic, read_off_generator, star_symbolic, table1_check, weyl_quantize,
    weyl_quantize_symmetrized, weyl_symbol, xi_lift, xi_monomial, BigRational, Cq, Generator, Symbol,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::random;
use crate::report::CheckLine;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Wigner,
    Star,
    Symweyl,
    Liftgen,
    Reps,
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    Ok(match suite {
        Suite::All => {
            let mut v = Vec::new();
            for s in [Suite::Wigner, Suite::Star, Suite::Symweyl, Suite::Liftgen, Suite::Reps] {
                v.extend(run_suite(s, cfg)?);
            }
            v
        }
        Suite::Wigner => wigner_suite(cfg)?,
        Suite::Star => star_suite(cfg)?,
        Suite::Symweyl => symweyl_suite(cfg)?,
        Suite::Liftgen => liftgen_suite(cfg)?,
        Suite::Reps => reps_suite(cfg)?,
    })
}

fn rng(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
}

fn max_diff(a: impl Iterator<Item = C64>, b: impl Iterator<Item = C64>) -> f64 {
    a.zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn fine_grid() -> Result<Grid64, CliError> {
    Ok(make_grid(128, 0.125)?)
}

fn wigner_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    const S: &str = "wigner";
    let g = make_grid(64, 0.25)?;
    let mut r = rng(cfg, 1);
    let (mut rt, mut parseval) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let k1 = random::kernel(g, &mut r);
        let k2 = random::kernel(g, &mut r);
        let a1 = weyl_wigner(&k1);
        rt = rt.max(max_diff(weyl_wigner_inv(&a1).entries.iter().copied(), k1.entries.iter().copied()));
        rt = rt.max(a1.max_abs_diff(&weyl_wigner(&weyl_wigner_inv(&a1))));
        parseval = parseval.max((inner_k(&a1, &weyl_wigner(&k2))? - k1.hs_inner(&k2)?).norm());
    }
    let fg = fine_grid()?;
    let rmax = cfg.r_max.min(6);
    let b = hermite_basis(&fg, rmax)?;
    let phis: Vec<Vec<Phase64>> = (0..rmax).map(|i| (0..rmax).map(|j| phi_rs(&b, i, j)).collect()).collect();
    let mut ortho = 0.0f64;
    for (i, row) in phis.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            for (u, row2) in phis.iter().enumerate() {
                for (v, c) in row2.iter().enumerate() {
                    let want = if (i, j) == (u, v) { 1.0 } else { 0.0 };
                    ortho = ortho.max((inner_k(a, c)? - C64::new(want, 0.0)).norm());
                }
            }
        }
    }
    let mut pure = 0.0f64;
    for k in 0..2 {
        let p = purity_residual(&wigner_of_state(&State64::new(fg, b.complex(k))?));
        pure = pure.max(p.r1).max(p.r2);
    }
    let w1 = wigner_of_state(&State64::new(fg, b.complex(1))?);
    let origin = (w1.value_at(0.0, 0.0).unwrap_or_default().re + std::f64::consts::FRAC_1_PI).abs();
    Ok(vec![
        CheckLine::numeric(S, "transform round trip on random kernels", rt, cfg.tol_or(1e-12)),
        CheckLine::numeric(S, "discrete Parseval identity", parseval, cfg.tol_or(1e-12)),
        CheckLine::numeric(S, format!("basis symbols orthonormal, r, s < {rmax}"), ortho, cfg.tol_or(1e-8)),
        CheckLine::numeric(S, "purity of e0 and e1", pure, cfg.tol_or(1e-8)),
        CheckLine::numeric(S, "Wigner function of e1 at the origin is -1/pi", origin, cfg.tol_or(1e-6)),
    ])
}

fn star_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    const S: &str = "star";
    let g = make_grid(64, (std::f64::consts::PI / 64.0).sqrt())?;
    let b = hermite_basis(&g, 2)?;
    let phis: Vec<Phase64> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| phi_rs(&b, i, j)).collect();
    let oracle = TwistedOracle::new(g);
    let tabs: Vec<_> = phis.iter().map(|p| oracle.tabulate(p)).collect();
    let mut routes = 0.0f64;
    for (x, tx) in phis.iter().zip(&tabs) {
        for (y, ty) in phis.iter().zip(&tabs) {
            routes = routes.max(star(x, y)?.max_abs_diff(&oracle.product(tx, ty)));
        }
    }
    let sb = hermite_basis(&g, 4)?;
    let mut r = rng(cfg, 2);
    let (x, y, z) = (
        weyl_wigner(&random::smooth_kernel(&sb, &mut r)),
        weyl_wigner(&random::smooth_kernel(&sb, &mut r)),
        weyl_wigner(&random::smooth_kernel(&sb, &mut r)),
    );
    let left = star(&star(&x, &y)?, &z)?;
    let assoc = left.max_abs_diff(&star(&x, &star(&y, &z)?)?) / left.max_abs().max(1.0);
    let hx = weyl_wigner(&random::hermitian(g, &mut r));
    let hy = weyl_wigner(&random::hermitian(g, &mut r));
    let anti = moyal_bracket(&hx, &hy)?.add(&moyal_bracket(&hy, &hx)?)?.max_abs();
    let real = moyal_bracket(&hx, &hy)?.max_imag();
    Ok(vec![
        CheckLine::numeric(S, "kernel route agrees with twisted quadrature on basis symbols", routes, cfg.tol_or(1e-6)),
        CheckLine::numeric(S, "associativity on smooth random symbols", assoc, cfg.tol_or(1e-10)),
        CheckLine::numeric(S, "bracket antisymmetry", anti, cfg.tol_or(1e-12)),
        CheckLine::numeric(S, "bracket of real symbols is real", real, cfg.tol_or(1e-10)),
    ])
}

fn cq_to_c64(c: &Cq) -> C64 {
    C64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

fn sample_symbol(g: Grid64, s: &Symbol, damped: bool) -> Phase64 {
    let terms: Vec<(i32, i32, C64)> = s.terms().map(|(&(a, b), c)| (a as i32, b as i32, cq_to_c64(c))).collect();
    Phase64::from_fn(g, move |q, p| {
        let v: C64 = terms.iter().map(|&(a, b, c)| c * q.powi(a) * p.powi(b)).sum();
        if damped {
            v * (-q * q - p * p).exp()
        } else {
            v
        }
    })
}

/// Largest gap on the central half of the grid between the grid bracket
/// `{A, B G}` and the exact one, with `G = exp(-q^2 - p^2)`.
pub fn grid_bracket_gap(a: &Symbol, b: &Symbol) -> Result<f64, CliError> {
    let g = fine_grid()?;
    let mult = Generator::from_terms(b.terms().map(|(&(i, j), c)| ([i, j, 0, 0], c.clone())));
    let minus_i = Cq::new(BigRational::from_integer(0.into()), BigRational::from_integer((-1).into()));
    let exact = xi_lift(a).map_err(|e| CliError::Failure(e.to_string()))?.compose(&mult).apply_to_gaussian().scale(&minus_i);
    let num = moyal_bracket(&sample_symbol(g, a, false), &sample_symbol(g, b, true))?;
    let want = sample_symbol(g, &exact, true);
    let n = g.n();
    let mut worst = 0.0f64;
    for c in n / 2..3 * n / 2 {
        for k in n / 4..3 * n / 4 {
            worst = worst.max((num.at(c, k) - want.at(c, k)).norm());
        }
    }
    Ok(worst)
}

fn symweyl_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    const S: &str = "symweyl";
    let mut r = rng(cfg, 3);
    let (mut inverse, mut forms, mut hom) = (true, true, true);
    for _ in 0..25 {
        let a = random::symbol(&mut r, 6, false);
        let x = weyl_quantize(&a);
        inverse &= weyl_symbol(&x) == a;
        forms &= x.same_operator(&weyl_quantize_symmetrized(&a));
        let w = random::operator(&mut r, 6);
        inverse &= weyl_quantize(&weyl_symbol(&w)).same_operator(&w);
        let (u, v) = (random::operator(&mut r, 3), random::operator(&mut r, 3));
        hom &= weyl_symbol(&(&u * &v)) == star_symbolic(&weyl_symbol(&u), &weyl_symbol(&v));
    }
    let qp = star_symbolic(&Symbol::q(), &Symbol::p());
    let half_i = Symbol::constant(Complex::new(BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into())));
    let example = qp == &Symbol::monomial(1, 1) + &half_i;
    let mut gap = 0.0f64;
    let quad = ["1", "q", "p", "q^2", "q*p", "p^2"];
    for a in quad {
        for b in quad {
            gap = gap.max(grid_bracket_gap(&a.parse().expect("literal"), &b.parse().expect("literal"))?);
        }
    }
    Ok(vec![
        CheckLine::exact(S, "symbol and symmetric quantisation are mutually inverse", inverse),
        CheckLine::exact(S, "both forms of symmetric quantisation agree", forms),
        CheckLine::exact(S, "symbol map is a star-product homomorphism", hom),
        CheckLine::exact(S, "q * p = qp + i/2", example),
        CheckLine::numeric(S, "exact bracket matches grid bracket on damped quadratics", gap, cfg.tol_or(1e-6)),
    ])
}

fn liftgen_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    const S: &str = "liftgen";
    let mut out = Vec::new();
    let table = table1_check::<BigRational>();
    for row in &table.rows {
        let mut line = CheckLine::exact(S, format!("table row {}", row.label), row.matches());
        if !row.matches() {
            line = line.with_detail(format!("reference {} but exact {}", row.printed_alpha, row.computed_alpha));
        }
        out.push(line);
    }
    out.push(CheckLine::exact(
        S,
        format!("generic row pattern on {} polynomials", table.generic_cases),
        table.generic_failures.is_empty(),
    ));
    out.push(CheckLine::exact(S, "potential row through fifth order", table.potential_matches));
    let mut mono = true;
    for m in 0..=6 {
        for n in 0..=6 {
            mono &= xi_monomial::<BigRational>(m, n) == xi_lift(&Symbol::monomial(m, n)).expect("real monomial");
        }
    }
    out.push(CheckLine::exact(S, "monomial formula equals the lift for degrees up to 6", mono));
    let mut r = rng(cfg, 4);
    let i = Cq::new(BigRational::from_integer(0.into()), BigRational::from_integer(1.into()));
    let mut lie = true;
    for _ in 0..20 {
        let a = random::symbol(&mut r, 5, true);
        let b = random::symbol(&mut r, 5, true);
        let lhs = xi_lift(&a).expect("real").commutator(&xi_lift(&b).expect("real"));
        lie &= lhs == xi_lift(&moyal_symbolic(&a, &b)).expect("real").scale(&i);
    }
    out.push(CheckLine::exact(S, "lift is a Lie homomorphism, [xi A, xi B] = i xi {A, B}", lie));
    let defect = anticommutator_defect(&Symbol::q(), &Symbol::p());
    out.push(CheckLine::exact(S, "lift is not an algebra homomorphism (q, p)", !defect.is_zero()).with_detail(defect.to_string()));
    let bad = Generator::term(i.clone(), [2, 0, 0, 1]);
    out.push(CheckLine::exact(S, "i q^2 dp has no observable", read_off_generator(&bad).is_err()));
    let mut inverted = true;
    for row in &table.rows {
        inverted &= read_off_generator(&row.computed_alpha).map(|s| s == row.printed_symbol.without_constant()).unwrap_or(false);
    }
    out.push(CheckLine::exact(S, "every table generator reads off to its observable", inverted));
    Ok(out)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn push_result(out: &mut Vec<CheckLine>, r: &reps::FactorizationResult) {
    for rel in &r.relations {
        let line = CheckLine {
            suite: "reps".into(),
            name: format!("{}: {}", r.example, rel.name),
            passed: rel.holds,
            value: rel.residual,
            tol: rel.tol,
            detail: None,
        };
        out.push(line);
    }
}

fn reps_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, CliError> {
    const S: &str = "reps";
    let mut out = Vec::new();
    for h in [1, 2] {
        push_result(&mut out, &reps::hw_factorize(&rat(h))?);
    }
    let levels = reps::gen_heisenberg_tower(8)?;
    for c in reps::tower_checks(&levels) {
        out.push(CheckLine::exact(S, format!("tower: {}", c.name), c.holds));
    }
    for m in [1, 3] {
        push_result(&mut out, &reps::galilei_factorize(&rat(m), &rat(1))?);
    }
    let case_a = reps::Sp2Params::case_a();
    let ra = reps::sp2_generators(&case_a)?;
    push_result(&mut out, &ra.factorization);
    let cas = |f: &reps::FactorizationResult| f.casimir.clone();
    let ca = cas(&ra.factorization);
    out.push(
        CheckLine::exact(S, "sp(2,R) case A Casimir = -3/16", ca.as_ref().map(|c| c.re == reps::expected_casimir(&case_a) && c.im == rat(0)) == Some(true))
            .with_detail(ca.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "not a scalar".into())),
    );
    for a in [0, 1, 2] {
        let p = reps::Sp2Params::case_b(rat(a));
        let rb = reps::sp2_generators(&p)?;
        push_result(&mut out, &rb.factorization);
        let cb = cas(&rb.factorization);
        let ok = cb.as_ref().map(|c| c.re == reps::expected_casimir(&p) && c.im == rat(0)) == Some(true);
        let distinct = cb.as_ref().map(|c| Some(c) != ca.as_ref()).unwrap_or(false);
        out.push(
            CheckLine::exact(S, format!("sp(2,R) case B a={a} Casimir = -(a^2+1)/4"), ok)
                .with_detail(cb.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "not a scalar".into())),
        );
        out.push(CheckLine::exact(S, format!("sp(2,R) case B a={a} inequivalent to case A"), distinct));
    }
    let g = make_grid(32, 0.3)?;
    let mut r = rng(cfg, 5);
    let ks: Vec<_> = (0..20).map(|_| random::kernel(g, &mut r).entries).collect();
    for c in reps::time_reversal_check(g, &ks, cfg.tol_or(1e-12))? {
        out.push(CheckLine { suite: S.into(), name: format!("time reversal: {}", c.name), passed: c.holds, value: c.residual, tol: cfg.tol_or(1e-12), detail: None });
    }
    Ok(out)
}
