use phasespace::*;
use std::f64::consts::PI;

fn source_grid() -> Grid64 {
    make_grid(128, 0.25).unwrap()
}

fn gaussian_source(amplitude: f64) -> Phase64 {
    Phase64::from_real_fn(source_grid(), move |q, p| amplitude * (-q * q - p * p).exp())
}

fn max_dense_diff(a: &AlphaKernel<f64>, b: &AlphaKernel<f64>) -> f64 {
    let (x, y) = (a.entries.as_ref().unwrap(), b.entries.as_ref().unwrap());
    x.iter().zip(y).fold(0.0, |m, (p, q)| m.max((p - q).norm()))
}

#[test]
fn kernel_of_gaussian_observable() {
    let axes = KernelAxes { n: 16, half_width: 4.0 };
    let spec = GaussianAlphaSpec::new(1.0, 1.0, 1).unwrap();
    let want = spec.kernel::<f64>().densify(axes);
    let got = alpha_kernel_from_a(&gaussian_source(PI / 2.0), axes);
    assert!(max_dense_diff(&got, &want) < 1e-6);
    assert!(got.constraint_defect() < 1e-8);
    assert!(want.constraint_defect() < 1e-8);
    // the kernel is linear in the source: 2 pi exp(..) gives four times the unit kernel
    let big = alpha_kernel_from_a(&gaussian_source(2.0 * PI), axes);
    let e = big.entries.as_ref().unwrap();
    let w = want.entries.as_ref().unwrap();
    let scaled = e.iter().zip(w).fold(0.0f64, |m, (a, b)| m.max((a - b * 4.0).norm()));
    assert!(scaled < 1e-6);
}

#[test]
fn zero_and_constant_sources() {
    let axes = KernelAxes { n: 8, half_width: 3.0 };
    let z = alpha_kernel_from_a(&Phase64::zeros(source_grid()), axes);
    assert!(z.entries.as_ref().unwrap().iter().all(|v| v.norm() == 0.0));
    // a constant only generates the zero kernel in the continuum; on the grid it
    // still vanishes at coincident points and keeps the required antisymmetry
    let c = alpha_kernel_from_a(&Phase64::from_real_fn(source_grid(), |_, _| 1.0), axes);
    assert!(c.constraint_defect() < 1e-12);
    for i in 0..8 {
        for k in 0..8 {
            let (q, p) = (axes.point(i), axes.point(k));
            assert!(c.eval(q, p, q, p).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn point_evaluation_matches_dense() {
    let axes = KernelAxes { n: 6, half_width: 2.0 };
    let src = gaussian_source(1.3);
    let dense = alpha_kernel_from_a(&src, axes);
    for (q1, p1, q2, p2) in [(0.4, -1.2, 2.0, 0.4), (-2.0, 2.0, -0.4, 1.2)] {
        let d = dense.eval(q1, p1, q2, p2).unwrap();
        let v = alpha_kernel_value(&src, q1, p1, q2, p2);
        assert!((d - v).norm() < 1e-12);
    }
}

#[test]
fn r_function_reindexing() {
    for eps in [1, -1] {
        let spec = GaussianAlphaSpec::new(1.5, 0.7, eps).unwrap();
        let r = kernel_to_r(&spec.kernel::<f64>());
        for &(u, v, up, vp) in &[(0.3, -0.2, 1.1, 0.5), (-1.0, 0.7, -0.4, 2.0)] {
            let got = r.eval(u, v, up, vp).unwrap();
            let want = (u * vp + eps as f64 * up * v).sin() * (-u * u / 1.5 - v * v / 0.7).exp();
            assert!((got.im - want).abs() < 1e-14 && got.re == 0.0);
            let flipped = r.eval(-u, -v, up, vp).unwrap();
            assert!((flipped + got).norm() < 1e-15);
        }
    }
    let zero = kernel_to_r(&AlphaKernel::<f64>::zero());
    assert_eq!(zero.eval(0.1, 0.2, 0.3, 0.4).unwrap().norm(), 0.0);
}

#[test]
fn gridded_r_refuses_off_lattice_points() {
    let axes = KernelAxes { n: 9, half_width: 2.0 };
    let mut dense = GaussianAlphaSpec::new(1.0, 1.0, 1).unwrap().kernel::<f64>().densify(axes);
    dense.closure = None;
    let r = kernel_to_r(&dense);
    // u' = q1 + q2 = 0.5 + 0.5, u = 0 -> q1 = q2 = 0.5 lies on the lattice
    assert!(r.eval(0.0, 0.0, 1.0, 1.0).is_ok());
    match r.eval(0.1, 0.0, 1.0, 1.0) {
        Err(FactorizeError::OffLattice { hint, .. }) => assert!(hint.contains("lattice step")),
        other => panic!("expected off-lattice error, got {other:?}"),
    }
}

#[test]
fn sine_transform_of_gaussian_r() {
    // i int sin(vx+uy) R du dv = (pi/2) sqrt(tau sigma)
    //   [exp(-tau((y+v')/2)^2 - sigma((x+eps u')/2)^2) - exp(-tau((y-v')/2)^2 - sigma((x-eps u')/2)^2)]
    for eps in [1i8, -1] {
        let spec = GaussianAlphaSpec::new(1.3, 0.8, eps).unwrap();
        let r = kernel_to_r(&spec.kernel::<f64>()).with_box(spec.quadrature_box(6.0));
        let e = eps as f64;
        for &(x, y, up, vp) in &[(0.5, -1.0, 1.5, 0.2), (-2.0, 1.0, 0.3, -1.7), (1.0, 1.0, -1.0, 2.0)] {
            let got = r.sine_integral(x, y, up, vp).unwrap() * C64::i();
            let want = PI / 2.0
                * (1.3f64 * 0.8).sqrt()
                * ((-1.3 * ((y + vp) / 2.0f64).powi(2) - 0.8 * ((x + e * up) / 2.0f64).powi(2)).exp()
                    - (-1.3 * ((y - vp) / 2.0f64).powi(2) - 0.8 * ((x - e * up) / 2.0f64).powi(2)).exp());
            assert!((got.re - want).abs() < 1e-10 && got.im.abs() < 1e-12, "eps {eps}: {got} vs {want}");
        }
    }
}

#[test]
fn admissibility_separates_the_two_signs() {
    let probes = ProbeLattice::default();
    assert_eq!(probes.points().len(), 625);
    let good = GaussianAlphaSpec::new(1.0, 1.0, 1).unwrap();
    let bad = GaussianAlphaSpec::new(1.0, 1.0, -1).unwrap();
    let rg = kernel_to_r(&good.kernel::<f64>()).with_box(good.quadrature_box(8.0));
    let rb = kernel_to_r(&bad.kernel::<f64>()).with_box(bad.quadrature_box(8.0));
    let g = autv_residual(&rg, &probes).unwrap();
    let b = autv_residual(&rb, &probes).unwrap();
    assert!(g < 1e-6);
    assert!(b > 1e3 * g.max(1e-12));
    assert!(b > 0.1);
    let zero = kernel_to_r(&AlphaKernel::<f64>::zero()).with_box(good.quadrature_box(8.0));
    assert_eq!(autv_residual(&zero, &probes).unwrap(), 0.0);
    assert!(matches!(autv_residual(&kernel_to_r(&good.kernel::<f64>()), &probes), Err(FactorizeError::MissingBox)));
}

fn recover(spec: GaussianAlphaSpec, grid: &Grid64, opts: RecoverOptions) -> Result<Recovered<f64>, FactorizeError> {
    let far = spec.far_point();
    let freq = 2.0 * far.0.max(far.1).max(grid.extent()).max(grid.dp() * grid.n() as f64 / 2.0) + 4.0;
    let r = kernel_to_r(&spec.kernel::<f64>()).with_box(spec.quadrature_box(freq));
    recover_a(&r, 0.0, grid, &RecoverOptions { gauge: Gauge::Point(far.0, far.1), ..opts })
}

#[test]
fn recovered_observable_for_admissible_kernels() {
    let grid: Grid64 = make_grid(16, 0.75).unwrap();
    for (tau, sigma) in [(1.0, 1.0), (4.0, 1.0)] {
        let spec = GaussianAlphaSpec::new(tau, sigma, 1).unwrap();
        let rec = recover(spec, &grid, RecoverOptions::default()).unwrap();
        assert!(rec.admitted);
        assert!(rec.max_imag < 1e-12);
        let mut err = 0.0f64;
        for c in 0..2 * grid.n() {
            for k in 0..grid.n() {
                err = err.max((rec.a.at(c, k).re - spec.expected_a(grid.q(c), grid.p(k))).abs());
            }
        }
        assert!(err < 1e-6, "tau {tau}: {err}");
    }
    let peak = recover(GaussianAlphaSpec::new(4.0, 1.0, 1).unwrap(), &grid, RecoverOptions::default())
        .unwrap()
        .a
        .value_at(0.0, 0.0)
        .unwrap()
        .re;
    assert!((peak - PI).abs() < 1e-8);
}

#[test]
fn zero_kernel_recovers_the_constant() {
    let grid: Grid64 = make_grid(8, 0.5).unwrap();
    let spec = GaussianAlphaSpec::new(1.0, 1.0, 1).unwrap();
    let r = kernel_to_r(&AlphaKernel::<f64>::zero()).with_box(spec.quadrature_box(4.0));
    let rec = recover_a(&r, 1.5, &grid, &RecoverOptions::default()).unwrap();
    assert!(rec.a.entries.iter().all(|z| *z == C64::new(1.5, 0.0)));
}

#[test]
fn inadmissible_kernel_is_gated() {
    let grid: Grid64 = make_grid(8, 0.75).unwrap();
    let bad = GaussianAlphaSpec::new(1.0, 1.0, -1).unwrap();
    match recover(bad, &grid, RecoverOptions::default()) {
        Err(FactorizeError::GateRefused { residual, threshold }) => assert!(residual > 1e3 * threshold),
        other => panic!("expected refusal, got {other:?}"),
    }
    let forced = recover(bad, &make_grid(64, 0.25).unwrap(), RecoverOptions { override_gate: true, ..Default::default() }).unwrap();
    assert!(!forced.admitted);
    let mismatch = xi_consistency(&forced.a, &bad.kernel(), &ProbeLattice { per_axis: 3, half_width: 1.0 }).unwrap();
    assert!(mismatch > 1e-2, "mismatch {mismatch}");
}

#[test]
fn admissible_recovery_reproduces_its_kernel() {
    let spec = GaussianAlphaSpec::new(1.0, 1.0, 1).unwrap();
    let rec = recover(spec, &make_grid(64, 0.25).unwrap(), RecoverOptions::default()).unwrap();
    let m = xi_consistency(&rec.a, &spec.kernel(), &ProbeLattice { per_axis: 3, half_width: 1.0 }).unwrap();
    assert!(m < 1e-6, "mismatch {m}");
}

#[test]
fn dense_pipeline_round_trip() {
    let amp = 0.9;
    let src = Phase64::from_real_fn(source_grid(), move |q, p| amp * (-(q - 0.2).powi(2) - 1.5 * p * p).exp());
    let axes = KernelAxes { n: 32, half_width: 4.0 };
    let kernel = alpha_kernel_from_a(&src, axes);
    assert!(kernel.constraint_defect() < 1e-8);
    let r = kernel_to_r(&kernel);
    let h = axes.step();
    let pts: Vec<(f64, f64)> = [-6i32, -3, 0, 2, 5]
        .iter()
        .flat_map(|&a| [-4i32, 0, 3].iter().map(move |&b| (a as f64 * h, b as f64 * h)))
        .collect();
    let (vals, imag) = recover_at(&r, 0.0, &pts, Gauge::Origin).unwrap();
    assert!(imag < 1e-10);
    let f = |q: f64, p: f64| amp * (-(q - 0.2f64).powi(2) - 1.5 * p * p).exp();
    for (&(x, y), v) in pts.iter().zip(&vals) {
        assert!((v - (f(x, y) - f(0.0, 0.0))).abs() < 1e-5, "({x},{y}): {v}");
    }
}

#[test]
fn spec_validation() {
    assert!(GaussianAlphaSpec::new(-1.0, 1.0, 1).is_err());
    assert!(GaussianAlphaSpec::new(1.0, 0.0, 1).is_err());
    assert!(GaussianAlphaSpec::new(1.0, 1.0, 0).is_err());
}
