use approx::assert_abs_diff_eq;
use ndarray::Array1;
use phasespace::*;
use std::f64::consts::PI;

#[test]
fn grid_spacing_and_axis() {
    let g: Grid64 = make_grid(8, 0.5).unwrap();
    assert_abs_diff_eq!(g.dp(), PI / 4.0, epsilon = 1e-15);
    let g: Grid64 = make_grid(4, 1.0).unwrap();
    assert_eq!(g.x_axis().to_vec(), vec![-2.0, -1.0, 0.0, 1.0]);
    assert_abs_diff_eq!(g.dp() * g.dx() * g.n() as f64, PI, epsilon = 1e-15);
}

#[test]
fn grid_rejects_bad_input() {
    assert_eq!(make_grid::<f64>(7, 0.5), Err(GridError::OddPoints(7)));
    assert!(make_grid::<f64>(7, 0.5).unwrap_err().to_string().contains("n must be even"));
    assert_eq!(make_grid::<f64>(2, 0.5), Err(GridError::TooFewPoints(2)));
    assert!(matches!(make_grid::<f64>(8, 0.0), Err(GridError::BadSpacing(_))));
    assert!(matches!(make_grid::<f64>(8, -1.0), Err(GridError::BadSpacing(_))));
    assert!(matches!(make_grid::<f64>(8, f64::NAN), Err(GridError::BadSpacing(_))));
}

#[test]
fn single_precision_grid() {
    let g: Grid32 = make_grid(32, 0.375f32).unwrap();
    let b = hermite_basis(&g, 3).unwrap();
    assert!(b.residual < 1e-5, "residual {}", b.residual);
}

#[test]
fn ground_state_matches_closed_form() {
    let g: Grid64 = make_grid(128, 0.125).unwrap();
    let b = hermite_basis(&g, 4).unwrap();
    for j in 0..g.n() {
        let x = g.x(j);
        let e0 = PI.powf(-0.25) * (-x * x / 2.0).exp();
        let e1 = PI.powf(-0.25) * 2f64.sqrt() * x * (-x * x / 2.0).exp();
        let e3 = PI.powf(-0.25) / 48f64.sqrt() * (8.0 * x.powi(3) - 12.0 * x) * (-x * x / 2.0).exp();
        assert_abs_diff_eq!(b.samples[[0, j]], e0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.samples[[1, j]], e1, epsilon = 1e-14);
        assert_abs_diff_eq!(b.samples[[3, j]], e3, epsilon = 1e-13);
    }
}

#[test]
fn discrete_norms() {
    let g: Grid64 = make_grid(128, 0.125).unwrap();
    let b = hermite_basis(&g, 4).unwrap();
    let n00 = inner_h(&b.complex(0), &b.complex(0), &g).unwrap();
    let n33 = inner_h(&b.complex(3), &b.complex(3), &g).unwrap();
    let n01 = inner_h(&b.complex(0), &b.complex(1), &g).unwrap();
    assert_abs_diff_eq!(n00.re, 1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(n33.re, 1.0, epsilon = 1e-10);
    assert!(n01.norm() < 1e-15);
}

#[test]
fn inner_h_is_sesquilinear() {
    let g: Grid64 = make_grid(64, 0.25).unwrap();
    let b = hermite_basis(&g, 2).unwrap();
    let e0 = b.complex(0);
    let two = e0.mapv(|z| z * 2.0);
    let ie = e0.mapv(|z| z * C64::i());
    assert_abs_diff_eq!(inner_h(&two, &e0, &g).unwrap().re, 2.0, epsilon = 1e-10);
    let v = inner_h(&ie, &e0, &g).unwrap();
    let base = inner_h(&e0, &e0, &g).unwrap();
    assert!((v - (-C64::i()) * base).norm() < 1e-14);
    let short = Array1::from_elem(3, C64::new(1.0, 0.0));
    assert!(matches!(inner_h(&short, &e0, &g), Err(GridError::LengthMismatch { .. })));
}

#[test]
fn orthonormal_through_r_max() {
    let g: Grid64 = make_grid(128, 0.125).unwrap();
    let b = hermite_basis(&g, 12).unwrap();
    assert!(b.is_orthonormal(), "residual {}", b.residual);
    assert!(b.residual < 1e-8);
}

#[test]
fn doubling_points_at_fixed_extent_changes_little() {
    let coarse: Grid64 = make_grid(64, 0.25).unwrap();
    let fine: Grid64 = make_grid(128, 0.125).unwrap();
    let bc = hermite_basis(&coarse, 8).unwrap();
    let bf = hermite_basis(&fine, 8).unwrap();
    for r in 0..8 {
        for s in 0..8 {
            let a = inner_h(&bc.complex(r), &bc.complex(s), &coarse).unwrap();
            let b = inner_h(&bf.complex(r), &bf.complex(s), &fine).unwrap();
            assert!((a - b).norm() < 1e-10, "r={r} s={s}");
        }
    }
}

#[test]
fn narrow_grid_still_builds_but_exposes_error() {
    let g: Grid64 = make_grid(16, 0.25).unwrap();
    let b = hermite_basis(&g, 10).unwrap();
    assert!(!b.is_orthonormal());
    assert!(matches!(hermite_basis(&g, 0), Err(GridError::EmptyBasis)));
}

#[test]
fn recurrence_is_stable_at_high_order() {
    let g: Grid64 = make_grid(256, 0.1).unwrap();
    let b = hermite_basis(&g, 60).unwrap();
    assert!(b.residual < 1e-8, "residual {}", b.residual);
}
