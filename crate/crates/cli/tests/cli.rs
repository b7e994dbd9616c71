use std::process::Command;

use phasespace::make_grid;
use phasespace_cli::commands::parse_state;
use phasespace_cli::config::{parse_kv, Overrides, RunConfig};
use phasespace_cli::{run, CliError};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["phasespace"];
    full.extend_from_slice(args);
    let r = run(full);
    let v = if r.stdout.is_empty() { Value::Null } else { serde_json::from_str(&r.stdout).expect("json report") };
    (r.code, v)
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["phasespace"];
    full.extend_from_slice(args);
    run(full).code
}

#[test]
fn config_file_with_comments_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# grid\nn = 32   # even\ndx=0.5\n\nseed = 7\nformat = csv\n").unwrap();
    let cfg = RunConfig::load(Some(&path), &Overrides { dx: Some(0.3), ..Default::default() }).unwrap();
    assert_eq!(cfg.n, 32);
    assert_eq!(cfg.dx, 0.3);
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.format, phasespace::io::Format::Csv);
    assert_eq!(cfg.r_max, RunConfig::default().r_max);
}

#[test]
fn config_rejects_unknown_keys_and_bad_values() {
    assert!(matches!(RunConfig::from_kv(&parse_kv("colour = red").unwrap()), Err(CliError::Usage(_))));
    assert!(matches!(parse_kv("just words"), Err(CliError::Usage(_))));
    assert!(matches!(RunConfig::from_kv(&parse_kv("n = many").unwrap()), Err(CliError::Usage(_))));
    let odd = RunConfig { n: 33, ..Default::default() };
    assert!(odd.validate().is_err());
    assert_eq!(code(&["--n", "33", "wigner", "hermite:0"]), 2);
    assert_eq!(code(&["--dx", "-1", "wigner", "hermite:0"]), 2);
}

#[test]
fn hermite_wigner_values_at_origin() {
    for (k, want) in [(0, std::f64::consts::FRAC_1_PI), (1, -std::f64::consts::FRAC_1_PI)] {
        let (c, v) = json(&["wigner", &format!("hermite:{k}")]);
        assert_eq!(c, 0);
        let w = v["body"]["w_at_origin"].as_f64().unwrap();
        assert!((w - want).abs() < 1e-6, "k={k}: {w}");
        assert!(v["body"]["purity_star_residual"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn state_parsing() {
    let g = make_grid(32, 0.3).unwrap();
    let s = parse_state("0.6*hermite:0 + 0.8i*hermite:1", g, 4).unwrap();
    assert!((s.norm() - 1.0).abs() < 1e-8);
    let d = parse_state("hermite:0 - hermite:0", g, 4).unwrap();
    assert!(d.norm() < 1e-14);
    assert!(matches!(parse_state("hermite:4", g, 4), Err(CliError::Usage(_))));
    assert!(matches!(parse_state("gaussian", g, 4), Err(CliError::Usage(_))));
    assert!(matches!(parse_state("x*hermite:0", g, 4), Err(CliError::Usage(_))));
}

#[test]
fn out_of_basis_and_unknown_states_are_usage_errors() {
    assert_eq!(code(&["wigner", "hermite:99"]), 2);
    assert_eq!(code(&["wigner", "coherent:1"]), 2);
    assert_eq!(code(&["wigner", "hermite:0 - hermite:0"]), 2);
}

#[test]
fn state_files() {
    let dir = tempfile::tempdir().unwrap();
    let g: phasespace::Grid64 = make_grid(64, 0.3).unwrap();
    let good = dir.path().join("good.txt");
    let lines: String = (0..64).map(|j| format!("{},{}\n", (-g.x(j) * g.x(j) / 2.0).exp(), 0.0)).collect();
    std::fs::write(&good, format!("# gaussian\n{lines}")).unwrap();
    let spec = format!("file:{}", good.display());
    assert!(parse_state(&spec, g, 2).is_ok());
    let (c, v) = json(&["--n", "64", "--dx", "0.3", "wigner", &spec]);
    assert_eq!(c, 0);
    assert!(v["body"]["input_norm"].as_f64().unwrap() > 0.0);

    let short = dir.path().join("short.txt");
    std::fs::write(&short, "1,0\n2,0\n").unwrap();
    assert_eq!(code(&["--n", "64", "--dx", "0.3", "wigner", &format!("file:{}", short.display())]), 2);
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "1,0,3\n").unwrap();
    assert!(parse_state(&format!("file:{}", junk.display()), g, 2).is_err());
    assert_eq!(code(&["wigner", "file:/does/not/exist"]), 2);
}

#[test]
fn same_seed_gives_identical_files() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().to_str().unwrap();
    let names = ["check_report.json", "wigner_report.json", "wigner.csv"];
    let mut runs = Vec::new();
    for _ in 0..2 {
        assert_eq!(code(&["--seed", "11", "--out", out, "check", "wigner"]), 0);
        assert_eq!(code(&["--seed", "11", "--out", out, "--format", "csv", "wigner", "hermite:2"]), 0);
        runs.push(names.map(|n| std::fs::read(d.path().join(n)).unwrap()));
    }
    for (i, name) in names.iter().enumerate() {
        assert!(!runs[0][i].is_empty());
        assert_eq!(runs[0][i], runs[1][i], "{name}");
    }
    let r1 = run(["phasespace", "--seed", "1", "reps", "time-reversal"]).stdout;
    let r2 = run(["phasespace", "--seed", "1", "reps", "time-reversal"]).stdout;
    assert_eq!(r1, r2);
}

#[test]
fn undersized_grid_reports_failed_purity() {
    let (c, v) = json(&["--n", "16", "wigner", "hermite:1"]);
    assert_eq!(c, 1);
    assert!(v["body"]["purity_integral_residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn wigner_array_round_trips_through_files() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().to_str().unwrap();
    for fmt in ["csv", "json"] {
        assert_eq!(code(&["--n", "64", "--dx", "0.3", "--out", out, "--format", fmt, "wigner", "hermite:1"]), 0);
        let back: phasespace::Phase64 = phasespace::io::read_phase(&d.path().join(format!("wigner.{fmt}"))).unwrap();
        assert_eq!(back.grid.n(), 64);
        assert!((back.integral().re - 1.0).abs() < 1e-8);
    }
}

#[test]
fn factorize_admits_and_refuses() {
    let (c, v) = json(&["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["gate"], "admitted");
    assert!(v["body"]["recovered"]["error_vs_closed_form"].as_f64().unwrap() < 1e-6);
    assert!(v["body"]["residual_ratio"].as_f64().unwrap() > 1e3);

    let (c, v) = json(&["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "-1"]);
    assert_eq!(c, 1);
    assert_eq!(v["body"]["gate"], "refused");
    assert!(v["body"]["recovered"].is_null());

    let (c, v) = json(&["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "-1", "--override"]);
    assert_eq!(c, 1);
    assert_eq!(v["body"]["gate"], "overridden");
    assert!(v["body"]["recovered"]["xi_mismatch"].as_f64().unwrap() > 1e-3);
}

#[test]
fn factorize_parameter_errors() {
    assert_eq!(code(&["factorize", "--tau", "-1", "--sigma", "1", "--epsilon", "1"]), 2);
    assert_eq!(code(&["factorize", "--tau", "1", "--sigma", "0", "--epsilon", "1"]), 2);
    assert_eq!(code(&["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "2"]), 2);
    assert_eq!(code(&["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "1", "--grid-n", "7"]), 2);
    assert_eq!(code(&["factorize", "--tau", "1"]), 2);
}

#[test]
fn reps_reports() {
    let (c, v) = json(&["reps", "sp2b", "--a", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["examples"][0]["casimir_value"], "-5/4");
    let (c, v) = json(&["reps", "galilei", "--mass", "3", "--hbar", "1/2"]);
    assert_eq!(c, 0);
    assert!(v["body"]["examples"][0]["relations_checked"].as_array().unwrap().len() > 5);
    let (c, v) = json(&["reps"]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["examples"].as_array().unwrap().len(), 6);
    assert_eq!(code(&["reps", "hw", "--hbar", "0"]), 2);
    assert_eq!(code(&["reps", "hw", "--hbar", "pi"]), 2);
    assert_eq!(code(&["reps", "hw", "--hbar", "1/0"]), 2);
    assert_eq!(code(&["reps", "sp2b", "--a", "-3/2"]), 0);
}

#[test]
fn check_suites_report_known_table_rows() {
    let (c, v) = json(&["check", "liftgen"]);
    assert_eq!(c, 1);
    let failing: Vec<&str> = v["body"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["table row QPQ", "table row PQP"]);
    for s in ["wigner", "star", "symweyl", "reps"] {
        assert_eq!(code(&["check", s]), 0, "{s}");
    }
}

#[test]
fn star_demo_runs() {
    let (c, v) = json(&["star-demo"]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["symbolic"][0], "q * p = q*p + (1/2)i");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_phasespace");
    let ok = Command::new(bin).args(["wigner", "hermite:0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("\"passed\": true"));
    let usage = Command::new(bin).args(["wigner", "hermite:99"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8(usage.stderr).unwrap().contains("hermite:99"));
    let bad_flag = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(2));
    let refused = Command::new(bin).args(["factorize", "--tau", "1", "--sigma", "1", "--epsilon", "-1"]).output().unwrap();
    assert_eq!(refused.status.code(), Some(1));
}
