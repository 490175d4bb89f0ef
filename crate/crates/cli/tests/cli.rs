//! End-to-end tests of the `bjorth` binary: exit codes, report output and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use bjorth_cli::report::{CommandOutput, Report};

fn bjorth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjorth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_report(args: &[&str]) -> Report {
    let out = bjorth(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Report::from_text(&String::from_utf8(out.stdout).expect("utf8")).expect("report parses")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn norm_of_cube_on_radius_two() {
    let report = stdout_report(&["norm", "z^3", "--curve", "circle(0,2)"]);
    match report.outputs {
        CommandOutput::Norm(n) => assert!((n.norm_value - 8.0).abs() <= 1e-12 * 8.0),
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn jgamma_blaschke_is_member() {
    let report = stdout_report(&["jgamma", "blaschke(0.5,1)", "--curve", "circle(0,1)"]);
    match report.outputs {
        CommandOutput::JGamma(jg) => assert!(jg.member),
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn classify_shifted_identity_is_smooth() {
    let report = stdout_report(&["classify", "z + 2", "--curve", "circle(0,1)"]);
    match report.outputs {
        CommandOutput::Classify(c) => {
            assert_eq!(c.smoothness, bjorth_core::Smoothness::Smooth);
            assert!(!c.extreme_on_analytic_curve);
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn ortho_both_methods_agree_on_monomials() {
    let report = stdout_report(&[
        "ortho", "z^2", "z^5", "--curve", "circle(0,1)", "--method", "both",
    ]);
    match report.outputs {
        CommandOutput::Ortho(o) => {
            assert!(o.minimize.unwrap().is_orthogonal());
            assert!(o.covering.unwrap().is_orthogonal());
            assert_eq!(o.agreement, Some(true));
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn ortho_finds_witness_for_shifted_identity() {
    let report = stdout_report(&["ortho", "z + 2", "1", "--curve", "circle(0,1)"]);
    match report.outputs {
        CommandOutput::Ortho(o) => {
            let d = o.minimize.unwrap();
            assert!(d.is_not_orthogonal());
            assert!(d.min_value < 3.0 * (1.0 - 1e-4));
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn ortho_zero_function_rule() {
    let report = stdout_report(&["ortho", "0", "z", "--curve", "circle(0,1)"]);
    match report.outputs {
        CommandOutput::Ortho(o) => assert!(o.minimize.unwrap().is_orthogonal()),
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn zeros_counts_cubic() {
    let report = stdout_report(&["zeros", "z^3 - 2*z + 5", "--curve", "circle(0,8)"]);
    match report.outputs {
        CommandOutput::Zeros(w) => assert_eq!(w.count, 3),
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn zero_on_curve_maps_to_exit_code_3() {
    let out = bjorth(&["zeros", "z*(z - 1)", "--curve", "circle(0,1)"]);
    assert_eq!(exit_code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr: {err}");
}

#[test]
fn syntax_errors_map_to_exit_code_2() {
    assert_eq!(exit_code(&bjorth(&["norm", "z^(-1)", "--curve", "circle(0,1)"])), 2);
    assert_eq!(exit_code(&bjorth(&["norm", "z", "--curve", "square(0,1)"])), 2);
    assert_eq!(exit_code(&bjorth(&["fta", "blaschke(0.5,1)"])), 2);
    // clap usage errors use code 2 as well
    assert_eq!(exit_code(&bjorth(&["norm"])), 2);
}

#[test]
fn geometry_violation_maps_to_exit_code_3() {
    let out = bjorth(&[
        "deriv-scenario", "z^2", "z^2 + 0.01*z^3",
        "--n", "2",
        "--outer", "circle(0,2)",
        "--inner", "circle(0,0.5)",
        "--lambda0", "-1",
        "--r", "1.5",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn deriv_scenario_worked_instance() {
    let report = stdout_report(&[
        "deriv-scenario", "z^2", "z^2 + 0.01*z^3",
        "--n", "2",
        "--outer", "circle(0,2)",
        "--inner", "circle(0,0.5)",
        "--lambda0", "-1",
        "--r", "1",
    ]);
    match report.outputs {
        CommandOutput::DerivScenario(s) => {
            assert!(s.hypothesis_holds);
            assert!((s.lhs - 0.08).abs() < 1e-6);
            assert!((s.rhs - 1.0).abs() < 1e-6);
            let d = s.decision.unwrap();
            assert!(d.is_not_orthogonal());
            assert!(d.min_value <= 1.81);
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn fta_command_pipeline() {
    let report = stdout_report(&["fta", "z^3 - 2*z + 5"]);
    match report.outputs {
        CommandOutput::Fta(f) => {
            assert_eq!(f.bound, 7.0);
            assert_eq!(f.count, 3);
            assert!(f.ok());
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn covering_command() {
    let report = stdout_report(&["covering", "1,1", "1,-1"]);
    match report.outputs {
        CommandOutput::Covering(c) => assert!(c.covering),
        other => panic!("unexpected output {other:?}"),
    }
    let report = stdout_report(&["covering", "0,5"]);
    match report.outputs {
        CommandOutput::Covering(c) => assert!(c.covering),
        other => panic!("unexpected output {other:?}"),
    }
    let report = stdout_report(&["covering", "3,1"]);
    match report.outputs {
        CommandOutput::Covering(c) => {
            assert!(!c.covering);
            assert!(c.witness.is_some());
        }
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn landscape_csv_shape() {
    let out = bjorth(&[
        "landscape", "z + 2", "1", "--curve", "circle(0,1)",
        "--box", "-1,1,-1,1", "--resolution", "11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "re_lambda,im_lambda,value");
    assert_eq!(lines.len() - 1, 121);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let args = ["ortho", "z + 2", "1", "--curve", "circle(0,1)", "--method", "both"];
    let mut first = stdout_report(&args);
    let mut second = stdout_report(&args);
    first.timing_ms = 0.0;
    second.timing_ms = 0.0;
    assert_eq!(first, second);
    assert_eq!(first.to_text(), second.to_text());
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("norm_report.json");
    let out = bjorth(&[
        "norm", "z^3", "--curve", "circle(0,2)", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report = Report::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    match report.outputs {
        CommandOutput::Norm(n) => assert!((n.norm_value - 8.0).abs() <= 1e-11),
        other => panic!("unexpected output {other:?}"),
    }
}

#[test]
fn config_file_overrides_defaults() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("grid.toml");
    std::fs::write(&path, "grid_n = 512\n").unwrap();
    let report = stdout_report(&[
        "norm", "z^3", "--curve", "circle(0,2)", "--config", path.to_str().unwrap(),
    ]);
    assert_eq!(report.config.grid_n, 512);
    let out = bjorth(&["norm", "z", "--curve", "circle(0,1)", "--config", "/nonexistent.toml"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_paper_only_runs_one_block() {
    let out = bjorth(&["verify-paper", "--only", "fta"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fta"));
    assert!(text.contains("overall: PASS (1/1 blocks)"));
    assert!(!text.contains("monomial-orthogonality"));
}

#[test]
fn verify_paper_rejects_unknown_block() {
    let out = bjorth(&["verify-paper", "--only", "nonsense"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn broken_quadrature_config_fails_the_suite() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("broken.toml");
    std::fs::write(&path, "quad_n = 8\n").unwrap();
    let out = bjorth(&[
        "verify-paper", "--only", "cauchy-derivative", "--config", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 5);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
}
