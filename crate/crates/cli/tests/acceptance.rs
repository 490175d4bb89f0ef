//! Acceptance suite: one test per criterion, each printing a pass line.
//! Criteria run through the same seeded verification blocks the
//! `verify-paper` command uses, plus the stated runtime bounds.

use std::time::Instant;

use bjorth_cli::verify::{verify_paper, BlockReport};
use bjorth_core::RunConfig;

fn run_block(name: &str) -> BlockReport {
    let cfg = RunConfig::default();
    let mut reports = verify_paper(&cfg, Some(name)).expect("block name is known");
    assert_eq!(reports.len(), 1);
    reports.remove(0)
}

fn assert_block_passed(criterion: usize, label: &str, report: &BlockReport) {
    assert!(
        report.passed(),
        "criterion {criterion} ({label}): {} failures, first: {:?}",
        report.failures.len(),
        report.failures.first()
    );
    println!(
        "criterion {criterion:2} ({label}): PASS ({} instances, {:.0} ms)",
        report.instances, report.elapsed_ms
    );
}

#[test]
fn criterion_01_monomial_orthogonality() {
    let started = Instant::now();
    let report = run_block("monomial-orthogonality");
    assert_eq!(report.instances, 60);
    assert_block_passed(1, "monomial orthogonality, both paths, min value r^n", &report);
    assert!(
        started.elapsed().as_secs_f64() < 30.0,
        "criterion 1 exceeded its 30 s budget"
    );
}

#[test]
fn criterion_02_polynomial_lower_bound() {
    let report = run_block("polynomial-lower-bound");
    assert_eq!(report.instances, 50);
    assert_block_passed(2, "||z^n + lambda Q_m|| >= r^n", &report);
}

#[test]
fn criterion_03_large_radius_witness() {
    let report = run_block("large-radius-witness");
    assert_eq!(report.instances, 50);
    assert_block_passed(3, "explicit witness -1/a_n beats r^n beyond the bound", &report);
}

#[test]
fn criterion_04_fta_pipeline() {
    let report = run_block("fta");
    assert_eq!(report.instances, 100);
    assert_block_passed(4, "zero count equals degree, matches root oracle", &report);
}

#[test]
fn criterion_05_covering_set_criteria() {
    let report = run_block("covering-criteria");
    assert_eq!(report.instances, 1500);
    assert_block_passed(5, "covering decisions match closed-form criteria", &report);
}

#[test]
fn criterion_06_two_path_agreement() {
    let report = run_block("two-path-agreement");
    assert_eq!(report.instances, 200);
    assert_block_passed(6, "minimization and covering verdicts agree", &report);
}

#[test]
fn criterion_07_smooth_extreme_classification() {
    let report = run_block("smooth-extreme-classification");
    assert_eq!(report.instances, 40);
    assert_block_passed(7, "smooth/extreme classification", &report);
}

#[test]
fn criterion_08_constant_modulus_zero_existence() {
    let report = run_block("blaschke-zero-count");
    assert_eq!(report.instances, 50);
    assert_block_passed(8, "k-factor products enclose k zeros", &report);
}

#[test]
fn criterion_09_cauchy_derivative_quadrature() {
    let report = run_block("cauchy-derivative");
    assert_eq!(report.instances, 60);
    assert_block_passed(9, "Cauchy quadrature vs symbolic derivatives at N=512", &report);
}

#[test]
fn criterion_10_derivative_scenario() {
    let report = run_block("derivative-scenario");
    assert_block_passed(10, "worked derivative instance (0.08 < 1, min <= 1.81)", &report);
}

#[test]
fn criterion_11_converse_failure_example() {
    let report = run_block("converse-failure-example");
    assert_block_passed(11, "orthogonal pair with equal counts; zero on curve errors", &report);
}

#[test]
fn criterion_12_full_suite_under_budget() {
    let started = Instant::now();
    let reports = verify_paper(&RunConfig::default(), None).expect("full suite runs");
    let elapsed = started.elapsed().as_secs_f64();
    for r in &reports {
        assert!(
            r.passed(),
            "criterion 12: block {} failed: {:?}",
            r.name,
            r.failures.first()
        );
    }
    assert_eq!(reports.len(), 11);
    assert!(
        elapsed < 300.0,
        "criterion 12: full suite took {elapsed:.1} s, budget is 300 s"
    );
    println!("criterion 12 (full suite, {elapsed:.1} s < 300 s): PASS");
}
