//! The `verify-paper` regression suite: every theorem-level claim the
//! library rests on, bound to a runnable, seeded check. Blocks are
//! independent and run on a worker pool; a block fails when any instance
//! fails, and inconclusive verdicts count as failures (the corpus is chosen
//! to be decisive).

use std::time::Instant;

use bjorth_core::{
    bj_minimize, classify_point, count_zeros, covering_decide, derivative_ortho_scenario,
    fta_bound, fta_verify, ortho_via_covering, pair_criterion, sup_norm, verify_j_gamma_zero,
    Complex64, CoveringDecision, Curve, Error, HoloExpr, RunConfig, Smoothness, Verdict,
};
use rand::Rng;
use rayon::prelude::*;

use crate::corpus;
use crate::oracle;

#[derive(Debug, Clone)]
pub struct BlockReport {
    pub name: &'static str,
    pub description: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: f64,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Block {
    name: &'static str,
    description: &'static str,
    run: fn(&RunConfig) -> (usize, Vec<String>),
}

const BLOCKS: &[Block] = &[
    Block {
        name: "monomial-orthogonality",
        description: "z^n is orthogonal to z^m (n != m) on centered circles, min value r^n",
        run: monomial_orthogonality,
    },
    Block {
        name: "polynomial-lower-bound",
        description: "||z^n + lambda*Q_m|| >= r^n for every lower-degree Q_m",
        run: polynomial_lower_bound,
    },
    Block {
        name: "large-radius-witness",
        description: "beyond the coefficient bound, -1/a_n pulls Q below the monomial norm",
        run: large_radius_witness,
    },
    Block {
        name: "fta",
        description: "enclosed zero count at the bounding radius equals the degree (vs root oracle)",
        run: zero_count_degree,
    },
    Block {
        name: "covering-criteria",
        description: "disk-gap minimization agrees with the closed-form covering criteria",
        run: covering_criteria,
    },
    Block {
        name: "two-path-agreement",
        description: "direct minimization and covering geometry give the same verdicts",
        run: two_path_agreement,
    },
    Block {
        name: "smooth-extreme-classification",
        description: "singleton norming sets are smooth; unit-norm constant modulus is extreme",
        run: smooth_extreme_classification,
    },
    Block {
        name: "blaschke-zero-count",
        description: "a k-factor Blaschke product encloses exactly k zeros",
        run: blaschke_zero_count,
    },
    Block {
        name: "cauchy-derivative",
        description: "Cauchy-integral derivatives match symbolic derivatives",
        run: cauchy_derivative_block,
    },
    Block {
        name: "derivative-scenario",
        description: "the norm hypothesis forces non-orthogonal n-th derivatives",
        run: derivative_scenario_block,
    },
    Block {
        name: "converse-failure-example",
        description: "equal zero counts do not imply non-orthogonality",
        run: converse_failure_example,
    },
];

pub fn block_names() -> Vec<&'static str> {
    BLOCKS.iter().map(|b| b.name).collect()
}

/// Run the suite (optionally a single block). Errors only on an unknown
/// block name; numerical failures land in the reports.
pub fn verify_paper(cfg: &RunConfig, only: Option<&str>) -> Result<Vec<BlockReport>, Error> {
    if let Some(name) = only {
        if !BLOCKS.iter().any(|b| b.name == name) {
            return Err(Error::InvalidConfig(format!(
                "unknown block `{name}`; known blocks: {}",
                block_names().join(", ")
            )));
        }
    }
    let selected: Vec<&Block> = BLOCKS
        .iter()
        .filter(|b| only.is_none_or(|name| b.name == name))
        .collect();
    Ok(selected
        .par_iter()
        .map(|block| {
            let started = Instant::now();
            let (instances, failures) = (block.run)(cfg);
            BlockReport {
                name: block.name,
                description: block.description,
                instances,
                failures,
                elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect())
}

pub fn render_table(reports: &[BlockReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<30} {:>9} {:>11}   {}\n",
        "block", "instances", "elapsed", "result"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<30} {:>9} {:>8} ms   {}\n",
            r.name,
            r.instances,
            r.elapsed_ms.round() as i64,
            if r.passed() { "PASS" } else { "FAIL" }
        ));
        for failure in r.failures.iter().take(5) {
            out.push_str(&format!("    failure: {failure}\n"));
        }
        if r.failures.len() > 5 {
            out.push_str(&format!("    ... and {} more\n", r.failures.len() - 5));
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!(
        "overall: {} ({passed}/{} blocks)\n",
        if passed == reports.len() { "PASS" } else { "FAIL" },
        reports.len()
    ));
    out
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn circle(radius: f64) -> Curve {
    Curve::circle(c(0.0, 0.0), radius).expect("positive radius")
}

fn verdict_kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::Orthogonal => "orthogonal",
        Verdict::NotOrthogonal { .. } => "not-orthogonal",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn monomial_orthogonality(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut instances = 0;
    for n in 1..=5u32 {
        for m in 1..=5u32 {
            if n == m {
                continue;
            }
            for &r in &[0.5, 1.0, 2.0] {
                instances += 1;
                let curve = circle(r);
                let f = HoloExpr::monomial(n);
                let g = HoloExpr::monomial(m);
                let tag = format!("n={n} m={m} r={r}");
                match bj_minimize(&f, &g, &curve, cfg) {
                    Ok(d) => {
                        if !d.is_orthogonal() {
                            failures.push(format!("{tag}: minimize verdict {:?}", d.verdict));
                        }
                        let expect = r.powi(n as i32);
                        if (d.min_value - expect).abs() > 1e-6 * expect {
                            failures.push(format!(
                                "{tag}: min value {} differs from {expect}",
                                d.min_value
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{tag}: minimize error {e}")),
                }
                match ortho_via_covering(&f, &g, &curve, cfg) {
                    Ok(d) if d.is_orthogonal() => {}
                    Ok(d) => failures.push(format!("{tag}: covering verdict {:?}", d.verdict)),
                    Err(e) => failures.push(format!("{tag}: covering error {e}")),
                }
            }
        }
    }
    (instances, failures)
}

fn polynomial_lower_bound(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x01);
    let mut failures = Vec::new();
    let total = 50;
    for i in 0..total {
        let n = rng.gen_range(2..=5usize);
        let m = rng.gen_range(1..n);
        let r = if i % 2 == 0 { 1.0 } else { 2.0 };
        let q = corpus::polynomial(&mut rng, m, 0.1);
        let curve = circle(r);
        let f = HoloExpr::monomial(n as u32);
        let floor = r.powi(n as i32) * (1.0 - 1e-6);
        match bj_minimize(&f, &q.to_expr(), &curve, cfg) {
            Ok(d) => {
                if d.min_value < floor {
                    failures.push(format!(
                        "instance {i}: min {} below r^n floor {floor} (n={n}, m={m}, r={r})",
                        d.min_value
                    ));
                }
            }
            Err(e) => failures.push(format!("instance {i}: error {e}")),
        }
    }
    (total, failures)
}

fn large_radius_witness(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x02);
    let mut failures = Vec::new();
    let total = 50;
    for i in 0..total {
        let degree = rng.gen_range(1..=6usize);
        let q = corpus::polynomial(&mut rng, degree, 0.3);
        let tag = format!("instance {i} (degree {degree})");
        let bound = match fta_bound(&q) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("{tag}: bound error {e}"));
                continue;
            }
        };
        let radius = 1.1 * bound;
        let curve = circle(radius);
        let monomial_norm = radius.powi(degree as i32);

        // The explicit witness lambda = -1/a_n.
        let lead = q.leading().expect("nonzero leading coefficient");
        let witness_expr = HoloExpr::add(
            HoloExpr::monomial(degree as u32),
            q.to_expr().scaled(-Complex64::new(1.0, 0.0) / lead),
        );
        match sup_norm(&witness_expr, &curve, cfg) {
            Ok(report) => {
                if report.norm_value >= monomial_norm {
                    failures.push(format!(
                        "{tag}: witness norm {} not below r^n = {monomial_norm}",
                        report.norm_value
                    ));
                }
            }
            Err(e) => failures.push(format!("{tag}: witness norm error {e}")),
        }
        match bj_minimize(&HoloExpr::monomial(degree as u32), &q.to_expr(), &curve, cfg) {
            Ok(d) if d.is_not_orthogonal() => {}
            Ok(d) => failures.push(format!("{tag}: verdict {:?}", d.verdict)),
            Err(e) => failures.push(format!("{tag}: minimize error {e}")),
        }
    }
    (total, failures)
}

fn zero_count_degree(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x03);
    let mut failures = Vec::new();
    let total = 100;
    for i in 0..total {
        let degree = rng.gen_range(1..=6usize);
        let q = corpus::polynomial(&mut rng, degree, 0.3);
        let tag = format!("instance {i} (degree {degree})");
        match fta_verify(&q, 1.1, cfg) {
            Ok(report) => {
                if report.count != degree as i64 {
                    failures.push(format!(
                        "{tag}: winding count {} != degree",
                        report.count
                    ));
                }
                if !report.witness_ok {
                    failures.push(format!("{tag}: witness inequality failed"));
                }
                let oracle_count = oracle::count_roots_inside(&q, report.radius);
                if oracle_count != degree {
                    failures.push(format!(
                        "{tag}: root oracle counts {oracle_count} inside radius {}",
                        report.radius
                    ));
                }
            }
            Err(e) => failures.push(format!("{tag}: error {e}")),
        }
    }
    (total, failures)
}

fn covering_criteria(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x04);
    let mut failures = Vec::new();
    let singles = 500;
    for i in 0..singles {
        let (u, v) = match i % 5 {
            0 => (c(0.0, 0.0), corpus::nonzero(&mut rng, 0.1, 3.0)),
            1 => (corpus::nonzero(&mut rng, 0.1, 3.0), c(0.0, 0.0)),
            _ => (
                corpus::nonzero(&mut rng, 0.1, 3.0),
                corpus::nonzero(&mut rng, 0.1, 3.0),
            ),
        };
        let expect = u.norm() == 0.0 || v.norm() == 0.0;
        let covering = matches!(covering_decide(&[(u, v)]), CoveringDecision::Covering);
        if covering != expect {
            failures.push(format!("singleton {i}: ({u}, {v}) decided {covering}"));
        }
    }
    let pairs = 1000;
    for i in 0..pairs {
        let z1 = corpus::nonzero(&mut rng, 0.1, 3.0);
        let z2 = corpus::nonzero(&mut rng, 0.1, 3.0);
        let w1 = corpus::nonzero(&mut rng, 0.1, 3.0);
        // Generic products almost never land on (-inf, 0], so half the
        // corpus is constructed to satisfy the criterion exactly.
        let w2 = if i % 2 == 0 {
            corpus::nonzero(&mut rng, 0.1, 3.0)
        } else {
            let s = rng.gen_range(0.1..2.0);
            (-s / (z1.conj() * z2 * w1)).conj()
        };
        let closed_form = pair_criterion(z1, z2, w1, w2);
        let covering = matches!(
            covering_decide(&[(z1, z2), (w1, w2)]),
            CoveringDecision::Covering
        );
        if covering != closed_form {
            failures.push(format!(
                "pair {i}: ({z1},{z2}) ({w1},{w2}) closed-form {closed_form}, decided {covering}"
            ));
        }
    }
    (singles + pairs, failures)
}

fn two_path_agreement(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x05);
    let mut failures = Vec::new();
    let total = 200;
    for i in 0..total {
        let r = [0.5, 1.0, 2.0][i % 3];
        let curve = circle(r);
        // Resample until both paths are decisive with margin, so the corpus
        // stays clear of the Inconclusive band.
        let mut found = false;
        for _attempt in 0..50 {
            let f = if i % 2 == 0 {
                let deg = rng.gen_range(1..=4);
                corpus::polynomial(&mut rng, deg, 0.1).to_expr()
            } else {
                let factors = rng.gen_range(1..=3);
                corpus::blaschke_product(&mut rng, r, factors, false)
            };
            let g_deg = rng.gen_range(1..=4);
            let g = corpus::polynomial(&mut rng, g_deg, 0.1).to_expr();
            let direct = match bj_minimize(&f, &g, &curve, cfg) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("instance {i}: minimize error {e}"));
                    found = true;
                    break;
                }
            };
            let decisive_margin = direct.min_value <= direct.base_norm * (1.0 - 1e-2)
                || direct.min_value >= direct.base_norm * (1.0 - 1e-7);
            if direct.is_inconclusive() || !decisive_margin {
                continue;
            }
            let via = match ortho_via_covering(&f, &g, &curve, cfg) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("instance {i}: covering error {e}"));
                    found = true;
                    break;
                }
            };
            if via.is_inconclusive() {
                continue;
            }
            found = true;
            if verdict_kind(&direct.verdict) != verdict_kind(&via.verdict) {
                failures.push(format!(
                    "instance {i}: f = {f}, g = {g}, r = {r}: minimize {:?} vs covering {:?}",
                    direct.verdict, via.verdict
                ));
            }
            break;
        }
        if !found {
            failures.push(format!("instance {i}: no decisive instance in 50 draws"));
        }
    }
    (total, failures)
}

struct ClassifyCheck<'a> {
    curve: &'a Curve,
    cfg: &'a RunConfig,
    instances: usize,
    failures: Vec<String>,
}

impl ClassifyCheck<'_> {
    fn check(&mut self, tag: String, f: &HoloExpr, smooth: Option<Smoothness>, extreme: bool) {
        self.instances += 1;
        match classify_point(f, self.curve, self.cfg) {
            Ok(report) => {
                if let Some(expect) = smooth {
                    if report.smoothness != expect {
                        self.failures
                            .push(format!("{tag}: smoothness {:?}", report.smoothness));
                    }
                }
                if report.extreme_on_analytic_curve != extreme {
                    self.failures.push(format!(
                        "{tag}: extreme {} (expected {extreme})",
                        report.extreme_on_analytic_curve
                    ));
                }
            }
            Err(e) => self.failures.push(format!("{tag}: error {e}")),
        }
    }
}

fn smooth_extreme_classification(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x06);
    let curve = circle(1.0);
    let mut state = ClassifyCheck {
        curve: &curve,
        cfg,
        instances: 0,
        failures: Vec::new(),
    };

    let shifted = bjorth_core::parse("z + 2").expect("fixed instance parses");
    state.check("z + 2".into(), &shifted, Some(Smoothness::Smooth), false);
    let two_peaks = bjorth_core::parse("z^2 + 1").expect("fixed instance parses");
    state.check("z^2 + 1".into(), &two_peaks, Some(Smoothness::NotSmooth), false);

    for i in 0..19 {
        let factors = rng.gen_range(1..=4);
        let f = corpus::blaschke_product(&mut rng, 1.0, factors, true);
        state.check(
            format!("blaschke product {i} ({factors} factors)"),
            &f,
            Some(Smoothness::NotSmooth),
            true,
        );
    }
    for i in 0..19 {
        let degree = rng.gen_range(1..=4);
        let (poly, _) = corpus::polynomial_with_offcenter_roots(&mut rng, degree, 1.0);
        let expr = poly.to_expr();
        // Normalize to unit norm so extremality hinges on constant modulus.
        let norm = match sup_norm(&expr, &curve, cfg) {
            Ok(r) => r.norm_value,
            Err(e) => {
                state.instances += 1;
                state.failures.push(format!("polynomial {i}: norm error {e}"));
                continue;
            }
        };
        let f = expr.scaled(1.0 / norm);
        state.check(format!("unit-norm polynomial {i}"), &f, None, false);
    }
    (state.instances, state.failures)
}

fn blaschke_zero_count(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x07);
    let mut failures = Vec::new();
    let total = 50;
    for i in 0..total {
        let factors = rng.gen_range(1..=4usize);
        let f = corpus::blaschke_product(&mut rng, 1.0, factors, true);
        match verify_j_gamma_zero(&f, &circle(1.0), cfg) {
            Ok(report) => {
                if !report.holds || report.count != factors as i64 {
                    failures.push(format!(
                        "instance {i}: {factors} factors but count {}",
                        report.count
                    ));
                }
            }
            Err(e) => failures.push(format!("instance {i}: error {e}")),
        }
    }
    (total, failures)
}

fn cauchy_derivative_block(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut rng = corpus::rng(cfg.seed ^ 0x08);
    let mut failures = Vec::new();
    let total = 60;
    // The stated accuracy holds from 512 nodes on; a deliberately broken
    // config (tiny quad_n) must make this block fail.
    let quad_n = cfg.quad_n.min(512);
    for i in 0..total {
        let degree = rng.gen_range(1..=6usize);
        // Most instances are plain polynomials; every fifth one carries a
        // Blaschke factor, whose Laurent tail genuinely needs the nodes
        // (polynomial integrands are quadrature-exact at any small grid).
        let f = if i % 5 == 4 {
            let mag = rng.gen_range(0.35..0.6);
            let arg = rng.gen_range(0.0..std::f64::consts::TAU);
            let factor = HoloExpr::blaschke(Complex64::from_polar(mag, arg), 1.0)
                .expect("|a| < 1 by construction");
            HoloExpr::mul(factor, corpus::polynomial(&mut rng, degree.min(3), 0.1).to_expr())
        } else {
            corpus::polynomial(&mut rng, degree, 0.1).to_expr()
        };
        let z0 = corpus::complex_box(&mut rng, 0.3);
        let order = rng.gen_range(0..=4usize);
        let quad = match bjorth_core::cauchy_derivative(&f, z0, order, 1.0, quad_n) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("instance {i}: error {e}"));
                continue;
            }
        };
        let sym = match f.nth_derivative(order).eval(z0) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("instance {i}: symbolic eval error {e}"));
                continue;
            }
        };
        if (quad - sym).norm() > 1e-8 * (1.0 + sym.norm()) {
            failures.push(format!(
                "instance {i}: order {order} quadrature {quad} vs symbolic {sym}"
            ));
        }
    }
    (total, failures)
}

fn derivative_scenario_block(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let f = bjorth_core::parse("z^2").expect("fixed instance parses");
    let g = bjorth_core::parse("z^2 + 0.01*z^3").expect("fixed instance parses");
    let outer = circle(2.0);
    let inner = circle(0.5);
    match derivative_ortho_scenario(&f, &g, 2, &outer, &inner, c(-1.0, 0.0), 1.0, cfg) {
        Ok(report) => {
            if (report.lhs - 0.08).abs() > 1e-6 {
                failures.push(format!("lhs {} != 0.08", report.lhs));
            }
            if (report.rhs - 1.0).abs() > 1e-6 {
                failures.push(format!("rhs {} != 1", report.rhs));
            }
            if !report.hypothesis_holds {
                failures.push("hypothesis did not hold".into());
            }
            match report.decision {
                Some(d) if d.is_not_orthogonal() && d.min_value <= 1.81 => {}
                Some(d) => failures.push(format!(
                    "decision {:?} with min {}",
                    d.verdict, d.min_value
                )),
                None => failures.push("missing decision".into()),
            }
        }
        Err(e) => failures.push(format!("error {e}")),
    }
    (1, failures)
}

fn converse_failure_example(cfg: &RunConfig) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let f = bjorth_core::parse("z").expect("fixed instance parses");
    let g = bjorth_core::parse("z*(z - 1)").expect("fixed instance parses");
    let unit = circle(1.0);
    match bj_minimize(&f, &g, &unit, cfg) {
        Ok(d) if d.is_orthogonal() => {}
        Ok(d) => failures.push(format!("verdict {:?}", d.verdict)),
        Err(e) => failures.push(format!("minimize error {e}")),
    }
    let shrunk = circle(0.9);
    for (name, expr) in [("z", &f), ("z*(z-1)", &g)] {
        match count_zeros(expr, &shrunk, cfg.quad_n, cfg) {
            Ok(w) if w.count == 1 => {}
            Ok(w) => failures.push(format!("{name}: count {} on the shrunk circle", w.count)),
            Err(e) => failures.push(format!("{name}: error {e}")),
        }
    }
    match count_zeros(&g, &unit, cfg.quad_n, cfg) {
        Err(Error::ZeroOnCurve { .. }) => {}
        Err(e) => failures.push(format!("expected ZeroOnCurve, got error {e}")),
        Ok(w) => failures.push(format!("expected ZeroOnCurve, got count {}", w.count)),
    }
    (1, failures)
}
