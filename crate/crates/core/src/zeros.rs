//! Zero counting through the argument principle, with the links between
//! non-orthogonality, equal zero counts (via norm domination on the curve),
//! polynomial zero counts at the bounding radius, and Cauchy-integral
//! derivatives.
//!
//! The winding number of f along the curve is tracked by continuous-argument
//! accumulation: whenever one grid step turns the argument by more than
//! pi/2 the step is bisected, so quadrature error can never silently round
//! to a wrong integer.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::curve::{contour_integral, curve_distance, Curve};
use crate::error::{Error, Result};
use crate::expr::HoloExpr;
use crate::norm::{in_j_gamma, sup_norm, ZERO_NORM_THRESHOLD};
use crate::ortho::{bj_minimize, OrthoDecision, Verdict};
use crate::poly::{fta_bound, Polynomial};

/// Relative threshold below which a modulus on the curve counts as a zero on
/// the curve (the statements here need zeros strictly enclosed).
pub const ZERO_ON_CURVE_REL: f64 = 1e-8;

const MAX_BISECTION_DEPTH: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    /// Number of zeros enclosed by the curve, counted with multiplicity.
    pub count: i64,
    pub min_modulus_on_curve: f64,
    /// Accumulated argument change, approximately 2*pi*count.
    pub total_arg_variation: f64,
}

fn arg_step<F>(
    f: &mut F,
    ta: f64,
    wa: Complex64,
    tb: f64,
    wb: Complex64,
    depth: usize,
    threshold: f64,
    min_mod: &mut f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let delta = (wb / wa).arg();
    if delta.abs() <= FRAC_PI_2 {
        return Ok(delta);
    }
    if depth >= MAX_BISECTION_DEPTH {
        return Err(Error::NonConvergent {
            what: "adaptive argument tracking (bisection depth exhausted)".into(),
        });
    }
    let tm = 0.5 * (ta + tb);
    let wm = f(tm)?;
    let m = wm.norm();
    if m < *min_mod {
        *min_mod = m;
    }
    if m <= threshold {
        return Err(Error::ZeroOnCurve {
            min_modulus: m,
            threshold,
        });
    }
    Ok(arg_step(f, ta, wa, tm, wm, depth + 1, threshold, min_mod)?
        + arg_step(f, tm, wm, tb, wb, depth + 1, threshold, min_mod)?)
}

/// Winding number of t -> f(t) around the origin over one period.
fn track_winding<F>(mut f: F, n: usize, threshold: f64) -> Result<WindingResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let vals: Vec<Complex64> = (0..n)
        .map(|k| f(k as f64 / n as f64))
        .collect::<Result<_>>()?;
    let mut min_mod = vals.iter().map(|w| w.norm()).fold(f64::INFINITY, f64::min);
    if min_mod <= threshold {
        return Err(Error::ZeroOnCurve {
            min_modulus: min_mod,
            threshold,
        });
    }
    let mut total = 0.0;
    for k in 0..n {
        let ta = k as f64 / n as f64;
        let tb = (k + 1) as f64 / n as f64;
        let wa = vals[k];
        let wb = vals[(k + 1) % n];
        total += arg_step(&mut f, ta, wa, tb, wb, 0, threshold, &mut min_mod)?;
    }
    let count = (total / TAU).round();
    if (total - TAU * count).abs() >= 1e-3 {
        return Err(Error::NonConvergent {
            what: format!("argument tracking left residual {:.3e}", total - TAU * count),
        });
    }
    Ok(WindingResult {
        count: count as i64,
        min_modulus_on_curve: min_mod,
        total_arg_variation: total,
    })
}

/// Count the zeros of f enclosed by the curve. Errors with `ZeroOnCurve`
/// when |f| dips below `ZERO_ON_CURVE_REL` times its sup norm on the curve.
pub fn count_zeros(f: &HoloExpr, curve: &Curve, n: usize, cfg: &RunConfig) -> Result<WindingResult> {
    let norm = sup_norm(f, curve, cfg)?.norm_value;
    let threshold = ZERO_ON_CURVE_REL * norm;
    track_winding(|t| f.eval(curve.point(t)), n.max(8), threshold)
}

/// Winding number of the curve around a point (1 when the point is enclosed).
pub fn winding_around(curve: &Curve, p: Complex64, n: usize) -> Result<i64> {
    let n = n.max(8);
    let scale = (0..n)
        .map(|k| (curve.point(k as f64 / n as f64) - p).norm())
        .fold(0.0, f64::max);
    let result = track_winding(|t| Ok(curve.point(t) - p), n, 1e-12 * scale)?;
    Ok(result.count)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JGammaZeroReport {
    /// The function was constant, so there is nothing to check.
    pub vacuous_constant: bool,
    pub count: i64,
    pub holds: bool,
}

/// For a nonconstant function of constant modulus on the curve, check that
/// at least one zero is enclosed. Constants (detected from the tree) are
/// vacuously fine.
pub fn verify_j_gamma_zero(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<JGammaZeroReport> {
    if !f.depends_on_z() {
        return Ok(JGammaZeroReport {
            vacuous_constant: true,
            count: 0,
            holds: true,
        });
    }
    let jg = in_j_gamma(f, curve, cfg)?;
    if jg.zero_function {
        return Err(Error::ZeroFunction);
    }
    if !jg.member {
        return Err(Error::GeometryViolation(
            "verify_j_gamma_zero requires |f| constant on the curve".into(),
        ));
    }
    let w = count_zeros(f, curve, cfg.quad_n, cfg)?;
    Ok(JGammaZeroReport {
        vacuous_constant: false,
        count: w.count,
        holds: w.count >= 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RoucheVerdict {
    /// A norm-lowering witness exists and both functions enclose the same
    /// number of zeros.
    SameCount { f_zeros: i64, g_zeros: i64 },
    /// A witness exists but the counts differ; this contradicts the norm
    /// domination and signals a tolerance breach.
    CountMismatch { f_zeros: i64, g_zeros: i64 },
    /// No witness (orthogonal or inconclusive): no claim follows, and the
    /// converse genuinely fails.
    NoClaim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoucheLink {
    pub decision: OrthoDecision,
    pub verdict: RoucheVerdict,
    /// With a witness lambda: whether |f + lambda g| < |f| held pointwise on
    /// the grid (the domination hypothesis for equal zero counts).
    pub pointwise_dominated: Option<bool>,
}

/// Link non-orthogonality to zero counts: for f of constant modulus on the
/// curve, a witness lambda with ||f + lambda g|| < ||f|| dominates pointwise,
/// so f and g must enclose equally many zeros.
pub fn rouche_link(f: &HoloExpr, g: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<RoucheLink> {
    let jg = in_j_gamma(f, curve, cfg)?;
    if jg.zero_function {
        return Err(Error::ZeroFunction);
    }
    if !jg.member {
        return Err(Error::GeometryViolation(
            "rouche_link requires |f| constant on the curve".into(),
        ));
    }
    let decision = bj_minimize(f, g, curve, cfg)?;
    match decision.verdict {
        Verdict::NotOrthogonal { witness, .. } => {
            let n = cfg.grid_n;
            let mut dominated = true;
            for k in 0..n {
                let z = curve.point(k as f64 / n as f64);
                let fv = f.eval(z)?;
                let gv = g.eval(z)?;
                if (fv + witness * gv).norm() >= fv.norm() {
                    dominated = false;
                    break;
                }
            }
            let fc = count_zeros(f, curve, cfg.quad_n, cfg)?;
            let gc = count_zeros(g, curve, cfg.quad_n, cfg)?;
            let verdict = if fc.count == gc.count {
                RoucheVerdict::SameCount {
                    f_zeros: fc.count,
                    g_zeros: gc.count,
                }
            } else {
                RoucheVerdict::CountMismatch {
                    f_zeros: fc.count,
                    g_zeros: gc.count,
                }
            };
            Ok(RoucheLink {
                decision,
                verdict,
                pointwise_dominated: Some(dominated),
            })
        }
        _ => Ok(RoucheLink {
            decision,
            verdict: RoucheVerdict::NoClaim,
            pointwise_dominated: None,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtaReport {
    pub degree: usize,
    pub bound: f64,
    pub radius: f64,
    /// ||h_n - Q/a_n|| on the circle of the chosen radius.
    pub witness_norm: f64,
    /// r^n = ||h_n|| there.
    pub monomial_norm: f64,
    pub witness_ok: bool,
    pub count: i64,
    pub count_ok: bool,
}

impl FtaReport {
    pub fn ok(&self) -> bool {
        self.witness_ok && self.count_ok
    }
}

/// At radius slack * max(1, sum |a_k|/|a_n|), the explicit scalar -1/a_n
/// pulls Q below the monomial norm r^n, and the enclosed zero count equals
/// the degree.
pub fn fta_verify(q: &Polynomial, slack: f64, cfg: &RunConfig) -> Result<FtaReport> {
    if !(slack > 1.0) {
        return Err(Error::GeometryViolation(format!(
            "slack must exceed 1 so all zeros stay strictly inside, got {slack}"
        )));
    }
    let bound = fta_bound(q)?;
    let degree = q.degree().expect("fta_bound rejects the zero polynomial");
    let radius = slack * bound;
    let curve = Curve::circle(Complex64::new(0.0, 0.0), radius)?;
    let lead = q.leading().expect("nonzero polynomial");

    let witness_expr = HoloExpr::add(
        HoloExpr::monomial(degree as u32),
        q.to_expr().scaled(-Complex64::new(1.0, 0.0) / lead),
    );
    let witness_norm = sup_norm(&witness_expr, &curve, cfg)?.norm_value;
    let monomial_norm = radius.powi(degree as i32);
    let w = count_zeros(&q.to_expr(), &curve, cfg.quad_n, cfg)?;
    Ok(FtaReport {
        degree,
        bound,
        radius,
        witness_norm,
        monomial_norm,
        witness_ok: witness_norm < monomial_norm,
        count: w.count,
        count_ok: w.count == degree as i64,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// n-th derivative at z0 through the Cauchy integral on the circle of radius
/// r about z0: (n!/2 pi i) * contour integral of f(z)/(z - z0)^(n+1).
pub fn cauchy_derivative(
    f: &HoloExpr,
    z0: Complex64,
    order: usize,
    r: f64,
    quad_n: usize,
) -> Result<Complex64> {
    let circle = Curve::circle(z0, r)?;
    let integral = contour_integral(
        |z| {
            let num = f.eval(z)?;
            // |z - z0| = r > 0 on the circle, no pole guard needed.
            Ok(num / (z - z0).powu(order as u32 + 1))
        },
        &circle,
        quad_n,
    )?;
    Ok(factorial(order) / Complex64::new(0.0, TAU) * integral)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub order: usize,
    pub r: f64,
    /// max over the outer curve of |f + lambda0 g|.
    pub lhs: f64,
    /// (r^n / n!) * max over the inner curve of |f^(n)|.
    pub rhs: f64,
    pub hypothesis_holds: bool,
    /// Orthogonality decision for (f^(n), g^(n)) on the inner curve, run
    /// only when the hypothesis holds.
    pub decision: Option<OrthoDecision>,
}

/// The derivative-orthogonality scenario: when some lambda0 makes
/// |f + lambda0 g| on the outer curve uniformly smaller than
/// (r^n/n!) |f^(n)| on the inner curve, the n-th derivatives cannot be
/// orthogonal on the inner curve.
#[allow(clippy::too_many_arguments)]
pub fn derivative_ortho_scenario(
    f: &HoloExpr,
    g: &HoloExpr,
    order: usize,
    outer: &Curve,
    inner: &Curve,
    lambda0: Complex64,
    r: f64,
    cfg: &RunConfig,
) -> Result<ScenarioReport> {
    for sample in inner.sample(64) {
        if winding_around(outer, sample.point, 512)? != 1 {
            return Err(Error::GeometryViolation(
                "inner curve is not enclosed by the outer curve".into(),
            ));
        }
    }
    let dist = curve_distance(outer, inner, 512);
    if !(r > 0.0 && r < dist) {
        return Err(Error::GeometryViolation(format!(
            "radius {r} must lie strictly between 0 and the curve distance {dist:.6}"
        )));
    }
    let f_n = f.nth_derivative(order);
    let g_n = g.nth_derivative(order);
    if sup_norm(&g_n, inner, cfg)?.norm_value < ZERO_NORM_THRESHOLD {
        return Err(Error::ZeroFunction);
    }
    let pencil = HoloExpr::add(f.clone(), g.clone().scaled(lambda0));
    let lhs = sup_norm(&pencil, outer, cfg)?.norm_value;
    let rhs = r.powi(order as i32) / factorial(order) * sup_norm(&f_n, inner, cfg)?.norm_value;
    let hypothesis_holds = lhs < rhs;
    let decision = if hypothesis_holds {
        Some(bj_minimize(&f_n, &g_n, inner, cfg)?)
    } else {
        None
    };
    Ok(ScenarioReport {
        order,
        r,
        lhs,
        rhs,
        hypothesis_holds,
        decision,
    })
}
