//! Supremum norm on a curve, norming sets, constant-modulus membership and
//! smooth/extreme classification.
//!
//! Every scan runs on a uniform parameter grid and then sharpens grid-local
//! extrema with golden-section search, so reported norms carry refinement
//! error around 1e-14 relative rather than the O(1/N^2) grid error.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::expr::HoloExpr;

/// Absolute slack when deciding which parameters attain the norm.
pub const ARGMAX_SLACK: f64 = 1e-12;

/// A function whose sup norm falls below this is treated as identically zero.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-30;

/// Grid-local maxima are refined only when they reach this fraction of the
/// grid maximum; lower peaks cannot climb back into contention.
const CANDIDATE_WINDOW: f64 = 1e-3;

/// Cap on refined clusters per scan; analytic moduli on our curves have few
/// local maxima, ties beyond the cap only occur on constant-modulus plateaus.
const MAX_REFINED: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub norm_value: f64,
    /// Parameters in [0,1) where |f| attains the norm (within `ARGMAX_SLACK`).
    pub argmax_params: Vec<f64>,
    pub grid_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cluster {
    Isolated { t: f64 },
    Arc { t_lo: f64, t_hi: f64 },
    WholeCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormingSet {
    pub clusters: Vec<Cluster>,
    pub epsilon: f64,
    pub norm_value: f64,
    pub grid_size: usize,
}

impl NormingSet {
    pub fn is_whole_curve(&self) -> bool {
        matches!(self.clusters.as_slice(), [Cluster::WholeCurve])
    }

    /// Parameters standing in for the norming set: the refined peak of each
    /// isolated cluster, grid points across arcs, the whole grid for a
    /// constant-modulus function.
    pub fn representatives(&self) -> Vec<f64> {
        let n = self.grid_size;
        let mut out = Vec::new();
        for cluster in &self.clusters {
            match cluster {
                Cluster::WholeCurve => {
                    return (0..n).map(|k| k as f64 / n as f64).collect();
                }
                Cluster::Isolated { t } => out.push(*t),
                Cluster::Arc { t_lo, t_hi } => {
                    out.push(*t_lo);
                    let span = wrap_span(*t_lo, *t_hi);
                    let mut k = (t_lo * n as f64).ceil() as i64;
                    loop {
                        let t = (k as f64 / n as f64).rem_euclid(1.0);
                        if wrap_span(*t_lo, t) > span {
                            break;
                        }
                        out.push(t);
                        k += 1;
                        if k as usize > 2 * n {
                            break;
                        }
                    }
                    out.push(*t_hi);
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JGammaReport {
    /// True when |f| is constant (relative spread within tolerance) on the
    /// whole curve. The zero function is a member by convention.
    pub member: bool,
    pub zero_function: bool,
    pub max_modulus: f64,
    pub min_modulus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    Smooth,
    NotSmooth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub smoothness: Smoothness,
    /// On the analytic curves supported here, |f| restricted to the curve is
    /// real-analytic, so the norming set is finite unless |f| is constant;
    /// unit norm plus constant modulus characterizes extremality.
    pub extreme_on_analytic_curve: bool,
    pub norm_value: f64,
    pub cluster_count: usize,
}

/// Golden-section search for a maximum of `h` on [a, b]. Returns the best
/// probed point, which is never below the values actually probed.
pub(crate) fn golden_max<F>(h: &mut F, mut a: f64, mut b: f64, iters: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = h(c)?;
    let mut fd = h(d)?;
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = h(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = h(d)?;
        }
        let (t, v) = if fc >= fd { (c, fc) } else { (d, fd) };
        if v > best.1 {
            best = (t, v);
        }
    }
    Ok(best)
}

/// Indices that are cyclic grid-local maxima (ties count).
pub(crate) fn local_max_indices(vals: &[f64]) -> Vec<usize> {
    let n = vals.len();
    (0..n)
        .filter(|&k| {
            let prev = vals[(k + n - 1) % n];
            let next = vals[(k + 1) % n];
            vals[k] >= prev && vals[k] >= next
        })
        .collect()
}

/// Thin a candidate list to at most `cap` entries, keeping the spread.
pub(crate) fn thin_evenly(mut candidates: Vec<usize>, cap: usize) -> Vec<usize> {
    if candidates.len() > cap {
        let stride = candidates.len() as f64 / cap as f64;
        candidates = (0..cap)
            .map(|j| candidates[(j as f64 * stride) as usize])
            .collect();
    }
    candidates
}

/// Refine the promising grid-local maxima of `vals` (values of `h` on the
/// uniform grid). Returns (t, value) pairs including the raw grid peaks, so
/// the result never loses to the grid scan.
pub(crate) fn refined_maxima<F>(
    h: &mut F,
    vals: &[f64],
    iters: usize,
    cap: usize,
) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = vals.len();
    let grid_max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor = grid_max - CANDIDATE_WINDOW * grid_max.abs().max(1e-300);
    let candidates: Vec<usize> = local_max_indices(vals)
        .into_iter()
        .filter(|&k| vals[k] >= floor)
        .collect();
    let candidates = thin_evenly(candidates, cap);
    let mut out = Vec::with_capacity(candidates.len());
    for k in candidates {
        let t0 = k as f64 / n as f64;
        let (mut t, mut v) = golden_max(h, t0 - 1.0 / n as f64, t0 + 1.0 / n as f64, iters)?;
        if vals[k] > v {
            t = t0;
            v = vals[k];
        }
        out.push((canonical_param(t), v));
    }
    Ok(out)
}

fn grid_modulus(f: &HoloExpr, curve: &Curve, n: usize) -> Result<Vec<f64>> {
    (0..n)
        .map(|k| {
            let t = k as f64 / n as f64;
            f.eval(curve.point(t)).map(|w| w.norm())
        })
        .collect()
}

/// Width of the forward arc from t_lo to t_hi in parameter units.
fn wrap_span(t_lo: f64, t_hi: f64) -> f64 {
    (t_hi - t_lo).rem_euclid(1.0)
}

/// Map into [0,1) and snap parameters hugging 1 back to 0; refinement around
/// the grid point t = 0 otherwise reports 1 - tiny.
pub(crate) fn canonical_param(t: f64) -> f64 {
    let t = t.rem_euclid(1.0);
    if 1.0 - t < 1e-6 {
        0.0
    } else {
        t
    }
}

fn sort_dedup_params(mut ts: Vec<f64>) -> Vec<f64> {
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Parameter resolution: below the grid spacing, above the plateau where
    // the modulus is flat to machine precision.
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    if ts.len() > 1 {
        let first = ts[0];
        let last = *ts.last().unwrap();
        if first + 1.0 - last < 1e-6 {
            ts.pop();
        }
    }
    ts
}

/// Supremum of |f| over the curve: grid scan plus golden-section refinement
/// of every competitive grid-local maximum.
pub fn sup_norm(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<NormReport> {
    let n = cfg.grid_n;
    let vals = grid_modulus(f, curve, n)?;
    let mut h = |t: f64| f.eval(curve.point(t)).map(|w| w.norm());
    let refined = refined_maxima(&mut h, &vals, cfg.refine_iters, MAX_REFINED)?;
    let grid_max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let norm_value = refined
        .iter()
        .map(|&(_, v)| v)
        .fold(grid_max, f64::max);

    // A constant-modulus function attains the norm on the whole grid.
    if vals.iter().all(|&v| v >= norm_value - ARGMAX_SLACK) {
        return Ok(NormReport {
            norm_value,
            argmax_params: (0..n).map(|k| k as f64 / n as f64).collect(),
            grid_size: n,
        });
    }
    let mut argmax: Vec<f64> = refined
        .iter()
        .filter(|&&(_, v)| v >= norm_value - ARGMAX_SLACK)
        .map(|&(t, _)| t)
        .collect();
    for (k, &v) in vals.iter().enumerate() {
        if v >= norm_value - ARGMAX_SLACK {
            argmax.push(k as f64 / n as f64);
        }
    }
    Ok(NormReport {
        norm_value,
        argmax_params: sort_dedup_params(argmax),
        grid_size: n,
    })
}

/// Minimum of |f| over the curve with the same refinement scheme, used by
/// constant-modulus tests and zero-on-curve guards.
pub fn inf_modulus(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<(f64, f64)> {
    let n = cfg.grid_n;
    let vals: Vec<f64> = grid_modulus(f, curve, n)?.iter().map(|v| -v).collect();
    let mut h = |t: f64| f.eval(curve.point(t)).map(|w| -w.norm());
    let refined = refined_maxima(&mut h, &vals, cfg.refine_iters, MAX_REFINED)?;
    let mut best_v = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut best_t = vals
        .iter()
        .position(|&v| v == best_v)
        .map(|k| k as f64 / n as f64)
        .unwrap_or(0.0);
    for (t, v) in refined {
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }
    Ok((-best_v, best_t))
}

/// Locate the crossing of |f| through `threshold` between a qualifying and a
/// non-qualifying parameter; the returned parameter stays on the qualifying
/// side.
fn bisect_threshold<F>(h: &mut F, mut t_in: f64, mut t_out: f64, threshold: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    for _ in 0..60 {
        let mid = 0.5 * (t_in + t_out);
        if h(mid)? >= threshold {
            t_in = mid;
        } else {
            t_out = mid;
        }
    }
    Ok(t_in.rem_euclid(1.0))
}

/// Clusters of parameters where |f| reaches (1 - eps) of the norm.
pub fn norming_set(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<NormingSet> {
    let eps = cfg.norming_eps;
    if !(eps > 0.0 && eps <= 1e-2) {
        return Err(Error::InvalidConfig(
            "norming_eps must lie in (0, 1e-2]".into(),
        ));
    }
    let n = cfg.grid_n;
    let report = sup_norm(f, curve, cfg)?;
    let norm = report.norm_value;
    let vals = grid_modulus(f, curve, n)?;
    let threshold = (1.0 - eps) * norm;
    let qualify: Vec<bool> = vals.iter().map(|&v| v >= threshold).collect();

    if qualify.iter().all(|&q| q) {
        return Ok(NormingSet {
            clusters: vec![Cluster::WholeCurve],
            epsilon: eps,
            norm_value: norm,
            grid_size: n,
        });
    }

    let mut h = |t: f64| f.eval(curve.point(t)).map(|w| w.norm());
    let mut clusters = Vec::new();
    for start in 0..n {
        if !(qualify[start] && !qualify[(start + n - 1) % n]) {
            continue;
        }
        let mut run = Vec::new();
        let mut j = start;
        while qualify[j] && run.len() < n {
            run.push(j);
            j = (j + 1) % n;
        }
        let &peak_idx = run
            .iter()
            .max_by(|&&a, &&b| vals[a].partial_cmp(&vals[b]).unwrap())
            .expect("runs are nonempty");
        let t0 = peak_idx as f64 / n as f64;
        let (mut t_peak, mut v_peak) =
            golden_max(&mut h, t0 - 1.0 / n as f64, t0 + 1.0 / n as f64, cfg.refine_iters)?;
        if vals[peak_idx] > v_peak {
            t_peak = t0;
            v_peak = vals[peak_idx];
        }
        t_peak = canonical_param(t_peak);

        // Width of the plateau that ties with the peak at refinement
        // accuracy. A genuine isolated maximum leaves a single grid point.
        let tie = v_peak - ARGMAX_SLACK.max(1e-12 * v_peak);
        let tight: Vec<usize> = (0..run.len()).filter(|&i| vals[run[i]] >= tie).collect();
        let tight_width = match (tight.first(), tight.last()) {
            (Some(&a), Some(&b)) => (b - a) as f64 / n as f64,
            _ => 0.0,
        };

        if tight_width < TAU / (n as f64 * n as f64) {
            clusters.push(Cluster::Isolated { t: t_peak });
        } else {
            let first = run[0];
            let last = *run.last().unwrap();
            let t_lo = bisect_threshold(
                &mut h,
                first as f64 / n as f64,
                (first as f64 - 1.0) / n as f64,
                threshold,
            )?;
            let t_hi = bisect_threshold(
                &mut h,
                last as f64 / n as f64,
                (last as f64 + 1.0) / n as f64,
                threshold,
            )?;
            clusters.push(Cluster::Arc { t_lo, t_hi });
        }
    }

    if clusters.is_empty() {
        // The argmax grid point always qualifies, so this cannot happen for
        // a function with positive norm.
        return Err(Error::EmptyNormingSet);
    }
    clusters.sort_by(|a, b| cluster_key(a).partial_cmp(&cluster_key(b)).unwrap());
    Ok(NormingSet {
        clusters,
        epsilon: eps,
        norm_value: norm,
        grid_size: n,
    })
}

fn cluster_key(c: &Cluster) -> f64 {
    match c {
        Cluster::Isolated { t } => *t,
        Cluster::Arc { t_lo, .. } => *t_lo,
        Cluster::WholeCurve => -1.0,
    }
}

/// Whether |f| is constant on the curve (relative spread within
/// `cfg.jgamma_tol`). The zero function reports membership with a flag.
pub fn in_j_gamma(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<JGammaReport> {
    let report = sup_norm(f, curve, cfg)?;
    if report.norm_value < ZERO_NORM_THRESHOLD {
        return Ok(JGammaReport {
            member: true,
            zero_function: true,
            max_modulus: report.norm_value,
            min_modulus: report.norm_value,
        });
    }
    let (min_modulus, _) = inf_modulus(f, curve, cfg)?;
    let member = report.norm_value - min_modulus <= cfg.jgamma_tol * report.norm_value;
    Ok(JGammaReport {
        member,
        zero_function: false,
        max_modulus: report.norm_value,
        min_modulus,
    })
}

/// Smoothness (singleton norming set) and extreme-point status (unit norm
/// plus constant modulus) in one pass. Errors on the zero function.
pub fn classify_point(f: &HoloExpr, curve: &Curve, cfg: &RunConfig) -> Result<ClassifyReport> {
    let ns = norming_set(f, curve, cfg)?;
    if ns.norm_value < ZERO_NORM_THRESHOLD {
        return Err(Error::ZeroFunction);
    }
    let jg = in_j_gamma(f, curve, cfg)?;
    let smooth = matches!(ns.clusters.as_slice(), [Cluster::Isolated { .. }]);
    let extreme = (ns.norm_value - 1.0).abs() <= cfg.jgamma_tol && jg.member;
    Ok(ClassifyReport {
        smoothness: if smooth {
            Smoothness::Smooth
        } else {
            Smoothness::NotSmooth
        },
        extreme_on_analytic_curve: extreme,
        norm_value: ns.norm_value,
        cluster_count: ns.clusters.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_circle() -> Curve {
        Curve::circle(c(0.0, 0.0), 1.0).unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn monomial_norm_is_radius_power() {
        for r in [0.5, 1.0, 2.0] {
            let curve = Curve::circle(c(0.0, 0.0), r).unwrap();
            for n in 1..=5u32 {
                let f = HoloExpr::monomial(n);
                let report = sup_norm(&f, &curve, &cfg()).unwrap();
                let expect = r.powi(n as i32);
                assert!(
                    (report.norm_value - expect).abs() <= 1e-12 * expect,
                    "r={r} n={n} got {}",
                    report.norm_value
                );
                // Constant modulus: the whole grid attains the norm.
                assert_eq!(report.argmax_params.len(), report.grid_size);
            }
        }
    }

    #[test]
    fn shifted_identity_norm_and_argmax() {
        let f = parse("z + 2").unwrap();
        let report = sup_norm(&f, &unit_circle(), &cfg()).unwrap();
        assert!((report.norm_value - 3.0).abs() < 1e-12);
        assert_eq!(report.argmax_params.len(), 1);
        let t = report.argmax_params[0];
        assert!(t.min(1.0 - t) < 1e-6, "argmax should sit at t = 0, got {t}");
    }

    #[test]
    fn scaled_blaschke_norm_is_scale() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            let scale = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let f = HoloExpr::blaschke(a, 1.0).unwrap().scaled(scale);
            let report = sup_norm(&f, &unit_circle(), &cfg()).unwrap();
            assert!(
                (report.norm_value - scale.norm()).abs() <= 1e-10 * (1.0 + scale.norm()),
                "a={a} scale={scale} got {}",
                report.norm_value
            );
        }
    }

    #[test]
    fn norming_set_isolated_point() {
        let f = parse("z + 2").unwrap();
        let ns = norming_set(&f, &unit_circle(), &cfg()).unwrap();
        match ns.clusters.as_slice() {
            [Cluster::Isolated { t }] => assert!(t.min(1.0 - t) < 1e-6),
            other => panic!("expected one isolated cluster, got {other:?}"),
        }
    }

    #[test]
    fn norming_set_two_isolated_points() {
        // |z^2 + 1| on the unit circle peaks at t = 0 and t = 1/2.
        let f = parse("z^2 + 1").unwrap();
        let ns = norming_set(&f, &unit_circle(), &cfg()).unwrap();
        match ns.clusters.as_slice() {
            [Cluster::Isolated { t: t1 }, Cluster::Isolated { t: t2 }] => {
                assert!(t1.min(1.0 - t1) < 1e-6, "t1 = {t1}");
                assert!((t2 - 0.5).abs() < 1e-6, "t2 = {t2}");
            }
            other => panic!("expected two isolated clusters, got {other:?}"),
        }
    }

    #[test]
    fn norming_set_whole_curve() {
        let f = HoloExpr::monomial(3);
        let ns = norming_set(&f, &unit_circle(), &cfg()).unwrap();
        assert!(ns.is_whole_curve());
        assert_eq!(ns.representatives().len(), ns.grid_size);
    }

    #[test]
    fn norming_set_members_attain_norm_within_eps() {
        for src in ["z + 2", "z^2 + 1", "z^3 - 0.5*z + 0.25"] {
            let f = parse(src).unwrap();
            let ns = norming_set(&f, &unit_circle(), &cfg()).unwrap();
            for t in ns.representatives() {
                let v = f.eval(unit_circle().point(t)).unwrap().norm();
                assert!(
                    v >= (1.0 - ns.epsilon) * ns.norm_value,
                    "{src}: |f| = {v} at t = {t}, norm {}",
                    ns.norm_value
                );
            }
        }
    }

    #[test]
    fn jgamma_blaschke_product_is_member() {
        let f = parse("2i * blaschke(0.5, 1) * blaschke(0-0.3i, 1) * blaschke(0.2+0.1i, 1)")
            .unwrap();
        let jg = in_j_gamma(&f, &unit_circle(), &cfg()).unwrap();
        assert!(jg.member);
        assert!(!jg.zero_function);
    }

    #[test]
    fn jgamma_counterexamples() {
        let f = parse("z + 2").unwrap();
        assert!(!in_j_gamma(&f, &unit_circle(), &cfg()).unwrap().member);
        let g = parse("z^2").unwrap();
        let ellipse = Curve::ellipse(c(0.0, 0.0), 2.0, 1.0).unwrap();
        assert!(!in_j_gamma(&g, &ellipse, &cfg()).unwrap().member);
    }

    #[test]
    fn jgamma_zero_function_flagged() {
        let f = HoloExpr::constant(0.0);
        let jg = in_j_gamma(&f, &unit_circle(), &cfg()).unwrap();
        assert!(jg.member && jg.zero_function);
    }

    #[test]
    fn classify_examples() {
        let curve = unit_circle();
        let smooth = classify_point(&parse("z + 2").unwrap(), &curve, &cfg()).unwrap();
        assert_eq!(smooth.smoothness, Smoothness::Smooth);
        assert!(!smooth.extreme_on_analytic_curve);

        let two_peaks = classify_point(&parse("z^2 + 1").unwrap(), &curve, &cfg()).unwrap();
        assert_eq!(two_peaks.smoothness, Smoothness::NotSmooth);

        let blaschke = classify_point(&parse("blaschke(0.5, 1)").unwrap(), &curve, &cfg()).unwrap();
        assert_eq!(blaschke.smoothness, Smoothness::NotSmooth);
        assert!(blaschke.extreme_on_analytic_curve);

        assert_eq!(
            classify_point(&HoloExpr::constant(0.0), &curve, &cfg()),
            Err(Error::ZeroFunction)
        );
    }

    #[test]
    fn norm_is_homogeneous() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let curve = unit_circle();
        for _ in 0..100 {
            let coeffs: Vec<Complex64> = (0..4)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = crate::poly::Polynomial::new(coeffs).to_expr();
            let scale = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let base = sup_norm(&f, &curve, &cfg()).unwrap().norm_value;
            let scaled = sup_norm(&f.clone().scaled(scale), &curve, &cfg())
                .unwrap()
                .norm_value;
            assert!(
                (scaled - scale.norm() * base).abs() <= 1e-12 * (1.0 + scaled),
                "|c| = {}, base = {base}, scaled = {scaled}",
                scale.norm()
            );
        }
    }

    #[test]
    fn norm_satisfies_triangle_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let curve = unit_circle();
        for _ in 0..100 {
            let mut poly = |deg: usize| {
                let coeffs: Vec<Complex64> = (0..=deg)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                crate::poly::Polynomial::new(coeffs).to_expr()
            };
            let f = poly(3);
            let g = poly(4);
            let nf = sup_norm(&f, &curve, &cfg()).unwrap().norm_value;
            let ng = sup_norm(&g, &curve, &cfg()).unwrap().norm_value;
            let nsum = sup_norm(&HoloExpr::add(f, g), &curve, &cfg())
                .unwrap()
                .norm_value;
            assert!(nsum <= nf + ng + 1e-12);
        }
    }

    #[test]
    fn refinement_is_monotone_in_grid_size() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let curve = unit_circle();
        let coarse = RunConfig {
            grid_n: 4096,
            ..RunConfig::default()
        };
        let fine = RunConfig {
            grid_n: 8192,
            ..RunConfig::default()
        };
        for _ in 0..20 {
            let coeffs: Vec<Complex64> = (0..5)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = crate::poly::Polynomial::new(coeffs).to_expr();
            let lo = sup_norm(&f, &curve, &coarse).unwrap().norm_value;
            let hi = sup_norm(&f, &curve, &fine).unwrap().norm_value;
            assert!(hi >= lo - 1e-10);
        }
    }

    #[test]
    fn jgamma_on_random_blaschke_and_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for trial in 0..50 {
            let r = [0.5, 1.0, 2.0][trial % 3];
            let curve = Curve::circle(c(0.0, 0.0), r).unwrap();
            let k = rng.gen_range(1..=3);
            let mut f: Option<HoloExpr> = None;
            for _ in 0..k {
                let mag = rng.gen_range(0.0..0.9);
                let arg = rng.gen_range(0.0..TAU);
                let a = Complex64::from_polar(mag, arg);
                let factor = HoloExpr::blaschke(a, r).unwrap();
                f = Some(match f {
                    None => factor,
                    Some(prev) => HoloExpr::mul(prev, factor),
                });
            }
            let f = f.unwrap();
            assert!(
                in_j_gamma(&f, &curve, &cfg()).unwrap().member,
                "trial {trial} should be constant-modulus"
            );

            // A polynomial with a zero away from the center never has
            // constant modulus on the circle.
            let root = loop {
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                if z.norm() > 0.1 && (z.norm() - r).abs() > 0.05 {
                    break z;
                }
            };
            let p = crate::poly::Polynomial::from_roots(c(1.0, 0.0), &[root]).to_expr();
            assert!(!in_j_gamma(&p, &curve, &cfg()).unwrap().member);
        }
    }
}
