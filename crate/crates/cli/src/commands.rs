//! One function per CLI command: parse the inputs, delegate to the library,
//! wrap the result in a [`Report`].

use std::time::Instant;

use bjorth_core::{
    bj_minimize, classify_point, count_zeros, covering_decide, derivative_ortho_scenario,
    fta_verify, in_j_gamma, norming_set, ortho_via_covering, parse, parse_complex, sup_norm,
    Complex64, CoveringDecision, Curve, Error, HoloExpr, Polynomial, Result, RunConfig,
};
use clap::ValueEnum;

use crate::report::{CommandOutput, CoveringOutput, Inputs, OrthoOutput, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Minimize,
    Covering,
    Both,
}

fn finish(
    command: &str,
    inputs: Inputs,
    outputs: CommandOutput,
    cfg: &RunConfig,
    started: Instant,
) -> Report {
    Report {
        command: command.to_string(),
        inputs,
        outputs,
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
        config: cfg.clone(),
    }
}

pub fn cmd_norm(expr: &str, curve: &str, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let gamma = Curve::parse(curve)?;
    let report = sup_norm(&f, &gamma, cfg)?;
    Ok(finish(
        "norm",
        Inputs::new(vec![expr.to_string()], Some(curve.to_string())),
        CommandOutput::Norm(report),
        cfg,
        started,
    ))
}

pub fn cmd_norming_set(expr: &str, curve: &str, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let gamma = Curve::parse(curve)?;
    let ns = norming_set(&f, &gamma, cfg)?;
    Ok(finish(
        "norming-set",
        Inputs::new(vec![expr.to_string()], Some(curve.to_string()))
            .with_option("eps", cfg.norming_eps),
        CommandOutput::NormingSet(ns),
        cfg,
        started,
    ))
}

pub fn cmd_jgamma(expr: &str, curve: &str, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let gamma = Curve::parse(curve)?;
    let jg = in_j_gamma(&f, &gamma, cfg)?;
    Ok(finish(
        "jgamma",
        Inputs::new(vec![expr.to_string()], Some(curve.to_string()))
            .with_option("tol", cfg.jgamma_tol),
        CommandOutput::JGamma(jg),
        cfg,
        started,
    ))
}

pub fn cmd_classify(expr: &str, curve: &str, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let gamma = Curve::parse(curve)?;
    let class = classify_point(&f, &gamma, cfg)?;
    Ok(finish(
        "classify",
        Inputs::new(vec![expr.to_string()], Some(curve.to_string())),
        CommandOutput::Classify(class),
        cfg,
        started,
    ))
}

pub fn cmd_ortho(
    f_text: &str,
    g_text: &str,
    curve: &str,
    method: Method,
    cfg: &RunConfig,
) -> Result<Report> {
    let started = Instant::now();
    let f = parse(f_text)?;
    let g = parse(g_text)?;
    let gamma = Curve::parse(curve)?;
    let minimize = match method {
        Method::Minimize | Method::Both => Some(bj_minimize(&f, &g, &gamma, cfg)?),
        Method::Covering => None,
    };
    let covering = match method {
        Method::Covering | Method::Both => Some(ortho_via_covering(&f, &g, &gamma, cfg)?),
        Method::Minimize => None,
    };
    let agreement = match (&minimize, &covering) {
        (Some(a), Some(b)) => Some(
            a.is_orthogonal() == b.is_orthogonal()
                && a.is_not_orthogonal() == b.is_not_orthogonal(),
        ),
        _ => None,
    };
    let method_name = match method {
        Method::Minimize => "minimize",
        Method::Covering => "covering",
        Method::Both => "both",
    };
    Ok(finish(
        "ortho",
        Inputs::new(
            vec![f_text.to_string(), g_text.to_string()],
            Some(curve.to_string()),
        )
        .with_option("method", method_name),
        CommandOutput::Ortho(OrthoOutput {
            minimize,
            covering,
            agreement,
        }),
        cfg,
        started,
    ))
}

/// Split "u,v" on the top-level comma (complex literals may contain parens).
fn parse_pair(text: &str) -> Result<(Complex64, Complex64)> {
    let mut depth = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                let u = parse_complex(&text[..i])?;
                let v = parse_complex(&text[i + 1..])?;
                return Ok((u, v));
            }
            _ => {}
        }
    }
    Err(Error::Syntax {
        pos: text.len(),
        msg: format!("expected `u,v` with two complex entries, got `{text}`"),
    })
}

pub fn cmd_covering(pair_texts: &[String], cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    if pair_texts.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "covering needs at least one `u,v` pair".into(),
        });
    }
    let pairs: Vec<(Complex64, Complex64)> = pair_texts
        .iter()
        .map(|t| parse_pair(t))
        .collect::<Result<_>>()?;
    let decision = covering_decide(&pairs);
    let output = match decision {
        CoveringDecision::Covering => CoveringOutput {
            covering: true,
            witness: None,
            pair_count: pairs.len(),
        },
        CoveringDecision::NotCovering { witness } => CoveringOutput {
            covering: false,
            witness: Some(witness),
            pair_count: pairs.len(),
        },
    };
    Ok(finish(
        "covering",
        Inputs::new(pair_texts.to_vec(), None),
        CommandOutput::Covering(output),
        cfg,
        started,
    ))
}

pub fn cmd_zeros(expr: &str, curve: &str, n: Option<usize>, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let gamma = Curve::parse(curve)?;
    let n = n.unwrap_or(cfg.quad_n);
    let w = count_zeros(&f, &gamma, n, cfg)?;
    Ok(finish(
        "zeros",
        Inputs::new(vec![expr.to_string()], Some(curve.to_string())).with_option("n", n),
        CommandOutput::Zeros(w),
        cfg,
        started,
    ))
}

pub fn cmd_fta(expr: &str, slack: f64, cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let f = parse(expr)?;
    let poly = Polynomial::from_expr(&f).ok_or_else(|| Error::Syntax {
        pos: 0,
        msg: format!("`{expr}` is not a polynomial in z"),
    })?;
    let report = fta_verify(&poly, slack, cfg)?;
    Ok(finish(
        "fta",
        Inputs::new(vec![expr.to_string()], None).with_option("slack", slack),
        CommandOutput::Fta(report),
        cfg,
        started,
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_deriv_scenario(
    f_text: &str,
    g_text: &str,
    order: usize,
    outer: &str,
    inner: &str,
    lambda0: &str,
    r: f64,
    cfg: &RunConfig,
) -> Result<Report> {
    let started = Instant::now();
    let f = parse(f_text)?;
    let g = parse(g_text)?;
    let outer_curve = Curve::parse(outer)?;
    let inner_curve = Curve::parse(inner)?;
    let lam0 = parse_complex(lambda0)?;
    let scenario =
        derivative_ortho_scenario(&f, &g, order, &outer_curve, &inner_curve, lam0, r, cfg)?;
    Ok(finish(
        "deriv-scenario",
        Inputs::new(
            vec![f_text.to_string(), g_text.to_string()],
            Some(format!("{outer} | {inner}")),
        )
        .with_option("n", order)
        .with_option("lambda0", lambda0)
        .with_option("r", r),
        CommandOutput::DerivScenario(scenario),
        cfg,
        started,
    ))
}

/// Grid of ||f + lambda*g|| over a lambda box, as CSV text with a header.
/// Resolution 1 evaluates the box center only.
pub fn cmd_landscape(
    f_text: &str,
    g_text: &str,
    curve: &str,
    bbox: &str,
    resolution: usize,
    cfg: &RunConfig,
) -> Result<String> {
    let f = parse(f_text)?;
    let g = parse(g_text)?;
    let gamma = Curve::parse(curve)?;
    let parts: Vec<&str> = bbox.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "box must be `re_lo,re_hi,im_lo,im_hi`".into(),
        });
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim().parse::<f64>().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("invalid box coordinate `{p}`"),
            })
        })
        .collect::<Result<_>>()?;
    let (re_lo, re_hi, im_lo, im_hi) = (nums[0], nums[1], nums[2], nums[3]);
    if resolution == 0 {
        return Err(Error::InvalidConfig("resolution must be positive".into()));
    }
    let coord = |lo: f64, hi: f64, i: usize| {
        if resolution == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * i as f64 / (resolution - 1) as f64
        }
    };
    let mut out = String::from("re_lambda,im_lambda,value\n");
    for i in 0..resolution {
        for j in 0..resolution {
            let lam = Complex64::new(coord(re_lo, re_hi, i), coord(im_lo, im_hi, j));
            let value = sup_norm(
                &HoloExpr::add(f.clone(), g.clone().scaled(lam)),
                &gamma,
                cfg,
            )?
            .norm_value;
            out.push_str(&format!("{},{},{}\n", lam.re, lam.im, value));
        }
    }
    Ok(out)
}
