//! Simple closed curves (circles and ellipses) with closed-form tangents,
//! periodic trapezoid quadrature, and inter-curve distance.
//!
//! The parametrization is 1-periodic on t in [0, 1). For integrands analytic
//! in a neighbourhood of the curve the trapezoid rule converges geometrically
//! in the grid size.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::HoloExpr;
use crate::parse::parse_complex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Curve {
    Circle {
        center: Complex64,
        radius: f64,
    },
    /// Axis-aligned ellipse: center + semi_a*cos(2 pi t) + i*semi_b*sin(2 pi t).
    Ellipse {
        center: Complex64,
        semi_a: f64,
        semi_b: f64,
    },
}

impl Curve {
    pub fn circle(center: Complex64, radius: f64) -> Result<Curve> {
        if radius > 0.0 && radius.is_finite() {
            Ok(Curve::Circle { center, radius })
        } else {
            Err(Error::GeometryViolation(format!(
                "circle radius must be positive, got {radius}"
            )))
        }
    }

    pub fn ellipse(center: Complex64, semi_a: f64, semi_b: f64) -> Result<Curve> {
        if semi_a > 0.0 && semi_b > 0.0 && semi_a.is_finite() && semi_b.is_finite() {
            Ok(Curve::Ellipse {
                center,
                semi_a,
                semi_b,
            })
        } else {
            Err(Error::GeometryViolation(format!(
                "ellipse semi-axes must be positive, got ({semi_a}, {semi_b})"
            )))
        }
    }

    /// Curve literal: `circle(0,1)`, `circle(1+1i,2.5)`, `ellipse(0,2,1)`.
    pub fn parse(text: &str) -> Result<Curve> {
        let trimmed = text.trim();
        let (name, rest) = trimmed
            .split_once('(')
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: "expected `circle(...)` or `ellipse(...)`".into(),
            })?;
        let body = rest.strip_suffix(')').ok_or_else(|| Error::Syntax {
            pos: trimmed.len(),
            msg: "expected `)` to close the curve literal".into(),
        })?;
        let args = split_top_level(body);
        match (name.trim(), args.as_slice()) {
            ("circle", [center, radius]) => {
                let center = parse_complex(center)?;
                let radius = parse_real(radius)?;
                Curve::circle(center, radius)
            }
            ("ellipse", [center, a, b]) => {
                let center = parse_complex(center)?;
                let a = parse_real(a)?;
                let b = parse_real(b)?;
                Curve::ellipse(center, a, b)
            }
            ("circle", args) => Err(Error::Syntax {
                pos: 0,
                msg: format!("circle takes 2 arguments, got {}", args.len()),
            }),
            ("ellipse", args) => Err(Error::Syntax {
                pos: 0,
                msg: format!("ellipse takes 3 arguments, got {}", args.len()),
            }),
            (other, _) => Err(Error::Syntax {
                pos: 0,
                msg: format!("unknown curve kind `{other}`"),
            }),
        }
    }

    /// Point at parameter t (1-periodic).
    pub fn point(&self, t: f64) -> Complex64 {
        let (s, c) = (TAU * t).sin_cos();
        match self {
            Curve::Circle { center, radius } => center + radius * Complex64::new(c, s),
            Curve::Ellipse {
                center,
                semi_a,
                semi_b,
            } => center + Complex64::new(semi_a * c, semi_b * s),
        }
    }

    /// Derivative of the parametrization with respect to t.
    pub fn tangent(&self, t: f64) -> Complex64 {
        let (s, c) = (TAU * t).sin_cos();
        match self {
            Curve::Circle { radius, .. } => TAU * radius * Complex64::new(-s, c),
            Curve::Ellipse {
                semi_a, semi_b, ..
            } => TAU * Complex64::new(-semi_a * s, semi_b * c),
        }
    }

    /// Uniform grid t_k = k/n of points and tangents.
    pub fn sample(&self, n: usize) -> Vec<CurveSample> {
        (0..n)
            .map(|k| {
                let t = k as f64 / n as f64;
                CurveSample {
                    t,
                    point: self.point(t),
                    tangent: self.tangent(t),
                }
            })
            .collect()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Circle { center, radius } => {
                write!(
                    f,
                    "circle({},{})",
                    crate::expr::format_complex(*center),
                    radius
                )
            }
            Curve::Ellipse {
                center,
                semi_a,
                semi_b,
            } => write!(
                f,
                "ellipse({},{},{})",
                crate::expr::format_complex(*center),
                semi_a,
                semi_b
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub point: Complex64,
    pub tangent: Complex64,
}

fn parse_real(text: &str) -> Result<f64> {
    let v = parse_complex(text)?;
    if v.im.abs() > 1e-12 * (1.0 + v.re.abs()) {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("expected a real number, got `{}`", text.trim()),
        });
    }
    Ok(v.re)
}

/// Split on commas that are not nested inside parentheses.
fn split_top_level(body: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&body[start..]);
    parts
}

/// Trapezoid rule for the contour integral of `f` along the curve:
/// (1/n) * sum f(gamma(t_k)) gamma'(t_k), accumulated in grid order.
pub fn contour_integral<F>(mut f: F, curve: &Curve, n: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let t = k as f64 / n as f64;
        acc += f(curve.point(t))? * curve.tangent(t);
    }
    Ok(acc / n as f64)
}

pub fn contour_integral_expr(f: &HoloExpr, curve: &Curve, n: usize) -> Result<Complex64> {
    contour_integral(|z| f.eval(z), curve, n)
}

/// Minimum distance between two curves: dense n-by-n scan followed by a
/// compass search on (s, t). Deterministic; the refined value is never above
/// the scan value.
pub fn curve_distance(c1: &Curve, c2: &Curve, n: usize) -> f64 {
    let n = n.max(8);
    let p1: Vec<Complex64> = (0..n).map(|k| c1.point(k as f64 / n as f64)).collect();
    let p2: Vec<Complex64> = (0..n).map(|k| c2.point(k as f64 / n as f64)).collect();
    let mut best = f64::INFINITY;
    let mut best_st = (0.0, 0.0);
    for (i, &a) in p1.iter().enumerate() {
        for (j, &b) in p2.iter().enumerate() {
            let d = (a - b).norm();
            if d < best {
                best = d;
                best_st = (i as f64 / n as f64, j as f64 / n as f64);
            }
        }
    }
    let dist = |s: f64, t: f64| (c1.point(s) - c2.point(t)).norm();
    let (mut s, mut t) = best_st;
    let mut step = 1.0 / n as f64;
    while step > 1e-13 {
        let mut moved = false;
        for (ds, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (ns, nt) = (s + ds, t + dt);
            let d = dist(ns, nt);
            if d < best {
                best = d;
                s = ns;
                t = nt;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}
