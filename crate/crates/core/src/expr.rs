//! Expression trees for holomorphic functions: constants, `z`, arithmetic,
//! nonnegative integer powers and Blaschke factors, with exact symbolic
//! differentiation.
//!
//! Expressions are immutable after construction and evaluation is pure, so
//! they can be shared read-only across threads.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative pole guard: a denominator with |den| < threshold * (1 + |num|)
/// is an error, never a silent infinity.
pub const POLE_RELATIVE_THRESHOLD: f64 = 1e-12;

/// A holomorphic function on (a neighbourhood of) a closed curve.
#[derive(Debug, Clone, PartialEq)]
pub enum HoloExpr {
    Const(Complex64),
    Z,
    Add(Box<HoloExpr>, Box<HoloExpr>),
    Mul(Box<HoloExpr>, Box<HoloExpr>),
    Neg(Box<HoloExpr>),
    Div(Box<HoloExpr>, Box<HoloExpr>),
    /// Nonnegative integer power of a subexpression.
    IntPow(Box<HoloExpr>, u32),
    /// The scaled factor (z - r*a) / (r - conj(a)*z), which has modulus one
    /// on the circle of radius `r` about the origin when |a| < 1. Its only
    /// zero is r*a, strictly inside that circle.
    Blaschke { a: Complex64, r: f64 },
}

impl HoloExpr {
    pub fn constant(c: impl Into<Complex64>) -> HoloExpr {
        HoloExpr::Const(c.into())
    }

    pub fn z() -> HoloExpr {
        HoloExpr::Z
    }

    pub fn add(l: HoloExpr, r: HoloExpr) -> HoloExpr {
        HoloExpr::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: HoloExpr, r: HoloExpr) -> HoloExpr {
        HoloExpr::Add(Box::new(l), Box::new(HoloExpr::neg(r)))
    }

    pub fn mul(l: HoloExpr, r: HoloExpr) -> HoloExpr {
        HoloExpr::Mul(Box::new(l), Box::new(r))
    }

    pub fn neg(e: HoloExpr) -> HoloExpr {
        HoloExpr::Neg(Box::new(e))
    }

    pub fn div(num: HoloExpr, den: HoloExpr) -> HoloExpr {
        HoloExpr::Div(Box::new(num), Box::new(den))
    }

    pub fn int_pow(e: HoloExpr, k: u32) -> HoloExpr {
        HoloExpr::IntPow(Box::new(e), k)
    }

    /// Monomial z^k.
    pub fn monomial(k: u32) -> HoloExpr {
        HoloExpr::int_pow(HoloExpr::Z, k)
    }

    /// Validated Blaschke factor; requires |a| < 1 and r > 0.
    pub fn blaschke(a: Complex64, r: f64) -> Result<HoloExpr> {
        if a.norm() < 1.0 && r > 0.0 && r.is_finite() {
            Ok(HoloExpr::Blaschke { a, r })
        } else {
            Err(Error::InvalidBlaschke { a, r })
        }
    }

    /// Scale by a constant factor.
    pub fn scaled(self, c: impl Into<Complex64>) -> HoloExpr {
        HoloExpr::mul(HoloExpr::constant(c), self)
    }

    fn checked_div(num: Complex64, den: Complex64, at: Complex64) -> Result<Complex64> {
        if den.norm() < POLE_RELATIVE_THRESHOLD * (1.0 + num.norm()) {
            Err(Error::PoleProximity {
                at,
                denominator_modulus: den.norm(),
            })
        } else {
            Ok(num / den)
        }
    }

    /// Evaluate at a point. Division applies the pole guard.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            HoloExpr::Const(c) => Ok(*c),
            HoloExpr::Z => Ok(z),
            HoloExpr::Add(l, r) => Ok(l.eval(z)? + r.eval(z)?),
            HoloExpr::Mul(l, r) => Ok(l.eval(z)? * r.eval(z)?),
            HoloExpr::Neg(e) => Ok(-e.eval(z)?),
            HoloExpr::Div(num, den) => {
                let n = num.eval(z)?;
                let d = den.eval(z)?;
                Self::checked_div(n, d, z)
            }
            HoloExpr::IntPow(e, k) => Ok(e.eval(z)?.powu(*k)),
            HoloExpr::Blaschke { a, r } => {
                let n = z - r * a;
                let d = r - a.conj() * z;
                Self::checked_div(n, d, z)
            }
        }
    }

    /// Whether the value depends on `z` anywhere in the tree.
    pub fn depends_on_z(&self) -> bool {
        match self {
            HoloExpr::Const(_) => false,
            HoloExpr::Z | HoloExpr::Blaschke { .. } => true,
            HoloExpr::Add(l, r) | HoloExpr::Mul(l, r) | HoloExpr::Div(l, r) => {
                l.depends_on_z() || r.depends_on_z()
            }
            HoloExpr::Neg(e) => e.depends_on_z(),
            HoloExpr::IntPow(e, _) => e.depends_on_z(),
        }
    }

    /// The value of a constant subtree, if the tree does not mention `z`.
    pub fn as_constant(&self) -> Option<Complex64> {
        if self.depends_on_z() {
            None
        } else {
            self.eval(Complex64::new(0.0, 0.0)).ok()
        }
    }

    /// Exact symbolic derivative. Blaschke factors differentiate through the
    /// quotient rule to r(1 - |a|^2) / (r - conj(a) z)^2.
    pub fn differentiate(&self) -> HoloExpr {
        match self {
            HoloExpr::Const(_) => HoloExpr::constant(0.0),
            HoloExpr::Z => HoloExpr::constant(1.0),
            HoloExpr::Add(l, r) => add_s(l.differentiate(), r.differentiate()),
            HoloExpr::Neg(e) => neg_s(e.differentiate()),
            HoloExpr::Mul(l, r) => add_s(
                mul_s(l.differentiate(), (**r).clone()),
                mul_s((**l).clone(), r.differentiate()),
            ),
            HoloExpr::Div(num, den) => {
                let dnum = mul_s(num.differentiate(), (**den).clone());
                let nden = mul_s((**num).clone(), den.differentiate());
                HoloExpr::div(
                    add_s(dnum, neg_s(nden)),
                    HoloExpr::int_pow((**den).clone(), 2),
                )
            }
            HoloExpr::IntPow(_, 0) => HoloExpr::constant(0.0),
            HoloExpr::IntPow(e, k) => {
                let inner = e.differentiate();
                let power = if *k == 1 {
                    HoloExpr::constant(1.0)
                } else {
                    HoloExpr::int_pow((**e).clone(), k - 1)
                };
                mul_s(mul_s(HoloExpr::constant(*k as f64), power), inner)
            }
            HoloExpr::Blaschke { a, r } => {
                let num = HoloExpr::constant(r * (1.0 - a.norm_sqr()));
                let den = HoloExpr::sub(
                    HoloExpr::constant(*r),
                    HoloExpr::mul(HoloExpr::constant(a.conj()), HoloExpr::Z),
                );
                HoloExpr::div(num, HoloExpr::int_pow(den, 2))
            }
        }
    }

    /// n-fold symbolic derivative; n = 0 is the identity.
    pub fn nth_derivative(&self, n: usize) -> HoloExpr {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.differentiate();
        }
        e
    }
}

fn is_zero_const(e: &HoloExpr) -> bool {
    matches!(e, HoloExpr::Const(c) if c.re == 0.0 && c.im == 0.0)
}

fn is_one_const(e: &HoloExpr) -> bool {
    matches!(e, HoloExpr::Const(c) if c.re == 1.0 && c.im == 0.0)
}

// Light constant folding used only when building derivatives, so that
// repeated differentiation does not bury the result under *1 and +0 nodes.
fn add_s(l: HoloExpr, r: HoloExpr) -> HoloExpr {
    if is_zero_const(&l) {
        return r;
    }
    if is_zero_const(&r) {
        return l;
    }
    if let (HoloExpr::Const(a), HoloExpr::Const(b)) = (&l, &r) {
        return HoloExpr::Const(a + b);
    }
    HoloExpr::add(l, r)
}

fn mul_s(l: HoloExpr, r: HoloExpr) -> HoloExpr {
    if is_zero_const(&l) || is_zero_const(&r) {
        return HoloExpr::constant(0.0);
    }
    if is_one_const(&l) {
        return r;
    }
    if is_one_const(&r) {
        return l;
    }
    if let (HoloExpr::Const(a), HoloExpr::Const(b)) = (&l, &r) {
        return HoloExpr::Const(a * b);
    }
    HoloExpr::mul(l, r)
}

fn neg_s(e: HoloExpr) -> HoloExpr {
    match e {
        HoloExpr::Const(c) => HoloExpr::Const(-c),
        HoloExpr::Neg(inner) => *inner,
        other => HoloExpr::neg(other),
    }
}

fn fmt_real(x: f64) -> String {
    // Normalize -0.0 so formatting round-trips through the parser.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

/// Format a complex constant as an expression literal: "1.5", "2i", "1+2i",
/// "1-0.3i". Negative leading parts keep their sign; the parser reads them
/// back through unary minus.
pub fn format_complex(c: Complex64) -> String {
    let re = if c.re == 0.0 { 0.0 } else { c.re };
    let im = if c.im == 0.0 { 0.0 } else { c.im };
    if im == 0.0 {
        fmt_real(re)
    } else if re == 0.0 {
        format!("{}i", fmt_real(im))
    } else if im < 0.0 {
        format!("{}-{}i", fmt_real(re), fmt_real(-im))
    } else {
        format!("{}+{}i", fmt_real(re), fmt_real(im))
    }
}

/// A constant that can stand bare as a factor (no internal sign or sum).
fn const_is_atom(c: Complex64) -> bool {
    (c.im == 0.0 && c.re >= 0.0) || (c.re == 0.0 && c.im >= 0.0)
}

/// Usable wherever the grammar expects a factor without extra parentheses.
fn is_factor_atom(e: &HoloExpr) -> bool {
    match e {
        HoloExpr::Z | HoloExpr::Blaschke { .. } | HoloExpr::IntPow(..) => true,
        HoloExpr::Const(c) => const_is_atom(*c),
        _ => false,
    }
}

/// Usable after '+'/'-' without extra parentheses (a term of the grammar).
fn is_term_atom(e: &HoloExpr) -> bool {
    is_factor_atom(e) || matches!(e, HoloExpr::Mul(..) | HoloExpr::Div(..))
}

fn factor_str(e: &HoloExpr) -> String {
    if is_factor_atom(e) {
        e.to_string()
    } else {
        format!("({e})")
    }
}

fn term_str(e: &HoloExpr) -> String {
    if is_term_atom(e) {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for HoloExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoloExpr::Const(c) => write!(f, "{}", format_complex(*c)),
            HoloExpr::Z => write!(f, "z"),
            HoloExpr::Add(l, r) => match &**r {
                HoloExpr::Neg(inner) => write!(f, "{} - {}", l, term_str(inner)),
                other => write!(f, "{} + {}", l, term_str(other)),
            },
            HoloExpr::Neg(e) => write!(f, "-{}", term_str(e)),
            HoloExpr::Mul(l, r) => write!(f, "{}*{}", factor_str(l), factor_str(r)),
            HoloExpr::Div(n, d) => write!(f, "{}/{}", factor_str(n), factor_str(d)),
            HoloExpr::IntPow(e, k) => {
                let base = match &**e {
                    HoloExpr::Z => "z".to_string(),
                    HoloExpr::Blaschke { .. } => e.to_string(),
                    HoloExpr::Const(c) if const_is_atom(*c) => e.to_string(),
                    other => format!("({other})"),
                };
                write!(f, "{base}^{k}")
            }
            HoloExpr::Blaschke { a, r } => {
                write!(f, "blaschke({}, {})", format_complex(*a), fmt_real(*r))
            }
        }
    }
}
