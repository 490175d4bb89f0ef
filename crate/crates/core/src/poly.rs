//! Dense polynomials with complex coefficients, convertible to and from
//! expression trees.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::HoloExpr;

/// Coefficients a_0..a_n with a nonzero leading coefficient; the zero
/// polynomial stores no coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Build from low-to-high coefficients, trimming exact trailing zeros.
    pub fn new(mut coeffs: Vec<Complex64>) -> Polynomial {
        while coeffs
            .last()
            .is_some_and(|c| c.re == 0.0 && c.im == 0.0)
        {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Expand leading * prod (z - root_k).
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Polynomial {
        let mut coeffs = vec![leading];
        for &root in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * root;
            }
            coeffs = next;
        }
        Polynomial::new(coeffs)
    }

    /// Termwise sum a_0 + a_1*z + ... as an expression tree.
    pub fn to_expr(&self) -> HoloExpr {
        let mut acc: Option<HoloExpr> = None;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let term = match k {
                0 => HoloExpr::constant(c),
                _ => {
                    let power = if k == 1 {
                        HoloExpr::Z
                    } else {
                        HoloExpr::monomial(k as u32)
                    };
                    if c.re == 1.0 && c.im == 0.0 {
                        power
                    } else {
                        HoloExpr::mul(HoloExpr::constant(c), power)
                    }
                }
            };
            acc = Some(match acc {
                None => term,
                Some(prev) => HoloExpr::add(prev, term),
            });
        }
        acc.unwrap_or_else(|| HoloExpr::constant(0.0))
    }

    /// Recover coefficients from an expression tree, when the tree denotes a
    /// polynomial (no Blaschke factors, division only by constants). The
    /// degree is capped to keep adversarial `(..)^k` towers cheap.
    pub fn from_expr(e: &HoloExpr) -> Option<Polynomial> {
        const MAX_LEN: usize = 512;
        fn conv(e: &HoloExpr) -> Option<Vec<Complex64>> {
            match e {
                HoloExpr::Const(c) => Some(vec![*c]),
                HoloExpr::Z => Some(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
                HoloExpr::Add(l, r) => {
                    let a = conv(l)?;
                    let b = conv(r)?;
                    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
                    for (k, &c) in a.iter().enumerate() {
                        out[k] += c;
                    }
                    for (k, &c) in b.iter().enumerate() {
                        out[k] += c;
                    }
                    Some(out)
                }
                HoloExpr::Neg(inner) => {
                    Some(conv(inner)?.into_iter().map(|c| -c).collect())
                }
                HoloExpr::Mul(l, r) => {
                    let a = conv(l)?;
                    let b = conv(r)?;
                    if a.len() + b.len() > MAX_LEN {
                        return None;
                    }
                    let mut out =
                        vec![Complex64::new(0.0, 0.0); (a.len() + b.len()).saturating_sub(1).max(1)];
                    for (i, &x) in a.iter().enumerate() {
                        for (j, &y) in b.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                    Some(out)
                }
                HoloExpr::Div(n, d) => {
                    let den = d.as_constant()?;
                    if den.norm() == 0.0 {
                        return None;
                    }
                    Some(conv(n)?.into_iter().map(|c| c / den).collect())
                }
                HoloExpr::IntPow(inner, k) => {
                    let base = conv(inner)?;
                    let mut out = vec![Complex64::new(1.0, 0.0)];
                    for _ in 0..*k {
                        if out.len() + base.len() > MAX_LEN {
                            return None;
                        }
                        let mut next = vec![
                            Complex64::new(0.0, 0.0);
                            (out.len() + base.len()).saturating_sub(1).max(1)
                        ];
                        for (i, &x) in out.iter().enumerate() {
                            for (j, &y) in base.iter().enumerate() {
                                next[i + j] += x * y;
                            }
                        }
                        out = next;
                    }
                    Some(out)
                }
                HoloExpr::Blaschke { .. } => None,
            }
        }
        conv(e).map(Polynomial::new)
    }
}

/// Paper bound for the monomial comparison radius: max(1, sum |a_k| / |a_n|)
/// over k < n. Every root of the polynomial has modulus at most this bound.
pub fn fta_bound(q: &Polynomial) -> Result<f64> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = q.degree().expect("nonzero polynomial has a degree");
    if n < 1 {
        return Err(Error::DegreeTooSmall { need: 1, got: n });
    }
    let lead = q.leading().expect("nonzero leading coefficient").norm();
    let tail: f64 = q.coeffs()[..n].iter().map(|c| c.norm()).sum();
    Ok((tail / lead).max(1.0))
}
