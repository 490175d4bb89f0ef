//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' uint)?
//! base   := 'z' | complex-literal | '(' expr ')'
//!         | 'blaschke' '(' const-expr ',' const-expr ')'
//! ```
//!
//! Complex literals: `1.5`, `2i`, `1+2i`, `0-0.3i`. A bare real literal
//! followed by `+`/`-` and a bare imaginary literal folds into a single
//! constant, matching the literal grammar. Exponents must be nonnegative
//! integers. Blaschke arguments may be any constant subexpressions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::HoloExpr;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num { val: f64, imag: bool },
    Z,
    Blaschke,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, Copy)]
struct Lexeme {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Lexeme>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'+' => {
                out.push(Lexeme { tok: Tok::Plus, pos });
                i += 1;
            }
            b'-' => {
                out.push(Lexeme { tok: Tok::Minus, pos });
                i += 1;
            }
            b'*' => {
                out.push(Lexeme { tok: Tok::Star, pos });
                i += 1;
            }
            b'/' => {
                out.push(Lexeme { tok: Tok::Slash, pos });
                i += 1;
            }
            b'^' => {
                out.push(Lexeme { tok: Tok::Caret, pos });
                i += 1;
            }
            b'(' => {
                out.push(Lexeme { tok: Tok::LParen, pos });
                i += 1;
            }
            b')' => {
                out.push(Lexeme { tok: Tok::RParen, pos });
                i += 1;
            }
            b',' => {
                out.push(Lexeme { tok: Tok::Comma, pos });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // Optional exponent, only when it really is one.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let val: f64 = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, format!("invalid number `{}`", &text[start..i])))?;
                let imag = i < bytes.len() && bytes[i] == b'i';
                if imag {
                    i += 1;
                }
                out.push(Lexeme {
                    tok: Tok::Num { val, imag },
                    pos: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "z" => Tok::Z,
                    "i" => Tok::Num {
                        val: 1.0,
                        imag: true,
                    },
                    "blaschke" => Tok::Blaschke,
                    other => {
                        return Err(syntax(start, format!("unknown identifier `{other}`")))
                    }
                };
                out.push(Lexeme { tok, pos: start });
            }
            other => {
                return Err(syntax(pos, format!("unexpected character `{}`", other as char)))
            }
        }
    }
    Ok(out)
}

/// Shape of a parsed term, used to fold `a+bi` literal pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
enum TermShape {
    RealLit(f64),
    ImagLit(f64),
    Other,
}

struct Parser<'a> {
    toks: &'a [Lexeme],
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.i).map(|l| l.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|l| l.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn parse_expr(&mut self) -> Result<HoloExpr> {
        let lead_minus = self.eat(Tok::Minus);
        let (first, first_shape) = self.parse_term()?;
        let mut acc = if lead_minus {
            match first_shape {
                TermShape::RealLit(v) => HoloExpr::constant(-v),
                TermShape::ImagLit(v) => HoloExpr::constant(Complex64::new(0.0, -v)),
                TermShape::Other => HoloExpr::neg(first),
            }
        } else {
            first
        };
        // Remembers when the accumulator is still a bare real literal, so
        // that `1+2i` and `0-0.3i` fold into one constant.
        let mut acc_real_lit = match first_shape {
            TermShape::RealLit(v) => Some(if lead_minus { -v } else { v }),
            _ => None,
        };
        loop {
            let negate = if self.eat(Tok::Plus) {
                false
            } else if self.eat(Tok::Minus) {
                true
            } else {
                break;
            };
            let (term, shape) = self.parse_term()?;
            if let (Some(re), TermShape::ImagLit(im)) = (acc_real_lit, shape) {
                let im = if negate { -im } else { im };
                acc = HoloExpr::constant(Complex64::new(re, im));
                acc_real_lit = None;
                continue;
            }
            acc_real_lit = None;
            acc = if negate {
                HoloExpr::sub(acc, term)
            } else {
                HoloExpr::add(acc, term)
            };
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<(HoloExpr, TermShape)> {
        let (mut acc, mut shape) = self.parse_factor()?;
        loop {
            if self.eat(Tok::Star) {
                let (rhs, _) = self.parse_factor()?;
                acc = HoloExpr::mul(acc, rhs);
            } else if self.eat(Tok::Slash) {
                let (rhs, _) = self.parse_factor()?;
                acc = HoloExpr::div(acc, rhs);
            } else {
                break;
            }
            shape = TermShape::Other;
        }
        Ok((acc, shape))
    }

    fn parse_factor(&mut self) -> Result<(HoloExpr, TermShape)> {
        let (base, shape) = self.parse_base()?;
        if self.eat(Tok::Caret) {
            let pos = self.pos();
            let k = match self.bump() {
                Some(Tok::Num { val, imag: false })
                    if val.fract() == 0.0 && val >= 0.0 && val <= u32::MAX as f64 =>
                {
                    val as u32
                }
                _ => {
                    return Err(syntax(pos, "exponent must be a nonnegative integer"));
                }
            };
            Ok((HoloExpr::int_pow(base, k), TermShape::Other))
        } else {
            Ok((base, shape))
        }
    }

    fn parse_base(&mut self) -> Result<(HoloExpr, TermShape)> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num { val, imag }) => {
                if imag {
                    Ok((
                        HoloExpr::constant(Complex64::new(0.0, val)),
                        TermShape::ImagLit(val),
                    ))
                } else {
                    Ok((HoloExpr::constant(val), TermShape::RealLit(val)))
                }
            }
            Some(Tok::Z) => Ok((HoloExpr::Z, TermShape::Other)),
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((e, TermShape::Other))
            }
            Some(Tok::Blaschke) => {
                self.expect(Tok::LParen, "`(` after blaschke")?;
                let a_pos = self.pos();
                let a_expr = self.parse_expr()?;
                self.expect(Tok::Comma, "`,` between blaschke arguments")?;
                let r_pos = self.pos();
                let r_expr = self.parse_expr()?;
                self.expect(Tok::RParen, "`)` after blaschke arguments")?;
                let a = a_expr
                    .as_constant()
                    .ok_or_else(|| syntax(a_pos, "blaschke argument must be constant"))?;
                let r = r_expr
                    .as_constant()
                    .ok_or_else(|| syntax(r_pos, "blaschke argument must be constant"))?;
                if r.im.abs() > 1e-12 * (1.0 + r.re.abs()) {
                    return Err(syntax(r_pos, "blaschke radius must be real"));
                }
                HoloExpr::blaschke(a, r.re)
                    .map(|e| (e, TermShape::Other))
                    .map_err(|e| syntax(pos, e.to_string()))
            }
            _ => Err(syntax(
                pos,
                "expected `z`, a number, `(` or `blaschke(`",
            )),
        }
    }
}

/// Parse an expression; total on the grammar, error (with byte position)
/// otherwise.
pub fn parse(text: &str) -> Result<HoloExpr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        i: 0,
        end: text.len(),
    };
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let e = p.parse_expr()?;
    if p.i != toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parse a constant expression (a complex literal, possibly with arithmetic).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let e = parse(text)?;
    e.as_constant()
        .ok_or_else(|| syntax(0, "expected a constant expression"))
}
