//! Expression language for slice functions.
//!
//! Literals are decimal numbers, `x`, `J` (product mode only) and the units
//! `i`, `j`, `k`. Operators by decreasing precedence: `^` (integer exponent,
//! right associative), unary `-`/`+`, `*` and `/` (left associative), binary
//! `+` and `-`. `*` is the *-product, which is ordinary multiplication when
//! either side is slice preserving. `a/b` is `a*b^{-*}` and requires `b`
//! invertible.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use slicesyl::{AlgebraError, DomainMode, ScalarElem, SliceFn};
use thiserror::Error;

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 256;

/// 1-based position in the source text.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, PartialEq, Debug, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

#[derive(Clone, PartialEq, Debug, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("malformed number {0:?}")]
    BadNumber(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("J is not available in slice mode")]
    JInSliceMode,
    #[error("exponent must be an integer constant")]
    BadExponent,
    #[error("exponent magnitude exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by a zero divisor")]
    DivisionByZeroDivisor,
    #[error("{0}")]
    Algebra(AlgebraError),
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(BigRational),
    Var(char),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number {q}"),
            Tok::Var(c) => write!(f, "{c:?}"),
            Tok::Op(c) => write!(f, "{c:?}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() || d == '.' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let q = decimal(&s).ok_or(ParseError { pos, kind: ParseErrorKind::BadNumber(s) })?;
            out.push((Tok::Num(q), pos));
            continue;
        }
        let tok = match c {
            'x' | 'J' | 'i' | 'j' | 'k' => Tok::Var(c),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => Tok::Op(c),
            _ => return Err(ParseError { pos, kind: ParseErrorKind::BadChar(c) }),
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

/// `123` or `12.5`, exactly.
fn decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    Some(BigRational::new(n, BigInt::from(10u32).pow(frac.len() as u32)))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    mode: DomainMode,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let (t, pos) = self.peek();
        ParseError { pos: *pos, kind: ParseErrorKind::Unexpected { expected, found: t.to_string() } }
    }

    fn expr(&mut self, min_bp: u8) -> Result<SliceFn, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, pos) = match self.peek() {
                (Tok::Op(c @ ('+' | '-' | '*' | '/' | '^')), pos) => (*c, *pos),
                _ => break,
            };
            let (lbp, rbp) = match op {
                '+' | '-' => (1, 2),
                '*' | '/' => (3, 4),
                _ => (7, 6),
            };
            if lbp < min_bp {
                break;
            }
            self.next();
            let rhs_pos = self.peek().1;
            let rhs = self.expr(rbp)?;
            lhs = match op {
                '+' => &lhs + &rhs,
                '-' => &lhs - &rhs,
                '*' => &lhs * &rhs,
                '/' => divide(&lhs, &rhs, pos)?,
                _ => power(&lhs, &rhs, rhs_pos)?,
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<SliceFn, ParseError> {
        let mode = self.mode;
        let (tok, pos) = self.next();
        Ok(match tok {
            Tok::Num(q) => SliceFn::from_scalar(ScalarElem::from_rational(q, mode)),
            Tok::Var('x') => SliceFn::from_scalar(ScalarElem::x(mode)),
            Tok::Var('J') => match ScalarElem::j(mode) {
                Ok(j) => SliceFn::from_scalar(j),
                Err(_) => return Err(ParseError { pos, kind: ParseErrorKind::JInSliceMode }),
            },
            Tok::Var('i') => SliceFn::i(mode),
            Tok::Var('j') => SliceFn::j(mode),
            Tok::Var('k') => SliceFn::k(mode),
            Tok::Op('-') => -self.expr(5)?,
            Tok::Op('+') => self.expr(5)?,
            Tok::Op('(') => {
                let inner = self.expr(0)?;
                if self.peek().0 != Tok::Op(')') {
                    return Err(self.unexpected("')'"));
                }
                self.next();
                inner
            }
            _ => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Unexpected { expected: "an operand", found: tok.to_string() },
                });
            }
        })
    }
}

fn divide(a: &SliceFn, b: &SliceFn, pos: Pos) -> Result<SliceFn, ParseError> {
    if b.is_zero() {
        return Err(ParseError { pos, kind: ParseErrorKind::DivisionByZero });
    }
    if b.is_central() {
        let s = b.real_part().invert().map_err(|e| ParseError { pos, kind: ParseErrorKind::Algebra(e) })?;
        return Ok(a.scale(&s));
    }
    match b.star_inverse() {
        Ok(inv) => Ok(a * &inv),
        Err(_) => Err(ParseError { pos, kind: ParseErrorKind::DivisionByZeroDivisor }),
    }
}

fn power(base: &SliceFn, e: &SliceFn, pos: Pos) -> Result<SliceFn, ParseError> {
    let bad = |kind| ParseError { pos, kind };
    let q = if e.is_central() { e.real_part().as_rational() } else { None };
    let q = q.filter(|q| q.is_integer()).ok_or(bad(ParseErrorKind::BadExponent))?;
    let n: i64 = q.to_integer().try_into().map_err(|_| bad(ParseErrorKind::ExponentTooLarge))?;
    if n.abs() > MAX_EXPONENT {
        return Err(bad(ParseErrorKind::ExponentTooLarge));
    }
    let base = if n < 0 {
        divide(&SliceFn::one(base.mode()), base, pos)?
    } else {
        base.clone()
    };
    if base.is_central() {
        return Ok(SliceFn::from_scalar(base.real_part().pow(n.abs())));
    }
    let (mut acc, mut sq, mut k) = (SliceFn::one(base.mode()), base, n.unsigned_abs());
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    Ok(acc)
}

/// Parses one expression.
pub fn parse(text: &str, mode: DomainMode) -> Result<SliceFn, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, mode };
    let f = p.expr(0)?;
    if p.peek().0 != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Parses one expression per nonblank line; `#` starts a comment. Error
/// positions refer to the whole text.
pub fn parse_lines(text: &str, mode: DomainMode) -> Result<Vec<SliceFn>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let f = parse(body, mode).map_err(|mut e| {
            e.pos.line = n + 1;
            e
        })?;
        out.push(f);
    }
    Ok(out)
}
