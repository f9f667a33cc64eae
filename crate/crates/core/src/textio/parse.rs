//! Recursive-descent parser for polynomials and one-forms.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' nat)?
//! atom   := int ('/' nat)? | 'z' digit | 'dz' digit | 'd' '(' expr ')' | '(' expr ')' | '-' factor
//! ```

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{Polynomial, Scalar, MAX_VARS};
use crate::forms::OneForm;

/// A parse failure with a one-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Token kinds that would have been accepted here; empty for semantic errors.
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Dz(usize),
    D,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Var(i) => format!("`z{}`", i + 1),
            Tok::Dz(i) => format!("`dz{}`", i + 1),
            Tok::D => "`d`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>, expected: &[&'static str]) -> ParseError {
    ParseError { line: pos.line, column: pos.column, message: message.into(), expected: expected.to_vec() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    let var_index = |c: Option<&char>, pos: Pos, what: &str| -> Result<usize, ParseError> {
        match c.and_then(|c| c.to_digit(10)) {
            Some(d) if (1..=MAX_VARS as u32).contains(&d) => Ok(d as usize - 1),
            _ => Err(err(pos, format!("`{what}` must be followed by an index 1..{MAX_VARS}"), &["variable index"])),
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let mut width = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '0'..='9' => {
                let start = i;
                while i + width < chars.len() && chars[i + width].is_ascii_digit() {
                    width += 1;
                }
                let digits: String = chars[start..start + width].iter().collect();
                Some(Tok::Int(digits.parse().expect("ascii digits")))
            }
            'z' => {
                width = 2;
                Some(Tok::Var(var_index(chars.get(i + 1), pos, "z")?))
            }
            'd' if chars.get(i + 1) == Some(&'z') => {
                width = 3;
                let idx = var_index(chars.get(i + 2), pos, "dz")?;
                Some(Tok::Dz(idx))
            }
            'd' => Some(Tok::D),
            other => {
                return Err(err(pos, format!("unexpected character `{other}`"), &["number", "variable", "operator"]));
            }
        };
        if let Some(t) = tok {
            out.push((t, pos));
        }
        i += width;
        column += width;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

/// A parsed value: a polynomial or a one-form, both in `MAX_VARS` variables until narrowed.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Poly(Polynomial),
    Form(Vec<Polynomial>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Form(_) => "1-form",
        }
    }
}

const N: usize = MAX_VARS;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    /// Highest variable or differential index seen, plus one.
    used: usize,
}

const FACTOR_START: &[&str] = &["number", "variable", "differential", "`d(`", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Var(_) | Tok::Dz(_) | Tok::D | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let negate = match self.peek() {
            Tok::Plus => {
                self.bump();
                false
            }
            Tok::Minus => {
                self.bump();
                true
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = neg(acc);
        }
        loop {
            let sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.term()?;
            let rhs = if sign < 0 { neg(rhs) } else { rhs };
            acc = add(acc, rhs).map_err(|m| err(pos, m, &[]))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if matches!(self.peek(), Tok::Star) {
                self.bump();
            } else if !self.starts_factor() {
                break;
            }
            let rhs = self.factor()?;
            acc = mul(acc, rhs).map_err(|m| err(pos, m, &[]))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let Tok::Int(n) = self.bump() else {
                return Err(err(pos, "exponent must be a nonnegative integer", &["number"]));
            };
            let e: u32 = u32::try_from(&n).ok().filter(|&e| e <= u16::MAX as u32).ok_or_else(|| err(pos, "exponent overflow", &[]))?;
            return match base {
                Value::Poly(p) => p.pow(e).map(Value::Poly).map_err(|e| err(pos, e.to_string(), &[])),
                Value::Form(_) if e == 1 => Ok(base),
                Value::Form(_) => Err(err(pos, "a 1-form cannot be raised to a power", &[])),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let mut value = Scalar::from_bigint(n);
                if matches!(self.peek(), Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    let Tok::Int(d) = self.bump() else {
                        return Err(err(dpos, "a denominator must be a positive integer", &["number"]));
                    };
                    let q = Scalar::from_ratio(BigInt::from(1), d).map_err(|_| err(dpos, "zero denominator", &[]))?;
                    value = &value * &q;
                }
                Ok(Value::Poly(Polynomial::constant(N, value)))
            }
            Tok::Var(i) => {
                self.used = self.used.max(i + 1);
                Ok(Value::Poly(Polynomial::var(N, i).expect("index below MAX_VARS")))
            }
            Tok::Dz(i) => {
                self.used = self.used.max(i + 1);
                let mut slots = vec![Polynomial::zero(N); N];
                slots[i] = Polynomial::one(N);
                Ok(Value::Form(slots))
            }
            Tok::D => {
                self.expect(Tok::LParen, "`(` after `d`")?;
                let inner_pos = self.pos();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                match inner {
                    Value::Poly(p) => Ok(Value::Form(p.gradient())),
                    Value::Form(_) => Err(err(inner_pos, "d of a 1-form is a 2-form, which is not an accepted value", &[])),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Minus => Ok(neg(self.factor()?)),
            other => Err(err(pos, format!("unexpected {}", other.describe()), FACTOR_START)),
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        let pos = self.pos();
        let got = self.bump();
        if got == tok {
            Ok(())
        } else {
            Err(err(pos, format!("unexpected {}", got.describe()), &[what]))
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(-p),
        Value::Form(f) => Value::Form(f.into_iter().map(|c| -c).collect()),
    }
}

fn add(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
        (Value::Form(f), Value::Form(g)) => Ok(Value::Form(f.iter().zip(&g).map(|(x, y)| x + y).collect())),
        (a, b) => Err(format!("cannot add a {} and a {}", a.kind(), b.kind())),
    }
}

fn mul(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => p.try_mul(&q).map(Value::Poly).map_err(|e| e.to_string()),
        (Value::Poly(p), Value::Form(f)) | (Value::Form(f), Value::Poly(p)) => {
            f.iter().map(|c| c.try_mul(&p)).collect::<Result<_, _>>().map(Value::Form).map_err(|e| e.to_string())
        }
        (Value::Form(_), Value::Form(_)) => Err("product of two 1-forms is not a 1-form".into()),
    }
}

fn parse_value(text: &str) -> Result<(Value, usize, Pos), ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, used: 0 };
    if matches!(p.peek(), Tok::End) {
        return Err(err(p.pos(), "empty input", FACTOR_START));
    }
    let v = p.expr()?;
    if !matches!(p.peek(), Tok::End) {
        let mut expected = vec!["`+`", "`-`", "`*`", "end of input"];
        if matches!(p.peek(), Tok::RParen) {
            expected.retain(|e| *e != "`*`");
        }
        return Err(err(p.pos(), format!("unexpected {}", p.peek().describe()), &expected));
    }
    Ok((v, p.used, p.toks[0].1))
}

fn narrow(p: &Polynomial, nvars: usize, pos: Pos) -> Result<Polynomial, ParseError> {
    p.with_nvars(nvars).map_err(|_| err(pos, format!("expression uses variables beyond z{nvars}"), &[]))
}

fn resolve_ambient(requested: Option<usize>, used: usize, pos: Pos) -> Result<usize, ParseError> {
    match requested {
        Some(n) if n == 0 || n > MAX_VARS => Err(err(pos, format!("ambient must have 1..{MAX_VARS} variables"), &[])),
        Some(n) if n < used => Err(err(pos, format!("expression uses z{used} or dz{used} but the ambient has {n} variables"), &[])),
        Some(n) => Ok(n),
        None => Ok(used.max(1)),
    }
}

/// Parse a polynomial. With `nvars = None` the ambient is the highest variable index used.
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<Polynomial, ParseError> {
    let (v, used, pos) = parse_value(text)?;
    let n = resolve_ambient(nvars, used, pos)?;
    match v {
        Value::Poly(p) => narrow(&p, n, pos),
        Value::Form(_) => Err(err(pos, "expected a polynomial, found a 1-form", &[])),
    }
}

/// Parse a one-form. The literal `0` is the zero form.
pub fn parse_one_form(text: &str, nvars: Option<usize>) -> Result<OneForm, ParseError> {
    let (v, used, pos) = parse_value(text)?;
    let n = resolve_ambient(nvars, used, pos)?;
    match v {
        Value::Form(slots) => {
            if let Some(bad) = slots[n..].iter().position(|c| !c.is_zero()) {
                return Err(err(pos, format!("form uses dz{} outside the ambient", n + bad + 1), &[]));
            }
            let coeffs = slots[..n].iter().map(|c| narrow(c, n, pos)).collect::<Result<_, _>>()?;
            Ok(OneForm::new(coeffs).expect("narrowed coefficients"))
        }
        Value::Poly(p) if p.is_zero() => Ok(OneForm::zero(n)),
        Value::Poly(_) => Err(err(pos, "expected a 1-form, found a polynomial", &[])),
    }
}
