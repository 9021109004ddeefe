//! Expressions for bracket values: polynomials in `d` (∂) and `x` (λ)
//! multiplying generator names, e.g. `(d + 2*x) L - 3/2 G`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (['*'] unary)*        juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := atom ['^' INT]
//! atom    := NUMBER | NUMBER '/' NUMBER | IDENT | '(' sum ')'
//! ```
//!
//! A generator may only appear as the rightmost factor of a product, so
//! every expression is linear in the generators.

use lcsk_core::poly::{Rat, SPoly, Var};
use lcsk_core::ConformalElement;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// Byte offset into the expression.
    pub offset: usize,
    pub message: String,
}

impl ExprError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ExprError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: num_bigint::BigInt = src[start..i].parse().expect("digits");
                let mut den = num_bigint::BigInt::from(1);
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let ds = i + 1;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = src[ds..i].parse().expect("digits");
                    if den.is_zero() {
                        return Err(ExprError::new(ds, "zero denominator"));
                    }
                }
                out.push((start, Tok::Num(Rat::new(num, den))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            '/' => return Err(ExprError::new(i, "'/' is only allowed inside a rational literal such as 3/2")),
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ExprError::new(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

/// Value of a subexpression: a plain polynomial or a generator combination.
#[derive(Clone, Debug)]
enum Value {
    Scalar(SPoly),
    Element(ConformalElement),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    generators: &'a [String],
    vars: &'a [Var],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn add(&self, at: usize, a: Value, b: Value, negate: bool) -> Result<Value, ExprError> {
        let b = if negate { neg(b) } else { b };
        match (a, b) {
            (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(&p + &q)),
            (Value::Element(x), Value::Element(y)) => Ok(Value::Element(&x + &y)),
            (Value::Scalar(p), Value::Element(y)) | (Value::Element(y), Value::Scalar(p)) => {
                if p.is_zero() {
                    Ok(Value::Element(y))
                } else {
                    Err(ExprError::new(at, "cannot add a polynomial to a generator term"))
                }
            }
        }
    }

    fn sum(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.product()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Tok::Plus | Tok::Minus => {
                    let negate = self.bump() == Tok::Minus;
                    let rhs = self.product()?;
                    acc = self.add(at, acc, rhs, negate)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn product(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Value::Scalar(p), Value::Scalar(q)) => Value::Scalar(&p * &q),
                (Value::Scalar(p), Value::Element(y)) => Value::Element(y.mul_poly(&p)),
                (Value::Element(_), _) => {
                    return Err(ExprError::new(at, "a generator must be the rightmost factor of a product"))
                }
            };
        }
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.bump();
        let exp_at = self.offset();
        let e = match self.bump() {
            Tok::Num(n) if n.is_integer() => n
                .to_integer()
                .try_into()
                .map_err(|_| ExprError::new(exp_at, "exponent too large"))?,
            _ => return Err(ExprError::new(exp_at, "expected a non-negative integer exponent")),
        };
        let e: u32 = e;
        if e > 64 {
            return Err(ExprError::new(exp_at, "exponent too large"));
        }
        match base {
            Value::Scalar(p) => Ok(Value::Scalar(p.pow(e))),
            Value::Element(_) => Err(ExprError::new(at, "cannot raise a generator to a power")),
        }
    }

    fn atom(&mut self) -> Result<Value, ExprError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(Value::Scalar(SPoly::constant(n))),
            Tok::Ident(name) => {
                if let Some(i) = self.generators.iter().position(|g| *g == name) {
                    return Ok(Value::Element(ConformalElement::generator(self.generators.len(), i)));
                }
                match Var::from_name(&name) {
                    Some(v) if self.vars.contains(&v) => Ok(Value::Scalar(SPoly::var(v))),
                    Some(_) => Err(ExprError::new(at, format!("variable '{name}' is not allowed here"))),
                    None => Err(ExprError::new(at, format!("unknown generator '{name}'"))),
                }
            }
            Tok::LParen => {
                let v = self.sum()?;
                let close = self.offset();
                if self.bump() != Tok::RParen {
                    return Err(ExprError::new(close, "expected ')'"));
                }
                Ok(v)
            }
            Tok::End => Err(ExprError::new(at, "unexpected end of expression")),
            t => Err(ExprError::new(at, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "name",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of expression",
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-&p),
        Value::Element(x) => Value::Element(-&x),
    }
}

/// Parse a combination of `generators` whose coefficients are polynomials
/// in `vars`. The constant `0` denotes the zero element.
pub fn parse_element(src: &str, generators: &[String], vars: &[Var]) -> Result<ConformalElement, ExprError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        generators,
        vars,
    };
    let v = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(ExprError::new(p.offset(), format!("unexpected {}", describe(p.peek()))));
    }
    match v {
        Value::Element(x) => Ok(x),
        Value::Scalar(s) if s.is_zero() => Ok(ConformalElement::zero(generators.len())),
        Value::Scalar(_) => Err(ExprError::new(0, "expected a combination of generators")),
    }
}

/// Canonical text of an element, readable by [`parse_element`].
pub fn print_element(x: &ConformalElement, generators: &[String]) -> String {
    x.display(generators)
}
