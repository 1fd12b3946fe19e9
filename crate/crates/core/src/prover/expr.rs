//! A parser for linear constraints over named variables.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! constraint := expr ("<=" | "<" | ">=" | ">" | "=") expr
//! expr       := term (("+" | "-") term)*
//! term       := unary (("*" | "/") unary)*
//! unary      := "-" unary | primary
//! primary    := integer [ident] | ident | "(" expr ")"
//! ```
//!
//! `2m` is read as `2*m`. Products must have a constant side and divisors
//! must be non-zero constants.

use num_traits::{One, Zero};

use super::Relation;
use crate::error::ParseError;
use crate::rational::Q;

#[derive(Clone, Debug)]
struct Linear {
    coeffs: Vec<Q>,
    constant: Q,
}

impl Linear {
    fn constant(width: usize, c: Q) -> Self {
        Linear { coeffs: vec![Q::zero(); width], constant: c }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn scale(mut self, c: &Q) -> Self {
        for a in &mut self.coeffs {
            *a *= c;
        }
        self.constant *= c;
        self
    }

    fn add(mut self, other: &Linear, sign: &Q) -> Self {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * sign;
        }
        self.constant += &other.constant * sign;
        self
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    source: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self) -> ParseError {
        ParseError::Expression(self.source.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Linear, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let sign = if op == '+' { Q::one() } else { -Q::one() };
            acc = acc.add(&rhs, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Linear, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                if rhs.is_constant() {
                    acc.scale(&rhs.constant)
                } else if acc.is_constant() {
                    rhs.scale(&acc.constant)
                } else {
                    return Err(self.error());
                }
            } else {
                if !rhs.is_constant() || rhs.constant.is_zero() {
                    return Err(self.error());
                }
                acc.scale(&(Q::one() / &rhs.constant))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Linear, ParseError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.scale(&-Q::one()));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Linear, ParseError> {
        let width = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let value = Q::from_integer(digits.parse().map_err(|_| self.error())?);
                if self.peek().is_some_and(is_ident_start) {
                    let var = self.ident()?;
                    return Ok(var.scale(&value));
                }
                Ok(Linear::constant(width, value))
            }
            Some(c) if is_ident_start(c) => self.ident(),
            _ => Err(self.error()),
        }
    }

    fn ident(&mut self) -> Result<Linear, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let index = self.vars.iter().position(|v| *v == name).ok_or_else(|| self.error())?;
        let mut out = Linear::constant(self.vars.len(), Q::zero());
        out.coeffs[index] = Q::one();
        Ok(out)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn parse_side(text: &str, vars: &[String], source: &str) -> Result<Linear, ParseError> {
    let mut parser = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, vars, source };
    let out = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error());
    }
    Ok(out)
}

/// Parse into `coeffs · v  relation  rhs`.
pub(super) fn parse_constraint(text: &str, vars: &[String]) -> Result<(Vec<Q>, Relation, Q), ParseError> {
    let bad = || ParseError::Expression(text.to_string());
    let ops = ["<=", ">=", "<", ">", "="];
    let (pos, op) = ops
        .iter()
        .filter_map(|op| text.find(op).map(|p| (p, *op)))
        .min_by_key(|(p, op)| (*p, std::cmp::Reverse(op.len())))
        .ok_or_else(bad)?;
    let (lhs, rhs) = (&text[..pos], &text[pos + op.len()..]);
    if ops.iter().any(|o| rhs.contains(o)) {
        return Err(bad());
    }
    let left = parse_side(lhs, vars, text)?;
    let right = parse_side(rhs, vars, text)?;
    // left - right  op  0
    let diff = left.add(&right, &-Q::one());
    let (diff, relation) = match op {
        "<=" => (diff, Relation::Le),
        "<" => (diff, Relation::Lt),
        ">=" => (diff.scale(&-Q::one()), Relation::Le),
        ">" => (diff.scale(&-Q::one()), Relation::Lt),
        _ => (diff, Relation::Eq),
    };
    Ok((diff.coeffs, relation, -diff.constant))
}
