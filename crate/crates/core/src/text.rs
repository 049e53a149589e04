//! The shared textual format.
//!
//! ```text
//! tower   := Q | quadext(tower, expr) | euclid(tower [, signs]) | laurent(tower)
//! expr    := literals p/q, t, i, j, k, sqrt(expr), + - * / ^int, parentheses
//! form    := form(tower; expr, ...)
//! algebra := quat(tower; expr, expr)
//! sherm   := sherm(algebra; expr, ...)
//! invol   := gamma | int_gamma(expr)
//! ```
//!
//! `signs` picks the designated ordering of a hull by the signs of its
//! square roots, bottom-up (`+-` means the first root positive, the second
//! negative). It defaults to the first ordering.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::field::{Element, FieldTower};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

/// Parsed arithmetic expression; evaluated later in a field or algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Sqrt(Box<Expr>, usize),
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Parser> {
        let mut toks = Vec::new();
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::from_str(&src[start..i]).map_err(|e| err(start, e.to_string()))?;
                toks.push((start, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            } else if "()+-*/^,;".contains(c) {
                toks.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(err(i, format!("unexpected character `{c}`")));
            }
        }
        Ok(Parser {
            toks,
            pos: 0,
            end: src.len(),
        })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(err(self.here(), format!("expected `{c}`")))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(name)
            }
            _ => Err(err(self.here(), "expected identifier")),
        }
    }

    pub(crate) fn expect_keyword(&mut self, word: &str) -> Result<()> {
        let at = self.here();
        let name = self.expect_ident()?;
        if name == word {
            Ok(())
        } else {
            Err(err(at, format!("expected `{word}`, found `{name}`")))
        }
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(err(self.here(), "trailing input"))
        }
    }

    pub(crate) fn tower(&mut self) -> Result<FieldTower> {
        let at = self.here();
        let name = self.expect_ident()?;
        match name.as_str() {
            "Q" => Ok(FieldTower::rationals()),
            "quadext" => {
                self.expect_sym('(')?;
                let base = self.tower()?;
                self.expect_sym(',')?;
                let radicand = eval_in_field(&self.expr()?, &base)?;
                self.expect_sym(')')?;
                base.quad_ext(radicand)
            }
            "euclid" => {
                self.expect_sym('(')?;
                let base = self.tower()?;
                let mut signs = String::new();
                if self.eat_sym(',') {
                    while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
                        signs.push(c);
                        self.pos += 1;
                    }
                }
                self.expect_sym(')')?;
                let orderings = base.orderings();
                let chosen = if signs.is_empty() {
                    orderings.into_iter().next()
                } else {
                    orderings.into_iter().find(|p| p.sqrt_signs() == signs)
                };
                let ordering = chosen
                    .ok_or_else(|| err(at, format!("no ordering of {base} with signs `{signs}`")))?;
                base.euclidean_hull(ordering)
            }
            "laurent" => {
                self.expect_sym('(')?;
                let base = self.tower()?;
                self.expect_sym(')')?;
                base.laurent()
            }
            other => Err(err(at, format!("unknown field constructor `{other}`"))),
        }
    }

    /// Comma-separated expressions up to (not including) a closing `)`.
    pub(crate) fn expr_list(&mut self) -> Result<Vec<Expr>> {
        let mut out = Vec::new();
        if self.peek_sym(')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat_sym(',') {
                return Ok(out);
            }
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let negative = self.eat_sym('-');
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let n: i64 = n
                    .try_into()
                    .map_err(|_| err(at, "exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
            }
            _ => Err(err(at, "expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(Expr::Sqrt(Box::new(e), at))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Ident { name, pos: at })
            }
            _ => Err(err(at, "expected expression")),
        }
    }
}

/// Evaluates an expression in a field; `t` names the Laurent variable.
pub fn eval_in_field(expr: &Expr, field: &FieldTower) -> Result<Element> {
    Ok(match expr {
        Expr::Int(n) => field.from_rational(&BigRational::from_integer(n.clone())),
        Expr::Ident { name, pos } => match name.as_str() {
            "t" if field.is_laurent() => field.t()?,
            _ => return Err(err(*pos, format!("`{name}` is not an element of {field}"))),
        },
        Expr::Neg(e) => eval_in_field(e, field)?.neg(),
        Expr::Add(a, b) => eval_in_field(a, field)?.add(&eval_in_field(b, field)?),
        Expr::Sub(a, b) => eval_in_field(a, field)?.sub(&eval_in_field(b, field)?),
        Expr::Mul(a, b) => field.mul(&eval_in_field(a, field)?, &eval_in_field(b, field)?),
        Expr::Div(a, b) => field.div(&eval_in_field(a, field)?, &eval_in_field(b, field)?)?,
        Expr::Pow(a, n) => field.pow(&eval_in_field(a, field)?, *n)?,
        Expr::Sqrt(a, pos) => {
            let x = eval_in_field(a, field)?;
            if x.is_zero() {
                x
            } else {
                field.square_root(&x)?.ok_or_else(|| {
                    err(
                        *pos,
                        format!("{} has no representable square root in {field}", field.format(&x)),
                    )
                })?
            }
        }
    })
}

impl FieldTower {
    /// Parses and evaluates an element expression such as `1 + t*sqrt(2)`.
    pub fn parse(&self, src: &str) -> Result<Element> {
        let mut p = Parser::new(src)?;
        let e = p.expr()?;
        p.finish()?;
        eval_in_field(&e, self)
    }
}

impl FromStr for FieldTower {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<FieldTower> {
        let mut p = Parser::new(s)?;
        let f = p.tower()?;
        p.finish()?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn towers_round_trip() {
        for text in [
            "Q",
            "quadext(Q, 2)",
            "laurent(quadext(Q, 2))",
            "laurent(euclid(Q))",
            "euclid(quadext(Q, 2), -)",
            "laurent(euclid(quadext(quadext(Q, 2), 3), +-))",
            "quadext(quadext(Q, 2), 1 + sqrt(2))",
        ] {
            let f: FieldTower = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
    }

    #[test]
    fn canonicalizes_quadext_over_laurent() {
        let f: FieldTower = "quadext(laurent(Q), 2)".parse().unwrap();
        assert_eq!(f.to_string(), "laurent(quadext(Q, 2))");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "laurent(Q".parse::<FieldTower>(),
            Err(AlgebraError::Parse { .. })
        ));
        assert!(matches!(
            "foo(Q)".parse::<FieldTower>(),
            Err(AlgebraError::Parse { .. })
        ));
        let q = FieldTower::rationals();
        assert!(matches!(q.parse("t"), Err(AlgebraError::Parse { .. })));
        assert!(matches!(q.parse("sqrt(2)"), Err(AlgebraError::Parse { .. })));
        assert_eq!(q.parse("1/0"), Err(AlgebraError::DivisionByZero));
        assert!(matches!(q.parse("1 +"), Err(AlgebraError::Parse { .. })));
        assert!(matches!(q.parse("1 $ 2"), Err(AlgebraError::Parse { .. })));
    }

    #[test]
    fn arithmetic_expressions() {
        let f: FieldTower = "laurent(Q)".parse().unwrap();
        assert_eq!(f.parse("(1 + t)*(1 - t)").unwrap(), f.parse("1 - t^2").unwrap());
        assert_eq!(f.parse("t^-1 * t").unwrap(), f.one());
        assert_eq!(f.parse("-2^2").unwrap(), f.from_int(-4));
    }
}
