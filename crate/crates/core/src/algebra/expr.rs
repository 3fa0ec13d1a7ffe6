//! Product expressions: generator names, integer and unit scalars, `*`, `+`,
//! `-`, `^n` and parentheses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::units::Coef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductExpr {
    Gen(String),
    Scalar(Coef),
    Mul(Box<ProductExpr>, Box<ProductExpr>),
    Add(Box<ProductExpr>, Box<ProductExpr>),
    Neg(Box<ProductExpr>),
    Pow(Box<ProductExpr>, u32),
}

impl std::ops::Mul for ProductExpr {
    type Output = ProductExpr;

    fn mul(self, rhs: ProductExpr) -> ProductExpr {
        ProductExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Add for ProductExpr {
    type Output = ProductExpr;

    fn add(self, rhs: ProductExpr) -> ProductExpr {
        ProductExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ProductExpr {
    pub fn gen(name: &str) -> Self {
        ProductExpr::Gen(name.to_string())
    }

    pub fn scalar(c: impl Into<Coef>) -> Self {
        ProductExpr::Scalar(c.into())
    }

    /// Left-nested product of the named generators.
    pub fn word<S: AsRef<str>>(names: &[S]) -> Option<Self> {
        names
            .iter()
            .map(|n| ProductExpr::gen(n.as_ref()))
            .reduce(|a, b| a * b)
    }

    /// Every generator name mentioned, in order of first appearance.
    pub fn generator_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            ProductExpr::Gen(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            ProductExpr::Scalar(_) => {}
            ProductExpr::Mul(a, b) | ProductExpr::Add(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            ProductExpr::Neg(a) | ProductExpr::Pow(a, _) => a.collect_names(out),
        }
    }
}

impl fmt::Display for ProductExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductExpr::Gen(n) => f.write_str(n),
            ProductExpr::Scalar(c) => write!(f, "({c})"),
            ProductExpr::Mul(a, b) => write!(f, "({a}*{b})"),
            ProductExpr::Add(a, b) => write!(f, "({a} + {b})"),
            ProductExpr::Neg(a) => write!(f, "-{a}"),
            ProductExpr::Pow(a, n) => match **a {
                ProductExpr::Gen(_) => write!(f, "{a}^{n}"),
                _ => write!(f, "({a})^{n}"),
            },
        }
    }
}

impl FromStr for ProductExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: s.len(),
        };
        let e = parser.expr()?;
        match parser.peek() {
            None => Ok(e),
            Some((offset, _)) => Err(Error::Expr {
                offset,
                reason: "unexpected trailing input".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Eps,
    Ident(String),
    Star,
    Plus,
    Minus,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = match c {
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            chars.next();
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((i, Tok::Int(s[i..end].parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let word = &s[i..end];
            out.push((
                i,
                if word == "eps" {
                    Tok::Eps
                } else {
                    Tok::Ident(word.to_string())
                },
            ));
        } else {
            return Err(Error::Expr {
                offset: i,
                reason: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.pos).map(|(o, t)| (*o, t))
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |(o, _)| o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(_, t)| t) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, reason: &str) -> Result<T> {
        Err(Error::Expr {
            offset: self.offset(),
            reason: reason.to_string(),
        })
    }

    fn expr(&mut self) -> Result<ProductExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs + self.term()?;
            } else if self.eat(&Tok::Minus) {
                lhs = lhs + ProductExpr::Neg(Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ProductExpr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            lhs = lhs * self.factor()?;
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ProductExpr> {
        if self.eat(&Tok::Minus) {
            return Ok(ProductExpr::Neg(Box::new(self.factor()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            return match self.peek() {
                Some((_, Tok::Int(n))) => {
                    let n = u32::try_from(n.clone()).or_else(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    Ok(ProductExpr::Pow(Box::new(base), n))
                }
                _ => self.error("expected a nonnegative integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ProductExpr> {
        let Some((_, tok)) = self.peek() else {
            return self.error("unexpected end of expression");
        };
        let out = match tok.clone() {
            Tok::Int(n) => ProductExpr::Scalar(Coef::int(n)),
            Tok::Eps => ProductExpr::Scalar(Coef::eps()),
            Tok::Ident(name) => ProductExpr::Gen(name),
            Tok::Open => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::Close) {
                    return self.error("expected ')'");
                }
                return Ok(inner);
            }
            _ => return self.error("expected a generator, scalar or '('"),
        };
        self.pos += 1;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ProductExpr {
        s.parse().unwrap()
    }

    #[test]
    fn precedence() {
        let e = p("(1-eps)*eta*eta + 2");
        let expected = (ProductExpr::scalar(1) + ProductExpr::Neg(Box::new(ProductExpr::Scalar(Coef::eps()))))
            * ProductExpr::gen("eta")
            * ProductExpr::gen("eta")
            + ProductExpr::scalar(2);
        assert_eq!(e, expected);
        assert_eq!(
            p("-tau*nu^2"),
            ProductExpr::Neg(Box::new(ProductExpr::gen("tau"))) * ProductExpr::Pow(Box::new(ProductExpr::gen("nu")), 2)
        );
    }

    #[test]
    fn names() {
        assert_eq!(p("eta_top*tau0 + sigma_top*rho").generator_names(), [
            "eta_top",
            "tau0",
            "sigma_top",
            "rho"
        ]);
    }

    #[test]
    fn errors_carry_offsets() {
        match "eta * * nu".parse::<ProductExpr>() {
            Err(Error::Expr { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!("(eta".parse::<ProductExpr>().is_err());
        assert!("eta^x".parse::<ProductExpr>().is_err());
        assert!("eta nu".parse::<ProductExpr>().is_err());
        assert!("eta % nu".parse::<ProductExpr>().is_err());
        assert!("".parse::<ProductExpr>().is_err());
    }

    #[test]
    fn display_reparses() {
        for s in ["(1-eps)*eta^2", "-tau*nu + eps*nu*tau", "2*(rho - eta)"] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e);
        }
    }
}
