//! A small expression parser for polynomials and rational functions.
//!
//! Grammar: `+ - * / ^` with parentheses, integer literals, and symbol names.
//! This accepts the crate's own canonical `Display` output, so text
//! serialization round-trips.

use num_bigint::BigInt;

use super::{BigRational, ExactError, MultiPoly, RatFunc};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
}

fn lex(s: &str) -> Result<Vec<Tok>, ExactError> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' | '−' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LPar);
            }
            ')' => {
                it.next();
                out.push(Tok::RPar);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(n.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Sym(n));
            }
            other => return Err(ExactError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, ExactError> {
        let mut neg = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = !neg;
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ExactError::Parse("exponent too large".into()))?;
                    let mut acc = RatFunc::one();
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    base = acc;
                }
                _ => return Err(ExactError::Parse("expected integer exponent".into())),
            }
        }
        Ok(if neg { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<RatFunc, ExactError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(RatFunc::from_rat(BigRational::from_integer(n))),
            Some(Tok::Sym(s)) => Ok(RatFunc::var(&s)),
            Some(Tok::LPar) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RPar) => Ok(e),
                    _ => Err(ExactError::Parse("expected `)`".into())),
                }
            }
            other => Err(ExactError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a rational-function expression.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, ExactError> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse("trailing input".into()));
    }
    Ok(e)
}

/// Parses an expression that must reduce to a polynomial.
pub fn parse_poly(s: &str) -> Result<MultiPoly, ExactError> {
    let f = parse_ratfunc(s)?;
    if f.den() == &MultiPoly::one() {
        Ok(f.num().clone())
    } else {
        Err(ExactError::Parse(format!("`{s}` is not a polynomial")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_papers_shapes() {
        let p =
            parse_poly("3*a^6 - 18*a^5 + 3*a^4 + 12*a^3 + 9*a^2 + 6*a + 1").unwrap();
        assert_eq!(p.total_degree(), 6);
        let f = parse_ratfunc("-48*pi*a*(a^4 - 2*a^3 - 8*a^2 + 2*a - 1)/(3*a^6 - 18*a^5 + 3*a^4 + 12*a^3 + 9*a^2 + 6*a + 1)").unwrap();
        assert_eq!(f.factor_out("pi").0, 1);
    }

    #[test]
    fn double_negation_and_powers() {
        assert_eq!(
            parse_ratfunc("--a^2").unwrap(),
            parse_ratfunc("a*a").unwrap()
        );
        assert_eq!(
            parse_ratfunc("2^3").unwrap(),
            parse_ratfunc("8").unwrap()
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("a + $").is_err());
        assert!(parse_ratfunc("(a").is_err());
        assert!(parse_ratfunc("a b").is_err());
    }
}
