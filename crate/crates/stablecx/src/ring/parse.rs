//! Parser for ring elements given as strings in fixture files: "2", "-1/3",
//! "x+1", "x*y", "2*x^2-3".

use super::{Elem, MPoly, Poly, Ring, RingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|m| m.checked_add(chars[i] as i64 - '0' as i64))
                        .ok_or_else(|| Error::parse("integer literal overflow"))?;
                    i += 1;
                }
                out.push(Tok::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(Error::parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = self.ring.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = self.ring.sub(&acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    acc = self.ring.mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    acc = self
                        .ring
                        .div_exact(&acc, &rhs)
                        .ok_or_else(|| Error::parse("division is not exact in this ring"))?;
                }
                // implicit multiplication: 2x, x(y+1)
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = self.ring.mul(&acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let e = match self.next() {
                Some(Tok::Int(n)) if n >= 0 => n as u64,
                _ => return Err(Error::parse("exponent must be a nonnegative integer")),
            };
            let mut acc = self.ring.one();
            for _ in 0..e {
                acc = self.ring.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(self.ring.from_i64(n)),
            Some(Tok::Minus) => {
                let inner = self.factor()?;
                Ok(self.ring.neg(&inner))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse("missing closing parenthesis")),
                }
            }
            Some(Tok::Ident(name)) => self.resolve(&name),
            other => Err(Error::parse(format!("unexpected token {other:?}"))),
        }
    }

    fn resolve(&self, name: &str) -> Result<Elem> {
        match &self.ring.kind {
            RingKind::UnivariatePoly { base, var } => {
                if name == var {
                    Ok(Elem::Poly(Poly::var(base)))
                } else {
                    Err(Error::parse(format!("unknown variable '{name}'")))
                }
            }
            RingKind::QuotientAlgebra(d) => {
                if let Some(i) = d.basis.iter().position(|b| b == name) {
                    let mut v = vec![d.base.zero(); d.dim()];
                    v[i] = d.base.one();
                    Ok(Elem::Quot(v))
                } else {
                    Err(Error::parse(format!("unknown basis element '{name}'")))
                }
            }
            RingKind::PolyRing { vars, .. } => {
                if let Some(i) = vars.iter().position(|v| v == name) {
                    Ok(Elem::MPoly(MPoly::var(i, vars.len())))
                } else {
                    Err(Error::parse(format!("unknown variable '{name}'")))
                }
            }
            _ => Err(Error::parse(format!(
                "symbol '{name}' has no meaning over {}",
                self.ring.name
            ))),
        }
    }
}

pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty element expression"));
    }
    let mut p = Parser { ring, toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing tokens in '{s}'")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{standard, BaseField, MonomialOrder};

    #[test]
    fn parse_numbers() {
        let z = Ring::integers();
        assert_eq!(parse_elem(&z, "42").unwrap(), Elem::int(42));
        assert_eq!(parse_elem(&z, "-7").unwrap(), Elem::int(-7));
        let q = Ring::rationals();
        let third = parse_elem(&q, "-1/3").unwrap();
        assert_eq!(q.format(&third), "-1/3");
    }

    #[test]
    fn parse_poly_and_algebra() {
        let kt = Ring::univariate(BaseField::Prime(5), "t").unwrap();
        let e = parse_elem(&kt, "t^2+2*t-1").unwrap();
        assert_eq!(kt.format(&e), "t^2+2*t+4");

        let dual = standard::truncated_poly(2, 2);
        let x1 = parse_elem(&dual, "x+1").unwrap();
        assert!(dual.is_unit(&x1));

        let pr = Ring::poly_ring(7, vec!["x".into(), "y".into()], MonomialOrder::DegRevLex).unwrap();
        let xy = parse_elem(&pr, "x*y-2").unwrap();
        assert_eq!(pr.format(&xy), "x*y+5");
    }
}
