//! Multivariate polynomials over a prime field, with the monomial orders
//! needed by the Buchberger machinery.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponent vector; the variable count is fixed by the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
    pub fn div(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    match x.cmp(y) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Terms sorted strictly descending in the ring's monomial order, no zero
/// coefficients. The empty list is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub terms: Vec<(Mono, u64)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: vec![] }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn constant(c: u64, nvars: usize, p: u64) -> MPoly {
        let c = c % p;
        if c == 0 {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(Mono::one(nvars), c)],
            }
        }
    }
    pub fn var(i: usize, nvars: usize) -> MPoly {
        let mut m = Mono::one(nvars);
        m.0[i] = 1;
        MPoly { terms: vec![(m, 1)] }
    }
    pub fn leading(&self) -> Option<&(Mono, u64)> {
        self.terms.first()
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &MPoly, ord: MonomialOrder, p: u64) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (self.terms[i].1 + other.terms[j].1) % p;
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self, p: u64) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), (p - c) % p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MPoly, ord: MonomialOrder, p: u64) -> MPoly {
        self.add(&other.neg(p), ord, p)
    }

    pub fn mul_term(&self, m: &Mono, c: u64, p: u64) -> MPoly {
        let c = c % p;
        if c == 0 {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), ((*tc as u128 * c as u128) % p as u128) as u64))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly, ord: MonomialOrder, p: u64) -> MPoly {
        let mut acc = MPoly::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&other.mul_term(m, *c, p), ord, p);
        }
        acc
    }

    pub fn scale(&self, c: u64, p: u64) -> MPoly {
        let nvars = self
            .terms
            .first()
            .map(|(m, _)| m.0.len())
            .unwrap_or(0);
        self.mul_term(&Mono::one(nvars), c, p)
    }

    /// Normalize the leading coefficient to 1.
    pub fn monic(&self, p: u64) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => {
                let inv = crate::ring::elem::mod_pow(*c, p - 2, p);
                self.scale(inv, p)
            }
        }
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (m, c) in &self.terms {
            let mut factors = vec![];
            if *c != 1 || m.is_one() {
                factors.push(format!("{c}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join("+")
    }
}
