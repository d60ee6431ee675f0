use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Element of one of the base fields used for coefficients: a prime field F_p or Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp(u64),
    Rat(BigRational),
}

/// A base field descriptor, used for coefficients of polynomials and
/// finite-dimensional algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseField {
    Prime(u64),
    Rationals,
}

impl BaseField {
    pub fn zero(&self) -> FieldElem {
        match self {
            BaseField::Prime(_) => FieldElem::Fp(0),
            BaseField::Rationals => FieldElem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            BaseField::Prime(_) => FieldElem::Fp(1),
            BaseField::Rationals => FieldElem::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            BaseField::Prime(p) => FieldElem::Fp((n.rem_euclid(*p as i64)) as u64),
            BaseField::Rationals => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Fp(x) => *x == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (BaseField::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp((x + y) % p)
            }
            (BaseField::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            _ => panic!("base field element mismatch"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (BaseField::Prime(p), FieldElem::Fp(x)) => FieldElem::Fp((p - x) % p),
            (BaseField::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            _ => panic!("base field element mismatch"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (BaseField::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (BaseField::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            _ => panic!("base field element mismatch"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (BaseField::Prime(p), FieldElem::Fp(x)) => Some(FieldElem::Fp(mod_pow(*x, p - 2, *p))),
            (BaseField::Rationals, FieldElem::Rat(x)) => Some(FieldElem::Rat(x.recip())),
            _ => panic!("base field element mismatch"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn format(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Fp(x) => format!("{x}"),
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense univariate polynomial over a base field. Coefficients are stored in
/// ascending degree with no trailing zeros; the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<FieldElem>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![])
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn normalize(mut self, f: &BaseField) -> Self {
        while let Some(c) = self.0.last() {
            if f.is_zero(c) {
                self.0.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn constant(c: FieldElem, f: &BaseField) -> Self {
        Poly(vec![c]).normalize(f)
    }

    pub fn var(f: &BaseField) -> Self {
        Poly(vec![f.zero(), f.one()])
    }

    pub fn add(&self, other: &Poly, f: &BaseField) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.0.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.add(&a, &b));
        }
        Poly(out).normalize(f)
    }

    pub fn neg(&self, f: &BaseField) -> Poly {
        Poly(self.0.iter().map(|c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, f: &BaseField) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &Poly, f: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly(out).normalize(f)
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly, f: &BaseField) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = f.inv(div.0.last().unwrap()).unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.0.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = f.mul(rem.0.last().unwrap(), &lead_inv);
            let shift = rd - dd;
            quot[shift] = f.add(&quot[shift], &c);
            for (i, b) in div.0.iter().enumerate() {
                let t = f.mul(&c, b);
                rem.0[shift + i] = f.sub(&rem.0[shift + i], &t);
            }
            rem = rem.normalize(f);
        }
        (Poly(quot).normalize(f), rem)
    }

    pub fn scale(&self, c: &FieldElem, f: &BaseField) -> Poly {
        Poly(self.0.iter().map(|a| f.mul(a, c)).collect()).normalize(f)
    }

    /// Monic normalization; the zero polynomial stays zero.
    pub fn monic(&self, f: &BaseField) -> Poly {
        match self.0.last() {
            None => Poly::zero(),
            Some(c) => self.scale(&f.inv(c).unwrap(), f),
        }
    }

    pub fn gcd(&self, other: &Poly, f: &BaseField) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn format(&self, f: &BaseField, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = vec![];
        for (i, c) in self.0.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format(c);
            let term = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if cs == "1" => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

/// An element of a roster ring. The active variant is determined by the ring kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Fp(u64),
    Poly(Poly),
    /// Coefficient vector over the fixed basis of a finite-dimensional algebra.
    Quot(Vec<FieldElem>),
    MPoly(crate::ring::mpoly::MPoly),
}

impl Elem {
    pub fn int(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fp(x) => write!(f, "{x}"),
            Elem::Poly(_) | Elem::Quot(_) | Elem::MPoly(_) => {
                write!(f, "<needs ring context>")
            }
        }
    }
}

/// Absolute value used as the Euclidean norm over the integers.
pub fn bigint_abs(n: &BigInt) -> BigInt {
    n.abs()
}
