//! Exact arithmetic and decidable linear algebra over the supported ring
//! roster. Every higher layer reduces its questions to solve/kernel/cokernel
//! here.

pub mod elem;
pub mod groebner;
pub mod matrix;
pub mod mpoly;
pub mod parse;
pub mod smith;
pub mod solve;

use crate::error::{Error, Result};
pub use elem::{BaseField, Elem, FieldElem, Poly};
pub use matrix::Matrix;
pub use mpoly::{MPoly, Mono, MonomialOrder};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Multiplication table data for a finite-dimensional local algebra over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraData {
    pub base: BaseField,
    pub basis: Vec<String>,
    /// Index of the designated unit element in `basis`.
    pub unit: usize,
    /// Indices of a basis of the maximal ideal.
    pub max_ideal: Vec<usize>,
    /// `table[i][j]` is the coefficient vector of `e_i * e_j`.
    pub table: Vec<Vec<Vec<FieldElem>>>,
}

impl AlgebraData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul_vec(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.dim();
        let f = &self.base;
        let mut out = vec![f.zero(); n];
        for i in 0..n {
            if f.is_zero(&a[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&b[j]) {
                    continue;
                }
                let c = f.mul(&a[i], &b[j]);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// Left-multiplication matrix of `a` in the fixed basis (columns are images
    /// of basis vectors), as a dim x dim grid of base field elements.
    pub fn mult_matrix(&self, a: &[FieldElem]) -> Vec<Vec<FieldElem>> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![self.base.zero(); n];
            e[j] = self.base.one();
            cols.push(self.mul_vec(a, &e));
        }
        // transpose into row-major
        let mut rows = vec![vec![self.base.zero(); n]; n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                rows[i][j] = col[i].clone();
            }
        }
        rows
    }

    /// Dimension of the socle ann(m) as a vector space over the base field.
    pub fn socle_dimension(&self) -> usize {
        let n = self.dim();
        // Stack the multiplication matrices of the maximal-ideal basis; the
        // socle is the common kernel.
        let mut rows: Vec<Vec<FieldElem>> = vec![];
        for &mi in &self.max_ideal {
            let mut a = vec![self.base.zero(); n];
            a[mi] = self.base.one();
            rows.extend(self.mult_matrix(&a));
        }
        if rows.is_empty() {
            return n;
        }
        let rank = field_rank(&self.base, rows);
        n - rank
    }
}

/// Row rank of a matrix over a base field (destructive Gaussian elimination).
fn field_rank(f: &BaseField, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(&rows[rank][col]).unwrap();
        for c in col..ncols {
            rows[rank][c] = f.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !f.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let t = f.mul(&factor, &rows[rank][c]);
                    rows[r][c] = f.sub(&rows[r][c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq)]
pub enum RingKind {
    PrimeField { p: u64 },
    Rationals,
    Integers,
    UnivariatePoly { base: BaseField, var: String },
    QuotientAlgebra(Box<AlgebraData>),
    PolyRing { p: u64, vars: Vec<String>, order: MonomialOrder },
}

/// Structural flags; consistency is validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RingFlags {
    pub is_field: bool,
    pub is_euclidean_domain: bool,
    pub is_artinian_local: bool,
    pub is_domain: bool,
    pub is_generically_gorenstein: bool,
    pub is_gorenstein_dim_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    pub kind: RingKind,
    pub flags: RingFlags,
    pub name: String,
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Arc<Ring>> {
        if !elem::is_prime_u64(p) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        Ok(Arc::new(Ring {
            kind: RingKind::PrimeField { p },
            flags: RingFlags {
                is_field: true,
                is_euclidean_domain: true,
                is_artinian_local: true,
                is_domain: true,
                is_generically_gorenstein: true,
                is_gorenstein_dim_zero: true,
            },
            name: format!("F{p}"),
        }))
    }

    pub fn rationals() -> Arc<Ring> {
        Arc::new(Ring {
            kind: RingKind::Rationals,
            flags: RingFlags {
                is_field: true,
                is_euclidean_domain: true,
                is_artinian_local: true,
                is_domain: true,
                is_generically_gorenstein: true,
                is_gorenstein_dim_zero: true,
            },
            name: "Q".into(),
        })
    }

    pub fn integers() -> Arc<Ring> {
        Arc::new(Ring {
            kind: RingKind::Integers,
            flags: RingFlags {
                is_field: false,
                is_euclidean_domain: true,
                is_artinian_local: false,
                is_domain: true,
                is_generically_gorenstein: true,
                is_gorenstein_dim_zero: false,
            },
            name: "Z".into(),
        })
    }

    pub fn univariate(base: BaseField, var: &str) -> Result<Arc<Ring>> {
        if let BaseField::Prime(p) = base {
            if !elem::is_prime_u64(p) {
                return Err(Error::validation(format!("{p} is not prime")));
            }
        }
        let name = match &base {
            BaseField::Prime(p) => format!("F{p}[{var}]"),
            BaseField::Rationals => format!("Q[{var}]"),
        };
        Ok(Arc::new(Ring {
            kind: RingKind::UnivariatePoly { base, var: var.to_string() },
            flags: RingFlags {
                is_field: false,
                is_euclidean_domain: true,
                is_artinian_local: false,
                is_domain: true,
                is_generically_gorenstein: true,
                is_gorenstein_dim_zero: false,
            },
            name,
        }))
    }

    pub fn poly_ring(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if !elem::is_prime_u64(p) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        if vars.is_empty() {
            return Err(Error::validation("poly ring needs at least one variable"));
        }
        let name = format!("F{p}[{}]", vars.join(","));
        Ok(Arc::new(Ring {
            kind: RingKind::PolyRing { p, vars, order },
            flags: RingFlags {
                is_field: false,
                is_euclidean_domain: false,
                is_artinian_local: false,
                is_domain: true,
                is_generically_gorenstein: true,
                is_gorenstein_dim_zero: false,
            },
            name,
        }))
    }

    /// Build a finite-dimensional local algebra from its multiplication table,
    /// verifying commutativity, associativity, unitality, and nilpotency of the
    /// maximal ideal exhaustively on the basis. The Gorenstein flag is decided
    /// by the socle dimension.
    pub fn quotient_algebra(data: AlgebraData, name: impl Into<String>) -> Result<Arc<Ring>> {
        let n = data.dim();
        if let BaseField::Prime(p) = data.base {
            if !elem::is_prime_u64(p) {
                return Err(Error::validation(format!("{p} is not prime")));
            }
        }
        if data.unit >= n || data.table.len() != n || data.table.iter().any(|r| r.len() != n) {
            return Err(Error::validation("algebra table has wrong shape"));
        }
        for row in &data.table {
            for entry in row {
                if entry.len() != n {
                    return Err(Error::validation("algebra table entry has wrong length"));
                }
            }
        }
        if data.max_ideal.iter().any(|&i| i >= n) || data.max_ideal.contains(&data.unit) {
            return Err(Error::validation("bad maximal ideal basis"));
        }
        if data.max_ideal.len() != n - 1 {
            return Err(Error::validation(
                "maximal ideal basis must span a complement of the unit",
            ));
        }
        let f = &data.base;
        let basis_vec = |i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        // unital
        for i in 0..n {
            let e = basis_vec(i);
            if data.mul_vec(&basis_vec(data.unit), &e) != e {
                return Err(Error::validation("designated unit is not a left unit"));
            }
            if data.mul_vec(&e, &basis_vec(data.unit)) != e {
                return Err(Error::validation("designated unit is not a right unit"));
            }
        }
        // commutative + associative, exhaustively on basis triples
        for i in 0..n {
            for j in 0..n {
                if data.mul_vec(&basis_vec(i), &basis_vec(j))
                    != data.mul_vec(&basis_vec(j), &basis_vec(i))
                {
                    return Err(Error::validation("multiplication table is not commutative"));
                }
                for k in 0..n {
                    let ij = data.mul_vec(&basis_vec(i), &basis_vec(j));
                    let jk = data.mul_vec(&basis_vec(j), &basis_vec(k));
                    if data.mul_vec(&ij, &basis_vec(k)) != data.mul_vec(&basis_vec(i), &jk) {
                        return Err(Error::validation("multiplication table is not associative"));
                    }
                }
            }
        }
        // maximal ideal nilpotent: powers of the span of the ideal basis shrink to zero
        let mut power: Vec<Vec<FieldElem>> = data.max_ideal.iter().map(|&i| basis_vec(i)).collect();
        let mut steps = 0;
        while !power.is_empty() {
            steps += 1;
            if steps > n + 1 {
                return Err(Error::validation("maximal ideal basis is not nilpotent"));
            }
            let mut next: Vec<Vec<FieldElem>> = vec![];
            for v in &power {
                for &mi in &data.max_ideal {
                    let prod = data.mul_vec(v, &basis_vec(mi));
                    if prod.iter().any(|c| !f.is_zero(c)) {
                        next.push(prod);
                    }
                }
            }
            // reduce to an independent set to bound the iteration
            let rank = field_rank(f, next.clone());
            if rank == 0 {
                break;
            }
            next.truncate(next.len().min(n * n));
            power = next;
            if steps > n {
                return Err(Error::validation("maximal ideal basis is not nilpotent"));
            }
        }
        let gorenstein = data.socle_dimension() == 1 || n == 1;
        Ok(Arc::new(Ring {
            kind: RingKind::QuotientAlgebra(Box::new(data)),
            flags: RingFlags {
                is_field: n == 1,
                is_euclidean_domain: n == 1,
                is_artinian_local: true,
                is_domain: n == 1,
                is_generically_gorenstein: gorenstein,
                is_gorenstein_dim_zero: gorenstein,
            },
            name: name.into(),
        }))
    }

    pub fn is_poly_ring(&self) -> bool {
        matches!(self.kind, RingKind::PolyRing { .. })
    }

    pub fn algebra(&self) -> Option<&AlgebraData> {
        match &self.kind {
            RingKind::QuotientAlgebra(d) => Some(d),
            _ => None,
        }
    }

    // ---- element arithmetic -------------------------------------------------

    pub fn zero(&self) -> Elem {
        match &self.kind {
            RingKind::PrimeField { .. } => Elem::Fp(0),
            RingKind::Rationals => Elem::Rat(BigRational::zero()),
            RingKind::Integers => Elem::Int(BigInt::zero()),
            RingKind::UnivariatePoly { .. } => Elem::Poly(Poly::zero()),
            RingKind::QuotientAlgebra(d) => Elem::Quot(vec![d.base.zero(); d.dim()]),
            RingKind::PolyRing { .. } => Elem::MPoly(MPoly::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match &self.kind {
            RingKind::PrimeField { .. } => Elem::Fp(1),
            RingKind::Rationals => Elem::Rat(BigRational::one()),
            RingKind::Integers => Elem::Int(BigInt::one()),
            RingKind::UnivariatePoly { base, .. } => {
                Elem::Poly(Poly::constant(base.one(), base))
            }
            RingKind::QuotientAlgebra(d) => {
                let mut v = vec![d.base.zero(); d.dim()];
                v[d.unit] = d.base.one();
                Elem::Quot(v)
            }
            RingKind::PolyRing { p, vars, .. } => {
                Elem::MPoly(MPoly::constant(1, vars.len(), *p))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &self.kind {
            RingKind::PrimeField { p } => Elem::Fp(n.rem_euclid(*p as i64) as u64),
            RingKind::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            RingKind::Integers => Elem::Int(BigInt::from(n)),
            RingKind::UnivariatePoly { base, .. } => {
                Elem::Poly(Poly::constant(base.from_i64(n), base))
            }
            RingKind::QuotientAlgebra(d) => {
                let mut v = vec![d.base.zero(); d.dim()];
                v[d.unit] = d.base.from_i64(n);
                Elem::Quot(v)
            }
            RingKind::PolyRing { p, vars, .. } => Elem::MPoly(MPoly::constant(
                n.rem_euclid(*p as i64) as u64,
                vars.len(),
                *p,
            )),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(r) => r.is_zero(),
            Elem::Fp(x) => *x == 0,
            Elem::Poly(p) => p.is_zero(),
            Elem::Quot(v) => {
                let d = self.algebra().expect("quotient elem outside algebra");
                v.iter().all(|c| d.base.is_zero(c))
            }
            Elem::MPoly(m) => m.is_zero(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (RingKind::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % p),
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.add(y, base))
            }
            (RingKind::QuotientAlgebra(d), Elem::Quot(x), Elem::Quot(y)) => Elem::Quot(
                x.iter()
                    .zip(y)
                    .map(|(u, v)| d.base.add(u, v))
                    .collect(),
            ),
            (RingKind::PolyRing { p, order, .. }, Elem::MPoly(x), Elem::MPoly(y)) => {
                Elem::MPoly(x.add(y, *order, *p))
            }
            _ => panic!("ring/element mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.kind, a) {
            (RingKind::PrimeField { p }, Elem::Fp(x)) => Elem::Fp((p - x) % p),
            (RingKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (RingKind::Integers, Elem::Int(x)) => Elem::Int(-x),
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x)) => Elem::Poly(x.neg(base)),
            (RingKind::QuotientAlgebra(d), Elem::Quot(x)) => {
                Elem::Quot(x.iter().map(|c| d.base.neg(c)).collect())
            }
            (RingKind::PolyRing { p, .. }, Elem::MPoly(x)) => Elem::MPoly(x.neg(*p)),
            _ => panic!("ring/element mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (RingKind::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.mul(y, base))
            }
            (RingKind::QuotientAlgebra(d), Elem::Quot(x), Elem::Quot(y)) => {
                Elem::Quot(d.mul_vec(x, y))
            }
            (RingKind::PolyRing { p, order, .. }, Elem::MPoly(x), Elem::MPoly(y)) => {
                Elem::MPoly(x.mul(y, *order, *p))
            }
            _ => panic!("ring/element mismatch in mul"),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (&self.kind, a) {
            (RingKind::PrimeField { .. }, Elem::Fp(x)) => *x != 0,
            (RingKind::Rationals, Elem::Rat(x)) => !x.is_zero(),
            (RingKind::Integers, Elem::Int(x)) => x.is_one() || (-x).is_one(),
            (RingKind::UnivariatePoly { .. }, Elem::Poly(x)) => x.degree() == Some(0),
            (RingKind::QuotientAlgebra(d), Elem::Quot(x)) => !d.base.is_zero(&x[d.unit]),
            (RingKind::PolyRing { .. }, Elem::MPoly(x)) => {
                x.terms.len() == 1 && x.terms[0].0.is_one()
            }
            _ => panic!("ring/element mismatch in is_unit"),
        }
    }

    /// Multiplicative inverse when `a` is a unit.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        match (&self.kind, a) {
            (RingKind::PrimeField { p }, Elem::Fp(x)) => {
                Some(Elem::Fp(elem::mod_pow(*x, p - 2, *p)))
            }
            (RingKind::Rationals, Elem::Rat(x)) => Some(Elem::Rat(x.recip())),
            (RingKind::Integers, Elem::Int(x)) => Some(Elem::Int(x.clone())),
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x)) => {
                Some(Elem::Poly(Poly::constant(base.inv(&x.0[0]).unwrap(), base)))
            }
            (RingKind::QuotientAlgebra(d), Elem::Quot(x)) => {
                // invert the unit part and expand the geometric series of the
                // nilpotent part: (u + n)^{-1} = u^{-1} (1 + n/u)^{-1}
                let f = &d.base;
                let u = x[d.unit].clone();
                let uinv = f.inv(&u)?;
                let mut nil = x.clone();
                nil[d.unit] = f.zero();
                let nil: Vec<FieldElem> = nil.iter().map(|c| f.mul(c, &uinv)).collect();
                // now invert 1 + nil
                let mut acc = {
                    let Elem::Quot(v) = self.one() else { unreachable!() };
                    v
                };
                let mut pow = nil.clone();
                let mut sign_neg = true;
                for _ in 0..d.dim() + 1 {
                    if pow.iter().all(|c| f.is_zero(c)) {
                        break;
                    }
                    for (k, c) in pow.iter().enumerate() {
                        let t = if sign_neg { f.neg(c) } else { c.clone() };
                        acc[k] = f.add(&acc[k], &t);
                    }
                    pow = d.mul_vec(&pow, &nil);
                    sign_neg = !sign_neg;
                }
                let out: Vec<FieldElem> = acc.iter().map(|c| f.mul(c, &uinv)).collect();
                Some(Elem::Quot(out))
            }
            (RingKind::PolyRing { p, vars, .. }, Elem::MPoly(x)) => {
                let c = x.terms[0].1;
                Some(Elem::MPoly(MPoly::constant(
                    elem::mod_pow(c, p - 2, *p),
                    vars.len(),
                    *p,
                )))
            }
            _ => None,
        }
    }

    /// Exact division when `b` divides `a`; None otherwise. Used by the
    /// euclidean eliminations and by minimalization.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match (&self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => {
                if y.is_zero() {
                    None
                } else if (x % y).is_zero() {
                    Some(Elem::Int(x / y))
                } else {
                    None
                }
            }
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = x.divrem(y, base);
                if r.is_zero() {
                    Some(Elem::Poly(q))
                } else {
                    None
                }
            }
            _ => {
                if let Some(bi) = self.inv(b) {
                    Some(self.mul(a, &bi))
                } else {
                    None
                }
            }
        }
    }

    /// Euclidean norm used for deterministic pivot selection. Smaller is better;
    /// zero elements return None.
    pub fn euclid_norm(&self, a: &Elem) -> Option<BigInt> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Elem::Int(x) => Some(x.abs()),
            Elem::Poly(p) => Some(BigInt::from(p.degree().unwrap() as u64)),
            _ => Some(BigInt::one()),
        }
    }

    /// Euclidean division a = q b + r.
    pub fn divrem(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        match (&self.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => {
                // symmetric remainder keeps entries small
                let q = x / y;
                let r = x - &q * y;
                let (q, r) = if r.abs() * 2 > y.abs() {
                    if (r.sign() == y.sign()) || (-&r).sign() != y.sign() && !r.is_zero() {
                        if r.sign() == y.sign() {
                            (q + 1, r - y)
                        } else {
                            (q - 1, r + y)
                        }
                    } else {
                        (q, r)
                    }
                } else {
                    (q, r)
                };
                (Elem::Int(q), Elem::Int(r))
            }
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                let (q, r) = x.divrem(y, base);
                (Elem::Poly(q), Elem::Poly(r))
            }
            _ => {
                // fields: exact division, remainder zero
                let q = self
                    .div_exact(a, b)
                    .expect("divrem outside euclidean kinds requires divisibility");
                (q, self.zero())
            }
        }
    }

    /// Canonical unit normalization: returns (u, b) with a = u*b, u a unit and b
    /// the preferred associate (positive integers, monic polynomials).
    pub fn normalize_assoc(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.one(), self.zero());
        }
        match (&self.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => {
                if x.is_negative() {
                    (self.from_i64(-1), Elem::Int(-x))
                } else {
                    (self.one(), a.clone())
                }
            }
            (RingKind::UnivariatePoly { base, .. }, Elem::Poly(p)) => {
                let lead = p.0.last().unwrap().clone();
                let monic = p.monic(base);
                (
                    Elem::Poly(Poly::constant(lead, base)),
                    Elem::Poly(monic),
                )
            }
            _ => {
                if self.is_unit(a) {
                    (a.clone(), self.one())
                } else {
                    (self.one(), a.clone())
                }
            }
        }
    }

    /// Whether an element lies in the maximal ideal (artinian local kinds only).
    pub fn in_max_ideal(&self, a: &Elem) -> bool {
        match (&self.kind, a) {
            (RingKind::QuotientAlgebra(d), Elem::Quot(v)) => d.base.is_zero(&v[d.unit]),
            (RingKind::PrimeField { .. }, _) | (RingKind::Rationals, _) => self.is_zero(a),
            _ => panic!("in_max_ideal needs an artinian local ring"),
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match (&self.kind, a) {
            (RingKind::UnivariatePoly { base, var }, Elem::Poly(p)) => p.format(base, var),
            (RingKind::QuotientAlgebra(d), Elem::Quot(v)) => {
                let f = &d.base;
                let mut parts = vec![];
                for (i, c) in v.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let cs = f.format(c);
                    if i == d.unit {
                        parts.push(cs);
                    } else if cs == "1" {
                        parts.push(d.basis[i].clone());
                    } else {
                        parts.push(format!("{cs}*{}", d.basis[i]));
                    }
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
            (RingKind::PolyRing { vars, .. }, Elem::MPoly(m)) => m.format(vars),
            _ => format!("{a}"),
        }
    }

    /// The fraction field of a domain kind, when it is itself a roster kind.
    /// Artinian local kinds and fields localize to themselves.
    pub fn total_quotient_ring(self: &Arc<Self>) -> Result<Arc<Ring>> {
        if self.flags.is_field || self.flags.is_artinian_local {
            return Ok(self.clone());
        }
        match &self.kind {
            RingKind::Integers => Ok(Ring::rationals()),
            _ => Err(Error::unsupported(format!(
                "total quotient ring of {} is outside the supported roster",
                self.name
            ))),
        }
    }

    /// Map an element into the total quotient ring.
    pub fn localize_elem(&self, target: &Ring, a: &Elem) -> Elem {
        match (&self.kind, &target.kind, a) {
            (RingKind::Integers, RingKind::Rationals, Elem::Int(x)) => {
                Elem::Rat(BigRational::from_integer(x.clone()))
            }
            _ => a.clone(),
        }
    }
}

/// Convenience constructors for the standard test algebras.
pub mod standard {
    use super::*;

    /// k[x]/(x^n) over F_p as a quotient algebra with basis 1, x, ..., x^{n-1}.
    pub fn truncated_poly(p: u64, n: usize) -> Arc<Ring> {
        let base = BaseField::Prime(p);
        let basis: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x{i}"),
            })
            .collect();
        let mut table = vec![vec![vec![base.zero(); n]; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[i][j][i + j] = base.one();
                }
            }
        }
        Ring::quotient_algebra(
            AlgebraData {
                base,
                basis,
                unit: 0,
                max_ideal: (1..n).collect(),
                table,
            },
            format!("F{p}[x]/(x^{n})"),
        )
        .expect("truncated polynomial algebra is valid")
    }

    /// F_p[x,y]/(x^2, xy, y^2): basis 1, x, y; socle has dimension 2.
    pub fn fat_point(p: u64) -> Arc<Ring> {
        let base = BaseField::Prime(p);
        let n = 3;
        let mut table = vec![vec![vec![base.zero(); n]; n]; n];
        for i in 0..n {
            table[0][i][i] = base.one();
            table[i][0][i] = base.one();
        }
        Ring::quotient_algebra(
            AlgebraData {
                base,
                basis: vec!["1".into(), "x".into(), "y".into()],
                unit: 0,
                max_ideal: vec![1, 2],
                table,
            },
            format!("F{p}[x,y]/(x2,xy,y2)"),
        )
        .expect("fat point algebra is valid")
    }
}
