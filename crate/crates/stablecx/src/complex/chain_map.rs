//! Chain maps between complexes, with degreewise matrix components and
//! periodic tails mirroring the complexes they connect.

use super::Complex;
use crate::error::{Error, Result};
use crate::ring::Matrix;

/// A map of degree n has components f^d : X^d -> Y^{d+n} and satisfies
/// d_Y f = (-1)^n f d_X. Components outside the stored window are zero unless
/// a tail period is declared.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub degree: i64,
    pub lo: i64,
    pub comps: Vec<Matrix>,
    pub left_period: Option<usize>,
    pub right_period: Option<usize>,
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        if self.source != other.source || self.target != other.target || self.degree != other.degree
        {
            return false;
        }
        let degrees = self.comparison_degrees(other);
        degrees.iter().all(|&d| self.comp(d) == other.comp(d))
    }
}

impl ChainMap {
    pub fn new(
        source: Complex,
        target: Complex,
        degree: i64,
        lo: i64,
        comps: Vec<Matrix>,
        left_period: Option<usize>,
        right_period: Option<usize>,
    ) -> Result<ChainMap> {
        let f = ChainMap {
            source,
            target,
            degree,
            lo,
            comps,
            left_period,
            right_period,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        for (k, m) in self.comps.iter().enumerate() {
            let d = self.lo + k as i64;
            m.check_dims(self.target.rank(d + self.degree), self.source.rank(d))?;
        }
        if !self.commutes() {
            return Err(Error::validation(
                "components do not commute with the differentials",
            ));
        }
        Ok(())
    }

    /// Degrees at which the chain-map condition must be checked.
    fn commute_degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.source.certification_degrees();
        for d in self.target.certification_degrees() {
            ds.push(d - self.degree);
        }
        for k in 0..self.comps.len() as i64 {
            ds.push(self.lo + k);
        }
        let mut out: Vec<i64> = vec![];
        for d in ds {
            out.push(d - 1);
            out.push(d);
            out.push(d + 1);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn comparison_degrees(&self, other: &ChainMap) -> Vec<i64> {
        let mut ds = self.commute_degrees();
        ds.extend(other.commute_degrees());
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn commutes(&self) -> bool {
        let sign = self.degree.rem_euclid(2) == 1;
        for d in self.commute_degrees() {
            let lhs = self.target.diff(d + self.degree).mul(&self.comp(d));
            let mut rhs = self.comp(d + 1).mul(&self.source.diff(d));
            if sign {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Component at an arbitrary degree, honoring the declared tails.
    pub fn comp(&self, d: i64) -> Matrix {
        let rows = self.target.rank(d + self.degree);
        let cols = self.source.rank(d);
        if self.comps.is_empty() {
            return Matrix::zero(self.source.ring.clone(), rows, cols);
        }
        let hi = self.lo + self.comps.len() as i64 - 1;
        let mut dd = d;
        if dd < self.lo {
            match self.left_period {
                Some(p) => {
                    let p = p as i64;
                    let k = (self.lo - dd + p - 1) / p;
                    dd += k * p;
                }
                None => return Matrix::zero(self.source.ring.clone(), rows, cols),
            }
        } else if dd > hi {
            match self.right_period {
                Some(q) => {
                    let q = q as i64;
                    let k = (dd - hi + q - 1) / q;
                    dd -= k * q;
                }
                None => return Matrix::zero(self.source.ring.clone(), rows, cols),
            }
        }
        let m = self.comps[(dd - self.lo) as usize].clone();
        debug_assert_eq!((m.rows, m.cols), (rows, cols), "component shape at {d}");
        m
    }

    /// Zero map of a given degree.
    pub fn zero(source: &Complex, target: &Complex, degree: i64) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            lo: 0,
            comps: vec![],
            left_period: None,
            right_period: None,
        }
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let comps = (0..x.ranks.len())
            .map(|k| Matrix::identity(x.ring.clone(), x.ranks[k]))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            degree: 0,
            lo: x.lo,
            comps,
            left_period: x.left_period,
            right_period: x.right_period,
        }
    }

    /// Build a degree-0 map from a component function over the union of the
    /// supports (bounded complexes), validating commутation.
    pub fn from_fn(
        source: &Complex,
        target: &Complex,
        degree: i64,
        mut f: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainMap> {
        assert!(
            source.is_bounded() && target.is_bounded(),
            "from_fn needs bounded complexes"
        );
        let lo = source.lo.min(target.lo - degree);
        let hi = source.hi().max(target.hi() - degree);
        let comps: Vec<Matrix> = (lo..=hi).map(&mut f).collect();
        ChainMap::new(source.clone(), target.clone(), degree, lo, comps, None, None)
    }

    /// Periodic-aware map sharing the source's window layout; the component
    /// function is sampled over the source window.
    pub fn over_source_layout(
        source: &Complex,
        target: &Complex,
        degree: i64,
        mut f: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainMap> {
        let lo = source.lo;
        let comps: Vec<Matrix> = (0..source.ranks.len())
            .map(|k| f(lo + k as i64))
            .collect();
        ChainMap::new(
            source.clone(),
            target.clone(),
            degree,
            lo,
            comps,
            source.left_period,
            source.right_period,
        )
    }

    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        // self o inner : inner.source -> self.target
        let degree = self.degree + inner.degree;
        let (lo, len, lp, rp) = if inner.source.is_bounded() {
            let lo = inner.source.lo;
            (lo, inner.source.ranks.len(), None, None)
        } else {
            (
                inner.source.lo,
                inner.source.ranks.len(),
                inner.source.left_period,
                inner.source.right_period,
            )
        };
        let comps: Vec<Matrix> = (0..len)
            .map(|k| {
                let d = lo + k as i64;
                self.comp(d + inner.degree).mul(&inner.comp(d))
            })
            .collect();
        ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree,
            lo,
            comps,
            left_period: lp,
            right_period: rp,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        let degrees = self.comparison_degrees(other);
        if degrees.is_empty() {
            return self.clone();
        }
        let lo = *degrees.first().unwrap();
        let hi = *degrees.last().unwrap();
        let comps: Vec<Matrix> = (lo..=hi).map(|d| self.comp(d).add(&other.comp(d))).collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            lo,
            comps,
            left_period: self.left_period.or(other.left_period),
            right_period: self.right_period.or(other.right_period),
        }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            lo: self.lo,
            comps: self.comps.iter().map(|m| m.neg()).collect(),
            left_period: self.left_period,
            right_period: self.right_period,
        }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    /// The dual map f* : Y* -> X* with (f*)^d = (f^{-d-n})^T.
    pub fn dual(&self) -> ChainMap {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let degree = self.degree;
        // component window: d such that -d-n is in our component range
        let lo = -(self.lo + self.comps.len() as i64 - 1) - degree;
        let comps: Vec<Matrix> = (0..self.comps.len())
            .map(|k| {
                let d = lo + k as i64;
                self.comp(-d - degree).transpose()
            })
            .collect();
        ChainMap {
            source: src,
            target: tgt,
            degree,
            lo,
            comps,
            left_period: self.right_period,
            right_period: self.left_period,
        }
    }

    /// f[n] : X[n] -> Y[n], same matrices re-indexed.
    pub fn shift(&self, n: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(n),
            target: self.target.shift(n),
            degree: self.degree,
            lo: self.lo - n,
            comps: self.comps.clone(),
            left_period: self.left_period,
            right_period: self.right_period,
        }
    }

    /// Reinterpret a degree-n map as a degree-0 map into target[n].
    pub fn as_degree_zero(&self) -> ChainMap {
        if self.degree == 0 {
            return self.clone();
        }
        ChainMap {
            source: self.source.clone(),
            target: self.target.shift(self.degree),
            degree: 0,
            lo: self.lo,
            comps: self.comps.clone(),
            left_period: self.left_period,
            right_period: self.right_period,
        }
    }

    /// Induced map H(f) at one degree is handled by the cohomology module;
    /// here: the direct sum of two maps.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.degree, other.degree);
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        // block structure must respect the degreewise concatenation order used
        // by Complex::direct_sum (self parts first)
        let lo = source.lo;
        let comps: Vec<Matrix> = (0..source.ranks.len())
            .map(|k| {
                let d = lo + k as i64;
                self.comp(d).direct_sum(&other.comp(d))
            })
            .collect();
        ChainMap {
            source,
            target,
            degree: self.degree,
            lo,
            comps,
            left_period: None,
            right_period: None,
        }
    }

    /// Truncate a periodic map in step with truncating its complexes.
    pub fn truncate(&self, margin: usize) -> ChainMap {
        let source = self.source.truncate(margin);
        let target = self.target.truncate(margin);
        let lo = source.lo.min(target.lo - self.degree);
        let hi = source.hi().max(target.hi() - self.degree);
        let comps: Vec<Matrix> = (lo..=hi).map(|d| self.comp(d)).collect();
        ChainMap {
            source,
            target,
            degree: self.degree,
            lo,
            comps,
            left_period: None,
            right_period: None,
        }
    }
}
