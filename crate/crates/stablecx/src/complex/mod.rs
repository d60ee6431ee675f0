//! Cochain complexes of finite-rank free modules with bounded windows and
//! optional periodic tails, their chain maps, homotopies, cones, duals and
//! cohomology.

pub mod chain_map;
pub mod cohomology;
pub mod cone;
pub mod homotopy;
pub mod koszul;
pub mod split;

use crate::error::{Error, Result};
use crate::ring::{Matrix, Ring};
use std::sync::Arc;

pub use chain_map::ChainMap;
pub use cohomology::{cbz, cohomology, cohomology_with_lifts, hom_complex, tensor_complex};
pub use cone::{cone, cone_triangle, Triangle};
pub use homotopy::{Homotopy, MapSolver};

/// Default number of extra periods materialized when a periodic computation is
/// reduced to a bounded one.
pub const DEFAULT_TRUNCATION_MARGIN: usize = 2;

/// A complex of finite-rank free modules. Degrees `lo ..= hi` carry explicit
/// ranks and differentials; `diffs[k]` is d^{lo+k} : X^{lo+k} -> X^{lo+k+1}
/// for k < len-1 (the differential leaving the top degree is zero unless a
/// right tail is present).
///
/// A left tail with period p declares X^d = X^{d+p} (ranks and differentials)
/// for every d < lo; symmetricly a right tail declares X^d = X^{d-q} for
/// d > hi. Tail consistency requires the window to contain at least one full
/// period plus the seam, which the constructors enforce.
#[derive(Debug, Clone)]
pub struct Complex {
    pub ring: Arc<Ring>,
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<Matrix>,
    pub left_period: Option<usize>,
    pub right_period: Option<usize>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo
            && self.ranks == other.ranks
            && self.diffs == other.diffs
            && self.left_period == other.left_period
            && self.right_period == other.right_period
    }
}

impl Complex {
    /// Construct and validate: shapes, d o d = 0 everywhere including one full
    /// period across each tail seam.
    pub fn new(
        ring: Arc<Ring>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<Matrix>,
        left_period: Option<usize>,
        right_period: Option<usize>,
    ) -> Result<Complex> {
        if ranks.is_empty() {
            return Ok(Complex {
                ring,
                lo,
                ranks: vec![],
                diffs: vec![],
                left_period: None,
                right_period: None,
            });
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::arg(format!(
                "expected {} differentials for {} degrees, got {}",
                ranks.len() - 1,
                ranks.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            d.check_dims(ranks[k + 1], ranks[k])?;
        }
        if let Some(p) = left_period {
            if p == 0 || p + 1 > ranks.len() {
                return Err(Error::arg(
                    "left tail period must be positive and fit inside the window with its seam",
                ));
            }
            if ranks[0] != ranks[p] {
                return Err(Error::arg("left tail rank pattern does not repeat"));
            }
        }
        if let Some(q) = right_period {
            let n = ranks.len();
            if q == 0 || q + 1 > n {
                return Err(Error::arg(
                    "right tail period must be positive and fit inside the window with its seam",
                ));
            }
            if ranks[n - 1] != ranks[n - 1 - q] {
                return Err(Error::arg("right tail rank pattern does not repeat"));
            }
        }
        let c = Complex {
            ring,
            lo,
            ranks,
            diffs,
            left_period,
            right_period,
        };
        c.check_squares_zero()?;
        Ok(c)
    }

    fn check_squares_zero(&self) -> Result<()> {
        let (alo, ahi) = self.support_hull();
        for d in alo - 1..=ahi {
            let a = self.diff(d);
            let b = self.diff(d + 1);
            if !b.mul(&a).is_zero() {
                return Err(Error::validation(format!(
                    "differential does not square to zero at degree {d}"
                )));
            }
        }
        Ok(())
    }

    /// The zero complex.
    pub fn zero(ring: Arc<Ring>) -> Complex {
        Complex {
            ring,
            lo: 0,
            ranks: vec![],
            diffs: vec![],
            left_period: None,
            right_period: None,
        }
    }

    /// A bounded complex from explicit window data.
    pub fn bounded(ring: Arc<Ring>, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Complex> {
        Complex::new(ring, lo, ranks, diffs, None, None)
    }

    /// A module placed in a single degree.
    pub fn concentrated(ring: Arc<Ring>, degree: i64, rank: usize) -> Complex {
        Complex {
            ring,
            lo: degree,
            ranks: vec![rank],
            diffs: vec![],
            left_period: None,
            right_period: None,
        }
    }

    /// Two-sided periodic complex from one period of data anchored at degree
    /// `lo`: `diffs[k]` maps pattern degree k to k+1, and `diffs[p-1]` wraps.
    pub fn two_sided_periodic(
        ring: Arc<Ring>,
        lo: i64,
        pattern_ranks: Vec<usize>,
        pattern_diffs: Vec<Matrix>,
    ) -> Result<Complex> {
        let p = pattern_ranks.len();
        if p == 0 || pattern_diffs.len() != p {
            return Err(Error::arg("periodic pattern needs p ranks and p differentials"));
        }
        // window of p+1 degrees: pattern repeated once plus the seam degree
        let mut ranks = pattern_ranks.clone();
        ranks.push(pattern_ranks[0]);
        let diffs = pattern_diffs.clone();
        Complex::new(ring, lo, ranks, diffs, Some(p), Some(p))
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_bounded(&self) -> bool {
        self.left_period.is_none() && self.right_period.is_none()
    }

    /// Degrees outside the hull have rank zero (bounded directions only).
    pub fn support_hull(&self) -> (i64, i64) {
        if self.is_empty() {
            return (self.lo, self.lo - 1);
        }
        (self.lo, self.hi())
    }

    /// Reduce an arbitrary degree into the window using the tail periods;
    /// None when the degree is outside a bounded end.
    fn reduce_degree(&self, d: i64) -> Option<i64> {
        if self.is_empty() {
            return None;
        }
        let hi = self.hi();
        if d < self.lo {
            let p = self.left_period? as i64;
            let k = (self.lo - d + p - 1) / p;
            Some(d + k * p)
        } else if d > hi {
            let q = self.right_period? as i64;
            let k = (d - hi + q - 1) / q;
            Some(d - k * q)
        } else {
            Some(d)
        }
    }

    pub fn rank(&self, d: i64) -> usize {
        match self.reduce_degree(d) {
            Some(r) => self.ranks[(r - self.lo) as usize],
            None => 0,
        }
    }

    /// The differential d^d : X^d -> X^{d+1}.
    pub fn diff(&self, d: i64) -> Matrix {
        let rows = self.rank(d + 1);
        let cols = self.rank(d);
        if rows == 0 || cols == 0 {
            return Matrix::zero(self.ring.clone(), rows, cols);
        }
        // reduce d so that both d and d+1 are representable in the window
        let mut dd = d;
        if dd < self.lo {
            let p = self.left_period.expect("rank>0 below window needs tail") as i64;
            let k = (self.lo - dd + p - 1) / p;
            dd += k * p;
        }
        let hi = self.hi();
        if dd >= hi {
            // the stored diffs cover lo..hi-1; wrap right-tail degrees down
            let q = self.right_period.expect("rank>0 above window needs tail") as i64;
            let k = (dd - hi + q) / q;
            dd -= k * q;
        }
        debug_assert!(dd >= self.lo && dd < hi);
        self.diffs[(dd - self.lo) as usize].clone()
    }

    /// Degrees that determine the complex: the window plus one tail period on
    /// each side (useful for acyclicity and certification loops).
    pub fn certification_degrees(&self) -> Vec<i64> {
        if self.is_empty() {
            return vec![];
        }
        let mut lo = self.lo;
        let mut hi = self.hi();
        if let Some(p) = self.left_period {
            lo -= p as i64;
        }
        if let Some(q) = self.right_period {
            hi += q as i64;
        }
        (lo..=hi).collect()
    }

    /// Shift X[n]: degree d holds X^{d+n}, differential negated n times.
    pub fn shift(&self, n: i64) -> Complex {
        if self.is_empty() {
            return self.clone();
        }
        let diffs = if n.rem_euclid(2) == 1 {
            self.diffs.iter().map(|m| m.neg()).collect()
        } else {
            self.diffs.clone()
        };
        Complex {
            ring: self.ring.clone(),
            lo: self.lo - n,
            ranks: self.ranks.clone(),
            diffs,
            left_period: self.left_period,
            right_period: self.right_period,
        }
    }

    /// R-dual: degree d holds (X^{-d})*, differential the transpose of
    /// d^{-d-1}. An involution on the nose.
    pub fn dual(&self) -> Complex {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.ranks.len();
        let ranks: Vec<usize> = (0..n).map(|k| self.ranks[n - 1 - k]).collect();
        // dual window: degrees -hi ..= -lo; d_dual^d = (d^{-d-1})^T
        let diffs: Vec<Matrix> = (0..n - 1)
            .map(|k| self.diffs[n - 2 - k].transpose())
            .collect();
        Complex {
            ring: self.ring.clone(),
            lo: -self.hi(),
            ranks,
            diffs,
            left_period: self.right_period,
            right_period: self.left_period,
        }
    }

    /// Degreewise direct sum. Periodic inputs are supported when both are
    /// bounded or the tails line up; otherwise the summands are truncated first.
    pub fn direct_sum(&self, other: &Complex) -> Complex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        assert!(
            self.is_bounded() && other.is_bounded(),
            "direct_sum requires bounded complexes; truncate tails first"
        );
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|d| self.rank(d) + other.rank(d)).collect();
        let diffs: Vec<Matrix> = (lo..hi)
            .map(|d| self.diff(d).direct_sum(&other.diff(d)))
            .collect();
        Complex::new(self.ring.clone(), lo, ranks, diffs, None, None)
            .expect("sum of complexes is a complex")
    }

    /// Locally finite coproduct of finitely many summands: the degreewise sum,
    /// with the finiteness of each degree checked.
    pub fn locally_finite_coproduct(summands: &[Complex]) -> Result<Complex> {
        let Some(first) = summands.first() else {
            return Err(Error::arg("coproduct of an empty family needs a ring"));
        };
        if summands.iter().any(|c| !c.is_bounded()) {
            return Err(Error::arg(
                "coproduct summands must be bounded; periodic complexes are truncated first",
            ));
        }
        let mut acc = Complex::zero(first.ring.clone());
        for c in summands {
            acc = acc.direct_sum(c);
        }
        Ok(acc)
    }

    /// Materialize a bounded complex from a possibly periodic one by unrolling
    /// `margin` extra periods on each tailed side.
    pub fn truncate(&self, margin: usize) -> Complex {
        if self.is_bounded() || self.is_empty() {
            let mut out = self.clone();
            out.left_period = None;
            out.right_period = None;
            return out;
        }
        let lo = self.lo - self.left_period.map_or(0, |p| (p * margin) as i64);
        let hi = self.hi() + self.right_period.map_or(0, |q| (q * margin) as i64);
        let ranks: Vec<usize> = (lo..=hi).map(|d| self.rank(d)).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(|d| self.diff(d)).collect();
        Complex {
            ring: self.ring.clone(),
            lo,
            ranks,
            diffs,
            left_period: None,
            right_period: None,
        }
    }

    /// Drop zero-rank degrees at both ends of a bounded complex.
    pub fn trim(&self) -> Complex {
        if self.is_empty() || !self.is_bounded() {
            return self.clone();
        }
        let mut lo = self.lo;
        let mut hi = self.hi();
        while lo <= hi && self.rank(lo) == 0 {
            lo += 1;
        }
        while hi >= lo && self.rank(hi) == 0 {
            hi -= 1;
        }
        if lo > hi {
            return Complex::zero(self.ring.clone());
        }
        let ranks: Vec<usize> = (lo..=hi).map(|d| self.rank(d)).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(|d| self.diff(d)).collect();
        Complex {
            ring: self.ring.clone(),
            lo,
            ranks,
            diffs,
            left_period: None,
            right_period: None,
        }
    }

    /// Total rank over the certification window (size heuristic).
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.iter().all(|d| d.is_zero())
            && self
                .certification_degrees()
                .iter()
                .all(|&d| self.diff(d).is_zero())
    }

    /// Acyclicity, decided on the window plus one period per tail.
    pub fn is_acyclic(&self) -> bool {
        self.certification_degrees()
            .iter()
            .all(|&d| cohomology::cohomology_is_zero(self, d))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ring::standard;

    pub fn two_term_z(a: i64) -> Complex {
        // [Z -a-> Z] in degrees 0, 1
        let z = Ring::integers();
        Complex::bounded(
            z.clone(),
            0,
            vec![1, 1],
            vec![Matrix::from_i64(z, 1, 1, &[a])],
        )
        .unwrap()
    }

    pub fn periodic_x_complex() -> Complex {
        // ... -x-> R -x-> R -x-> ... over F2[x]/(x^2)
        let r = standard::truncated_poly(2, 2);
        let x = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let d = Matrix::new(r.clone(), 1, 1, vec![x]);
        Complex::two_sided_periodic(r, 0, vec![1], vec![d]).unwrap()
    }

    #[test]
    fn dual_is_involution() {
        let x = two_term_z(2);
        assert_eq!(x.dual().dual(), x);
        let p = periodic_x_complex();
        assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn dual_of_two_term() {
        // dual of [Z -2-> Z] in degrees (0, 1) lives in degrees (-1, 0)
        let x = two_term_z(2);
        let d = x.dual();
        assert_eq!(d.lo, -1);
        assert_eq!(d.hi(), 0);
        assert_eq!(d.diff(-1), Matrix::from_i64(Ring::integers(), 1, 1, &[2]));
    }

    #[test]
    fn shift_sign_rule() {
        let x = two_term_z(2);
        let s = x.shift(1);
        assert_eq!(s.lo, -1);
        assert_eq!(s.diff(-1), Matrix::from_i64(Ring::integers(), 1, 1, &[-2]));
        assert_eq!(x.shift(2).diff(-2), x.diff(0));
        // X[1][-1] = X on the nose
        assert_eq!(x.shift(1).shift(-1), x);
    }

    #[test]
    fn periodic_access() {
        let p = periodic_x_complex();
        for d in -5..=5 {
            assert_eq!(p.rank(d), 1);
            assert!(!p.diff(d).is_zero());
        }
        let t = p.truncate(2);
        assert!(t.is_bounded());
        assert_eq!(t.lo, -2);
        assert_eq!(t.hi(), 3);
    }

    #[test]
    fn squares_checked() {
        let z = Ring::integers();
        let bad = Complex::bounded(
            z.clone(),
            0,
            vec![1, 1, 1],
            vec![
                Matrix::from_i64(z.clone(), 1, 1, &[2]),
                Matrix::from_i64(z.clone(), 1, 1, &[3]),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn periodic_acyclicity() {
        assert!(periodic_x_complex().is_acyclic());
        assert!(!two_term_z(2).is_acyclic());
        assert!(two_term_z(1).is_acyclic());
    }
}
