//! Equality and isomorphism in the stable category: morphisms modulo those
//! factoring through Add(R).

use super::right_add_approx;
use crate::complex::homotopy::MapSolver;
use crate::complex::{ChainMap, Complex, DEFAULT_TRUNCATION_MARGIN};
use crate::ring::Matrix;

/// f factors through an Add(R) object iff it lifts through the right
/// approximation of its target up to homotopy, decided by one joint solve for
/// the lift and the homotopy.
pub fn factors_through_add(f: &ChainMap) -> bool {
    let f = if f.source.is_bounded() && f.target.is_bounded() {
        f.clone()
    } else {
        f.truncate(DEFAULT_TRUNCATION_MARGIN)
    };
    if f.degree != 0 {
        return factors_through_add(&f.as_degree_zero());
    }
    let approx = right_add_approx(&f.target);
    let p = approx.p();
    let fy = p.source.clone(); // the Add object
    let x = &f.source;
    let y = &f.target;
    let ring = x.ring.clone();
    let mut solver = MapSolver::new(ring.clone());
    // unknown lift a : X -> F_Y (chain map) and homotopy h : X -> Y[-1]
    let lo = x.lo.min(y.lo).min(fy.lo) - 1;
    let hi = x.hi().max(y.hi()).max(fy.hi()) + 1;
    let a_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| x.rank(d) > 0 && fy.rank(d) > 0)
        .map(|d| (d, solver.unknown(fy.rank(d), x.rank(d))))
        .collect();
    let h_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| x.rank(d) > 0 && y.rank(d - 1) > 0)
        .map(|d| (d, solver.unknown(y.rank(d - 1), x.rank(d))))
        .collect();
    let aid = |d: i64| a_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    let hid = |d: i64| h_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    // chain condition on a: d_F a - a d_X = 0 (d_F = 0 on Add objects, so a d_X = 0)
    for d in lo..=hi {
        if x.rank(d) == 0 || fy.rank(d + 1) == 0 {
            continue;
        }
        let mut terms = vec![];
        if let Some(i) = aid(d + 1) {
            terms.push(MapSolver::term(
                Matrix::identity(ring.clone(), fy.rank(d + 1)),
                i,
                x.diff(d),
            ));
        }
        if terms.is_empty() {
            continue;
        }
        solver.equation(terms, Matrix::zero(ring.clone(), fy.rank(d + 1), x.rank(d)));
    }
    // p a + d_Y h + h d_X = f
    for d in lo..=hi {
        if x.rank(d) == 0 || y.rank(d) == 0 {
            if x.rank(d) > 0 && !f.comp(d).is_zero() {
                return false;
            }
            continue;
        }
        let mut terms = vec![];
        if let Some(i) = aid(d) {
            terms.push(MapSolver::term(
                p.comp(d),
                i,
                Matrix::identity(ring.clone(), x.rank(d)),
            ));
        }
        if let Some(i) = hid(d) {
            terms.push(MapSolver::term(
                y.diff(d - 1),
                i,
                Matrix::identity(ring.clone(), x.rank(d)),
            ));
        }
        if let Some(i) = hid(d + 1) {
            terms.push(MapSolver::term(
                Matrix::identity(ring.clone(), y.rank(d)),
                i,
                x.diff(d),
            ));
        }
        solver.equation(terms, f.comp(d));
    }
    solver.solve().is_some()
}

/// Equality in the stable category.
pub fn stable_equal(f: &ChainMap, g: &ChainMap) -> bool {
    factors_through_add(&f.sub(g))
}

/// f and g are mutually inverse stable isomorphisms.
pub fn stable_iso_verify(f: &ChainMap, g: &ChainMap) -> bool {
    let idx = ChainMap::identity(&f.source);
    let idy = ChainMap::identity(&f.target);
    stable_equal(&g.compose(f), &idx) && stable_equal(&f.compose(g), &idy)
}

/// The stable class of X vanishes iff X lies in Add(R).
pub fn stably_zero(x: &Complex) -> bool {
    factors_through_add(&ChainMap::identity(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cone::cone;
    use crate::ring::Ring;

    fn two_term(a: i64) -> Complex {
        let z = Ring::integers();
        Complex::bounded(
            z.clone(),
            0,
            vec![1, 1],
            vec![Matrix::from_i64(z, 1, 1, &[a])],
        )
        .unwrap()
    }

    #[test]
    fn maps_into_add_objects_factor() {
        let x = two_term(2);
        let f = super::super::AddObject::from_ranks(Ring::integers(), 0, vec![1]).0;
        // any chain map X -> F[0]: f^0 = n needs n * d = 0 upstream: f^0 d^{-1}??
        // degree 0 component must satisfy commuting; [Z-2->Z] degrees 0,1 into Z[0]:
        // f^0 arbitrary since d_F = 0 and nothing maps in
        let m = ChainMap::from_fn(&x, &f, 0, |d| {
            if d == 0 {
                Matrix::from_i64(Ring::integers(), 1, 1, &[3])
            } else {
                Matrix::zero(Ring::integers(), f.rank(d), x.rank(d))
            }
        });
        // f^1 d^0 = d f^0 = 0 -> needs nothing; but chain condition at 0:
        // d_F f^0 = f^1 d_X^0: 0 = f^1 * 2, so f^1 = 0 forced and f^0 free
        let m = m.unwrap();
        assert!(factors_through_add(&m));
    }

    #[test]
    fn identity_of_non_add_does_not_factor() {
        let x = two_term(2);
        assert!(!stably_zero(&x));
        // but the identity of a null complex does
        let n = cone(&ChainMap::identity(&x));
        assert!(stably_zero(&n));
        // and the identity of a zero-differential complex does
        let f = super::super::AddObject::from_ranks(Ring::integers(), 0, vec![2]).0;
        assert!(stably_zero(&f));
    }

    #[test]
    fn acyclic_two_term_is_stably_zero() {
        assert!(stably_zero(&two_term(1)));
    }
}
