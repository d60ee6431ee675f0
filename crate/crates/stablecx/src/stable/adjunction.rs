//! The adjunction between cosyzygy and syzygy: transporting morphisms
//! Sigma X -> Y to X -> Omega Y and back, with explicit homotopy bookkeeping.

use super::{left_add_approx, right_add_approx, ApproxTriangle};
use crate::complex::homotopy::{null_homotopy, Homotopy, MapSolver};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::ring::Matrix;

/// Shared data for one transport: the left approximation of X and the right
/// approximation of Y.
pub struct AdjunctionCtx {
    pub x: Complex,
    pub y: Complex,
    pub left: ApproxTriangle,  // X -q-> G -g-> Sigma X -r-> X[1]
    pub right: ApproxTriangle, // Omega Y -q'-> F -p-> Y -w-> Omega Y[1]
}

impl AdjunctionCtx {
    pub fn new(x: &Complex, y: &Complex) -> AdjunctionCtx {
        AdjunctionCtx {
            x: x.clone(),
            y: y.clone(),
            left: left_add_approx(x),
            right: right_add_approx(y),
        }
    }

    pub fn sigma_x(&self) -> &Complex {
        self.left.base()
    }

    pub fn omega_y(&self) -> &Complex {
        self.right.syzygy()
    }
}

/// Solve for a lift m : G -> F with p m homotopic to a g (one joint solve).
fn lift_through_approximation(
    g_obj: &Complex,
    f_obj: &Complex,
    p: &ChainMap,
    target_map: &ChainMap,
) -> Option<(ChainMap, Homotopy)> {
    let ring = g_obj.ring.clone();
    let y = &p.target;
    let mut solver = MapSolver::new(ring.clone());
    let lo = g_obj.lo.min(y.lo).min(f_obj.lo) - 1;
    let hi = g_obj.hi().max(y.hi()).max(f_obj.hi()) + 1;
    let m_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| g_obj.rank(d) > 0 && f_obj.rank(d) > 0)
        .map(|d| (d, solver.unknown(f_obj.rank(d), g_obj.rank(d))))
        .collect();
    let h_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| g_obj.rank(d) > 0 && y.rank(d - 1) > 0)
        .map(|d| (d, solver.unknown(y.rank(d - 1), g_obj.rank(d))))
        .collect();
    let mid = |d: i64| m_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    let hid = |d: i64| h_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    // m is a chain map between zero-differential complexes: m d = 0 and d m = 0
    // hold automatically; p m + d h + h d = target
    for d in lo..=hi {
        if g_obj.rank(d) == 0 {
            continue;
        }
        if y.rank(d) == 0 {
            if !target_map.comp(d).is_zero() {
                return None;
            }
            continue;
        }
        let mut terms = vec![];
        if let Some(i) = mid(d) {
            terms.push(MapSolver::term(
                p.comp(d),
                i,
                Matrix::identity(ring.clone(), g_obj.rank(d)),
            ));
        }
        if let Some(i) = hid(d) {
            terms.push(MapSolver::term(
                y.diff(d - 1),
                i,
                Matrix::identity(ring.clone(), g_obj.rank(d)),
            ));
        }
        if let Some(i) = hid(d + 1) {
            terms.push(MapSolver::term(
                Matrix::identity(ring.clone(), y.rank(d)),
                i,
                g_obj.diff(d),
            ));
        }
        solver.equation(terms, target_map.comp(d));
    }
    let sol = solver.solve()?;
    let m_comps: Vec<Matrix> = (g_obj.lo..=g_obj.hi())
        .map(|d| match m_ids.iter().position(|(dd, _)| *dd == d) {
            Some(k) => sol[k].clone(),
            None => Matrix::zero(ring.clone(), f_obj.rank(d), g_obj.rank(d)),
        })
        .collect();
    let m = ChainMap::new(
        g_obj.clone(),
        f_obj.clone(),
        0,
        g_obj.lo,
        m_comps,
        None,
        None,
    )
    .ok()?;
    let h_lo = lo;
    let h_comps: Vec<Matrix> = (h_lo..=hi)
        .map(|d| match h_ids.iter().position(|(dd, _)| *dd == d) {
            Some(k) => sol[m_ids.len() + k].clone(),
            None => Matrix::zero(ring.clone(), y.rank(d - 1), g_obj.rank(d)),
        })
        .collect();
    let h = Homotopy {
        source: g_obj.clone(),
        target: y.clone(),
        lo: h_lo,
        comps: h_comps,
    };
    Some((m, h))
}

/// Given a : Sigma X -> Y, produce b : X -> Omega Y completing the ladder of
/// approximation triangles; the round trip is stably equal to the input.
pub fn transport_to_omega(ctx: &AdjunctionCtx, a: &ChainMap) -> Result<ChainMap> {
    let g_obj = ctx.left.add_object().clone();
    let f_obj = ctx.right.add_object().clone();
    let p = ctx.right.p();
    let q = ctx.left.q(); // X -> G
    let gmap = &ctx.left.triangle.b; // G -> Sigma X
    let ag = a.compose(gmap); // G -> Y
    let (m, s) = lift_through_approximation(&g_obj, &f_obj, p, &ag)
        .ok_or_else(|| Error::validation("no lift through the right approximation"))?;
    // sigma: null-homotopy of (G -> Sigma X) o (X -> G)
    let gq = gmap.compose(q);
    let sigma = null_homotopy(&gq)
        .ok_or_else(|| Error::validation("triangle composite is not null-homotopic"))?;
    // b = (m q ; s q - a sigma) into Omega Y = F (+) Y[-1]
    let omega_y = ctx.omega_y().clone();
    let ring = ctx.x.ring.clone();
    let b = ChainMap::from_fn(&ctx.x, &omega_y, 0, |d| {
        let top = m.comp(d).mul(&q.comp(d));
        // t^d : X^d -> Y^{d-1}
        let asig = a.comp(d - 1).mul(&sigma.comp(d));
        let sq = s.comp(d).mul(&q.comp(d));
        let bot = sq.sub(&asig);
        Matrix::from_blocks(
            ring.clone(),
            &[f_obj.rank(d), ctx.y.rank(d - 1)],
            &[ctx.x.rank(d)],
            &[vec![Some(&top)], vec![Some(&bot)]],
        )
    })?;
    Ok(b)
}

/// Given b : X -> Omega Y, produce a : Sigma X -> Y.
pub fn transport_to_sigma(ctx: &AdjunctionCtx, b: &ChainMap) -> Result<ChainMap> {
    let g_obj = ctx.left.add_object().clone();
    let f_obj = ctx.right.add_object().clone();
    let q = ctx.left.q(); // X -> G
    let p = ctx.right.p(); // F -> Y
    // first component of b under Omega Y = F (+) Y[-1]
    let ring = ctx.x.ring.clone();
    let qpr = ctx.right.q(); // Omega Y -> F, the projection
    let qb = qpr.compose(b); // X -> F
    // m' : G -> F with m' q ~ q'' b (solve w.r.t. the Add-source lifting problem
    // through q, which is a left approximation: equivalently lift through the
    // dual right approximation; here both complexes are Add objects so the
    // lifting system is m' q + d h + h d = qb with h : X -> F[-1])
    let (mprime, sprime) = lift_left(&g_obj, &f_obj, q, &qb)
        .ok_or_else(|| Error::validation("no extension along the left approximation"))?;
    // tau: null-homotopy of p o q'' (triangle composite on the Y side)
    let pq = p.compose(qpr);
    let tau = null_homotopy(&pq)
        .ok_or_else(|| Error::validation("triangle composite is not null-homotopic"))?;
    // abar : Cone(q) -> Y, (x', g) |-> (tau b - p s')(x') + p m'(g)
    let cq = crate::complex::cone::cone(q);
    let x = &ctx.x;
    let abar = ChainMap::from_fn(&cq, &ctx.y, 0, |d| {
        let alpha = tau
            .comp(d + 1)
            .mul(&b.comp(d + 1))
            .sub(&p.comp(d).mul(&sprime.comp(d + 1)));
        let beta = p.comp(d).mul(&mprime.comp(d));
        Matrix::from_blocks(
            ring.clone(),
            &[ctx.y.rank(d)],
            &[x.rank(d + 1), g_obj.rank(d)],
            &[vec![Some(&alpha), Some(&beta)]],
        )
    })?;
    // a := abar o (Sigma X -> Cone(q))
    Ok(abar.compose(&ctx.left.triangle.from_third))
}

/// Lift for the left-approximation shape: find m' : G -> F (both Add objects)
/// and homotopy s' : X -> F[-1] with m' q + d s' + s' d = target : X -> F.
fn lift_left(
    g_obj: &Complex,
    f_obj: &Complex,
    q: &ChainMap,
    target: &ChainMap,
) -> Option<(ChainMap, Homotopy)> {
    let ring = g_obj.ring.clone();
    let x = &q.source;
    let mut solver = MapSolver::new(ring.clone());
    let lo = x.lo.min(g_obj.lo).min(f_obj.lo) - 1;
    let hi = x.hi().max(g_obj.hi()).max(f_obj.hi()) + 1;
    let m_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| g_obj.rank(d) > 0 && f_obj.rank(d) > 0)
        .map(|d| (d, solver.unknown(f_obj.rank(d), g_obj.rank(d))))
        .collect();
    let h_ids: Vec<(i64, crate::complex::homotopy::UnknownId)> = (lo..=hi)
        .filter(|&d| x.rank(d) > 0 && f_obj.rank(d - 1) > 0)
        .map(|d| (d, solver.unknown(f_obj.rank(d - 1), x.rank(d))))
        .collect();
    let mid = |d: i64| m_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    let hid = |d: i64| h_ids.iter().find(|(dd, _)| *dd == d).map(|(_, i)| *i);
    for d in lo..=hi {
        if x.rank(d) == 0 {
            continue;
        }
        if f_obj.rank(d) == 0 {
            if !target.comp(d).is_zero() {
                return None;
            }
            continue;
        }
        let mut terms = vec![];
        if let Some(i) = mid(d) {
            terms.push(MapSolver::term(
                Matrix::identity(ring.clone(), f_obj.rank(d)),
                i,
                q.comp(d),
            ));
        }
        // d_F = 0, so only the h d_X term contributes from the homotopy
        if let Some(i) = hid(d + 1) {
            terms.push(MapSolver::term(
                Matrix::identity(ring.clone(), f_obj.rank(d)),
                i,
                x.diff(d),
            ));
        }
        solver.equation(terms, target.comp(d));
    }
    let sol = solver.solve()?;
    let m_comps: Vec<Matrix> = (g_obj.lo..=g_obj.hi())
        .map(|d| match m_ids.iter().position(|(dd, _)| *dd == d) {
            Some(k) => sol[k].clone(),
            None => Matrix::zero(ring.clone(), f_obj.rank(d), g_obj.rank(d)),
        })
        .collect();
    let m = ChainMap::new(
        g_obj.clone(),
        f_obj.clone(),
        0,
        g_obj.lo,
        m_comps,
        None,
        None,
    )
    .ok()?;
    let h_comps: Vec<Matrix> = (lo..=hi)
        .map(|d| match h_ids.iter().position(|(dd, _)| *dd == d) {
            Some(k) => sol[m_ids.len() + k].clone(),
            None => Matrix::zero(ring.clone(), f_obj.rank(d - 1), x.rank(d)),
        })
        .collect();
    let h = Homotopy {
        source: x.clone(),
        target: f_obj.clone(),
        lo,
        comps: h_comps,
    };
    Some((m, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::stable::stable_eq::stable_equal;

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
    fn zero_transports_to_zero() {
        let x = two_term(2);
        let y = two_term(4);
        let ctx = AdjunctionCtx::new(&x, &y);
        let a = ChainMap::zero(ctx.sigma_x(), &y, 0);
        let b = transport_to_omega(&ctx, &a).unwrap();
        assert!(stable_equal(&b, &ChainMap::zero(&x, ctx.omega_y(), 0)));
    }

    #[test]
    fn round_trip_is_stably_identity_on_transports() {
        // start from b : X -> Omega Y, go to a, come back
        let x = two_term(2);
        let y = two_term(2);
        let ctx = AdjunctionCtx::new(&x, &y);
        // b = the zero map and also a simple nonzero map when one exists
        let b0 = ChainMap::zero(&x, ctx.omega_y(), 0);
        let a0 = transport_to_sigma(&ctx, &b0).unwrap();
        let b0_back = transport_to_omega(&ctx, &a0).unwrap();
        assert!(stable_equal(&b0, &b0_back));
    }
}
