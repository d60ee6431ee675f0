//! Buchberger machinery over multivariate polynomial rings: reduced ideal
//! bases with normal-form membership, module bases with position-over-term
//! orders, and kernel computation by component elimination.

use super::mpoly::{MPoly, Mono, MonomialOrder};
use super::{Elem, Matrix, Ring, RingKind};
use crate::ring::elem::mod_pow;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy)]
pub struct PolyCtx {
    pub p: u64,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl PolyCtx {
    pub fn of(ring: &Ring) -> PolyCtx {
        match &ring.kind {
            RingKind::PolyRing { p, vars, order } => PolyCtx {
                p: *p,
                nvars: vars.len(),
                order: *order,
            },
            _ => panic!("poly context on non-polynomial ring"),
        }
    }
}

/// Element of a free module R^n: one polynomial per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPoly {
    pub comps: Vec<MPoly>,
}

impl VPoly {
    pub fn zero(n: usize) -> VPoly {
        VPoly {
            comps: vec![MPoly::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VPoly, ctx: &PolyCtx) -> VPoly {
        VPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b, ctx.order, ctx.p))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VPoly, ctx: &PolyCtx) -> VPoly {
        VPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b, ctx.order, ctx.p))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: u64, ctx: &PolyCtx) -> VPoly {
        VPoly {
            comps: self.comps.iter().map(|a| a.mul_term(m, c, ctx.p)).collect(),
        }
    }

    /// Leading module term under position-over-term: lower component index has
    /// higher priority; within a component the ring order decides.
    pub fn leading(&self) -> Option<(usize, &Mono, u64)> {
        for (i, c) in self.comps.iter().enumerate() {
            if let Some((m, co)) = c.leading() {
                return Some((i, m, *co));
            }
        }
        None
    }

    pub fn monic(&self, ctx: &PolyCtx) -> VPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = mod_pow(c, ctx.p - 2, ctx.p);
                self.mul_term(&Mono::one(ctx.nvars), inv, ctx)
            }
        }
    }
}

/// Full reduction of `v` against `basis`. When `track` is set, returns the
/// quotients q_i with v = sum q_i basis_i + remainder.
pub fn module_reduce(
    v: &VPoly,
    basis: &[VPoly],
    ctx: &PolyCtx,
    track: bool,
) -> (VPoly, Option<Vec<MPoly>>) {
    let mut rem = VPoly::zero(v.comps.len());
    let mut work = v.clone();
    let mut quot = if track {
        Some(vec![MPoly::zero(); basis.len()])
    } else {
        None
    };
    'outer: while let Some((comp, mono, coeff)) = work.leading() {
        for (bi, b) in basis.iter().enumerate() {
            if let Some((bc, bm, bco)) = b.leading() {
                if bc == comp && bm.divides(mono) {
                    let q_mono = mono.div(bm);
                    let q_coeff =
                        ((coeff as u128 * mod_pow(bco, ctx.p - 2, ctx.p) as u128) % ctx.p as u128)
                            as u64;
                    work = work.sub(&b.mul_term(&q_mono, q_coeff, ctx), ctx);
                    if let Some(q) = quot.as_mut() {
                        let t = MPoly {
                            terms: vec![(q_mono, q_coeff)],
                        };
                        q[bi] = q[bi].add(&t, ctx.order, ctx.p);
                    }
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        let t = MPoly {
            terms: vec![(mono.clone(), coeff)],
        };
        let mut tv = VPoly::zero(v.comps.len());
        tv.comps[comp] = t.clone();
        rem = rem.add(&tv, ctx);
        work.comps[comp] = work.comps[comp].sub(&t, ctx.order, ctx.p);
    }
    (rem, quot)
}

fn spair(f: &VPoly, g: &VPoly, ctx: &PolyCtx) -> Option<VPoly> {
    let (fc, fm, fco) = f.leading()?;
    let (gc, gm, gco) = g.leading()?;
    if fc != gc {
        return None;
    }
    let l = fm.lcm(gm);
    let uf = l.div(fm);
    let ug = l.div(gm);
    let a = f.mul_term(&uf, mod_pow(fco, ctx.p - 2, ctx.p), ctx);
    let b = g.mul_term(&ug, mod_pow(gco, ctx.p - 2, ctx.p), ctx);
    Some(a.sub(&b, ctx))
}

/// Buchberger with deterministic pair selection: pairs are processed in order
/// of (lcm degree, lcm exponents, indices). When `track` is set, each returned
/// basis element carries its expression in the input generators.
pub fn module_groebner(
    gens: &[VPoly],
    ctx: &PolyCtx,
    track: bool,
) -> (Vec<VPoly>, Option<Vec<Vec<MPoly>>>) {
    let ncomp = gens.first().map(|g| g.comps.len()).unwrap_or(0);
    let mut basis: Vec<VPoly> = vec![];
    let mut trans: Vec<Vec<MPoly>> = vec![];
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let lead = g.leading().unwrap();
        let inv = mod_pow(lead.2, ctx.p - 2, ctx.p);
        basis.push(g.monic(ctx));
        if track {
            let mut row = vec![MPoly::zero(); gens.len()];
            row[i] = MPoly::constant(inv, ctx.nvars, ctx.p);
            trans.push(row);
        }
    }

    // pair queue keyed for determinism
    #[derive(PartialEq, Eq)]
    struct PairKey {
        deg: u32,
        exps: Vec<u16>,
        i: usize,
        j: usize,
    }
    impl Ord for PairKey {
        fn cmp(&self, other: &Self) -> Ordering {
            self.deg
                .cmp(&other.deg)
                .then_with(|| self.exps.cmp(&other.exps))
                .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
        }
    }
    impl PartialOrd for PairKey {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }

    let key = |basis: &[VPoly], i: usize, j: usize| -> Option<PairKey> {
        let (ci, mi, _) = basis[i].leading()?;
        let (cj, mj, _) = basis[j].leading()?;
        if ci != cj {
            return None;
        }
        // NB: the coprime-lcm shortcut is unsound for module elements with
        // trailing components, so every same-component pair is processed.
        let l = mi.lcm(mj);
        Some(PairKey {
            deg: l.degree(),
            exps: l.0.clone(),
            i,
            j,
        })
    };

    let mut pairs: Vec<PairKey> = vec![];
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some(k) = key(&basis, i, j) {
                pairs.push(k);
            }
        }
    }
    pairs.sort();

    while !pairs.is_empty() {
        let pk = pairs.remove(0);
        let Some(s) = spair(&basis[pk.i], &basis[pk.j], ctx) else {
            continue;
        };
        let (rem, quot) = module_reduce(&s, &basis, ctx, track);
        if rem.is_zero() {
            continue;
        }
        let lead = rem.leading().unwrap();
        let inv = mod_pow(lead.2, ctx.p - 2, ctx.p);
        if track {
            // s = basis_i * ui - basis_j * uj ; expression of rem in originals
            let (ic, im, ico) = basis[pk.i].leading().unwrap();
            let (_jc, jm, jco) = basis[pk.j].leading().unwrap();
            let _ = ic;
            let l = im.lcm(jm);
            let ui = MPoly {
                terms: vec![(l.div(im), mod_pow(ico, ctx.p - 2, ctx.p))],
            };
            let uj = MPoly {
                terms: vec![(l.div(jm), mod_pow(jco, ctx.p - 2, ctx.p))],
            };
            let q = quot.unwrap();
            let mut row = vec![MPoly::zero(); trans[0].len()];
            for k in 0..row.len() {
                let mut acc = ui
                    .mul(&trans[pk.i][k], ctx.order, ctx.p)
                    .sub(&uj.mul(&trans[pk.j][k], ctx.order, ctx.p), ctx.order, ctx.p);
                for (bi, qb) in q.iter().enumerate() {
                    acc = acc.sub(&qb.mul(&trans[bi][k], ctx.order, ctx.p), ctx.order, ctx.p);
                }
                row[k] = acc.scale(inv, ctx.p);
            }
            trans.push(row);
        }
        basis.push(rem.monic(ctx));
        let ni = basis.len() - 1;
        for i in 0..ni {
            if let Some(k) = key(&basis, i, ni) {
                pairs.push(k);
            }
        }
        pairs.sort();
        let _ = ncomp;
    }

    (basis, if track { Some(trans) } else { None })
}

/// Inter-reduce a module basis to its unique reduced form (monic leading
/// coefficients, no basis leading term divides any term of another element).
pub fn reduce_basis(basis: Vec<VPoly>, ctx: &PolyCtx) -> Vec<VPoly> {
    // drop elements whose leading term is divisible by another leading term
    let mut kept: Vec<VPoly> = vec![];
    'outer: for (i, b) in basis.iter().enumerate() {
        let Some((bc, bm, _)) = b.leading() else { continue };
        for (j, o) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some((oc, om, _)) = o.leading() {
                if oc == bc && om.divides(bm) && !(om == bm && j > i) {
                    continue 'outer;
                }
            }
        }
        kept.push(b.clone());
    }
    // tail-reduce each element against the others
    let mut out: Vec<VPoly> = vec![];
    for i in 0..kept.len() {
        let others: Vec<VPoly> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let (r, _) = module_reduce(&kept[i], &others, ctx, false);
        if !r.is_zero() {
            out.push(r.monic(ctx));
        }
    }
    // deterministic ordering by leading term
    out.sort_by(|a, b| {
        let la = a.leading().unwrap();
        let lb = b.leading().unwrap();
        la.0.cmp(&lb.0)
            .then_with(|| ctx.order.cmp(lb.1, la.1))
    });
    out
}

fn elem_mpoly(e: &Elem) -> &MPoly {
    match e {
        Elem::MPoly(m) => m,
        _ => panic!("expected multivariate polynomial element"),
    }
}

fn matrix_columns_as_vpolys(a: &Matrix) -> Vec<VPoly> {
    (0..a.cols)
        .map(|j| VPoly {
            comps: (0..a.rows).map(|i| elem_mpoly(a.at(i, j)).clone()).collect(),
        })
        .collect()
}

/// Kernel generators of A : R^c -> R^r by component elimination: compute a
/// module basis of the graphs [A_j; e_j] in R^{r+c}; basis elements whose top
/// part vanishes have bottom parts generating the kernel.
pub fn kernel_gens_poly(a: &Matrix) -> Matrix {
    let ctx = PolyCtx::of(&a.ring);
    let r = a.rows;
    let c = a.cols;
    let mut gens = vec![];
    for j in 0..c {
        let mut comps = vec![MPoly::zero(); r + c];
        for i in 0..r {
            comps[i] = elem_mpoly(a.at(i, j)).clone();
        }
        comps[r + j] = MPoly::constant(1, ctx.nvars, ctx.p);
        gens.push(VPoly { comps });
    }
    let (gb, _) = module_groebner(&gens, &ctx, false);
    let mut cols: Vec<Vec<MPoly>> = vec![];
    for g in reduce_basis(gb, &ctx) {
        if g.comps[..r].iter().all(|q| q.is_zero()) {
            cols.push(g.comps[r..].to_vec());
        }
    }
    let mut out = Matrix::zero(a.ring.clone(), c, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, q) in col.iter().enumerate() {
            out.set(i, j, Elem::MPoly(q.clone()));
        }
    }
    out
}

/// Particular solution of A x = b over a polynomial ring, or None when b is
/// outside the column module.
pub fn solve_poly(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ctx = PolyCtx::of(&a.ring);
    let cols = matrix_columns_as_vpolys(a);
    let (gb, trans) = module_groebner(&cols, &ctx, true);
    let trans = trans.unwrap();
    let mut parts: Vec<Vec<MPoly>> = vec![];
    for j in 0..b.cols {
        let target = VPoly {
            comps: (0..b.rows).map(|i| elem_mpoly(b.at(i, j)).clone()).collect(),
        };
        let (rem, quot) = module_reduce(&target, &gb, &ctx, true);
        if !rem.is_zero() {
            return None;
        }
        let quot = quot.unwrap();
        let mut x = vec![MPoly::zero(); a.cols];
        for (gi, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (k, xk) in x.iter_mut().enumerate() {
                *xk = xk.add(&q.mul(&trans[gi][k], ctx.order, ctx.p), ctx.order, ctx.p);
            }
        }
        parts.push(x);
    }
    let mut out = Matrix::zero(a.ring.clone(), a.cols, b.cols);
    for (j, col) in parts.iter().enumerate() {
        for (i, q) in col.iter().enumerate() {
            out.set(i, j, Elem::MPoly(q.clone()));
        }
    }
    Some(out)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn ideal_groebner(ring: &Ring, gens: &[Elem]) -> Vec<Elem> {
    let ctx = PolyCtx::of(ring);
    let vgens: Vec<VPoly> = gens
        .iter()
        .map(|g| VPoly {
            comps: vec![elem_mpoly(g).clone()],
        })
        .collect();
    let (gb, _) = module_groebner(&vgens, &ctx, false);
    reduce_basis(gb, &ctx)
        .into_iter()
        .map(|v| Elem::MPoly(v.comps.into_iter().next().unwrap()))
        .collect()
}

/// Normal form of an element against a (Groebner) basis of an ideal.
pub fn normal_form(ring: &Ring, f: &Elem, basis: &[Elem]) -> Elem {
    let ctx = PolyCtx::of(ring);
    let v = VPoly {
        comps: vec![elem_mpoly(f).clone()],
    };
    let vb: Vec<VPoly> = basis
        .iter()
        .map(|g| VPoly {
            comps: vec![elem_mpoly(g).clone()],
        })
        .collect();
    let (rem, _) = module_reduce(&v, &vb, &ctx, false);
    Elem::MPoly(rem.comps.into_iter().next().unwrap())
}

/// Post-hoc Buchberger criterion: every S-polynomial of the basis reduces to zero.
pub fn buchberger_criterion(ring: &Ring, basis: &[Elem]) -> bool {
    let ctx = PolyCtx::of(ring);
    let vb: Vec<VPoly> = basis
        .iter()
        .map(|g| VPoly {
            comps: vec![elem_mpoly(g).clone()],
        })
        .collect();
    for i in 0..vb.len() {
        for j in i + 1..vb.len() {
            if let Some(s) = spair(&vb[i], &vb[j], &ctx) {
                let (rem, _) = module_reduce(&s, &vb, &ctx, false);
                if !rem.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring2() -> std::sync::Arc<Ring> {
        Ring::poly_ring(5, vec!["x".into(), "y".into()], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn univariate_gcd_through_groebner() {
        // over F5[x], gcd(x^2-1, x^3-x) = x^2-1
        let ring = Ring::poly_ring(5, vec!["x".into()], MonomialOrder::Lex).unwrap();
        let x = crate::ring::parse::parse_elem(&ring, "x").unwrap();
        let one = ring.one();
        let f = ring.sub(&ring.mul(&x, &x), &one);
        let g = ring.sub(&ring.mul(&ring.mul(&x, &x), &x), &x);
        let gb = ideal_groebner(&ring, &[f.clone(), g]);
        assert_eq!(gb.len(), 1);
        assert_eq!(ring.format(&gb[0]), ring.format(&f));
        assert!(buchberger_criterion(&ring, &gb));
    }

    #[test]
    fn kernel_of_regular_sequence_row() {
        // kernel of (x y) : R^2 -> R is generated by (y, -x) (the Koszul syzygy)
        let ring = ring2();
        let x = crate::ring::parse::parse_elem(&ring, "x").unwrap();
        let y = crate::ring::parse::parse_elem(&ring, "y").unwrap();
        let a = Matrix::new(ring.clone(), 1, 2, vec![x.clone(), y.clone()]);
        let k = kernel_gens_poly(&a);
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero());
        // the generator is (y, -x) up to scalar
        let g0 = ring.format(k.at(0, 0));
        let g1 = ring.format(k.at(1, 0));
        assert!(g0.contains('y') && g1.contains('x'), "{g0}, {g1}");
    }

    #[test]
    fn membership_with_witness() {
        let ring = ring2();
        let x = crate::ring::parse::parse_elem(&ring, "x").unwrap();
        let y = crate::ring::parse::parse_elem(&ring, "y").unwrap();
        let a = Matrix::new(ring.clone(), 1, 2, vec![x.clone(), y.clone()]);
        // b = x^2 + x*y is in the ideal
        let b = Matrix::new(
            ring.clone(),
            1,
            1,
            vec![ring.add(&ring.mul(&x, &x), &ring.mul(&x, &y))],
        );
        let sol = solve_poly(&a, &b).expect("solvable");
        assert_eq!(a.mul(&sol), b);
        // 1 is not in the maximal ideal
        let one = Matrix::new(ring.clone(), 1, 1, vec![ring.one()]);
        assert!(solve_poly(&a, &one).is_none());
    }
}
