//! Free resolutions with deterministic, minimal-over-local-kinds generator
//! choices.

use super::{map::preimage_gens, PresentedModule};
use crate::error::Result;
use crate::ring::solve::{contains_columns, kernel_gens, solve_once};
use crate::ring::{smith::smith, Matrix, Ring, RingKind};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub module: PresentedModule,
    /// ranks[k] = rank of P_k, k = 0..=length.
    pub ranks: Vec<usize>,
    /// maps[k] = u_{k+1} : P_{k+1} -> P_k.
    pub maps: Vec<Matrix>,
    /// Chosen generator columns of the module: module.gens x ranks[0].
    pub augmentation: Matrix,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// u_k for 1 <= k <= length.
    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k - 1]
    }

    /// Consecutive composites vanish and image = kernel at each interior spot.
    pub fn verify_exactness(&self) -> bool {
        let ring = self.module.ring.clone();
        let _ = ring;
        // d o d = 0
        for k in 1..self.maps.len() {
            if !self.maps[k - 1].mul(&self.maps[k]).is_zero() {
                return false;
            }
        }
        // exactness at P_0: im(u_1) = ker(P_0 -> M) = preimage of relations
        let m0_rels = preimage_gens(&self.augmentation, &self.module.rels);
        if !contains_columns(&m0_rels, &self.maps[0]) {
            return false;
        }
        if !contains_columns(&self.maps[0], &m0_rels) {
            return false;
        }
        // interior spots
        for k in 1..self.maps.len() {
            let ker = kernel_gens(&self.maps[k - 1]);
            if !contains_columns(&self.maps[k], &ker) {
                return false;
            }
            if !contains_columns(&ker, &self.maps[k]) {
                return false;
            }
        }
        true
    }

    /// Over local kinds every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        if !self.module.ring.flags.is_artinian_local || self.module.ring.flags.is_field {
            return true;
        }
        self.maps
            .iter()
            .all(|u| u.entries().iter().all(|e| self.module.ring.in_max_ideal(e)))
    }
}

/// Incremental row-echelon rank tracker over a base field.
pub struct FieldEchelon {
    base: crate::ring::BaseField,
    /// (pivot index, normalized row).
    rows: Vec<(usize, Vec<crate::ring::FieldElem>)>,
}

impl FieldEchelon {
    pub fn new(base: crate::ring::BaseField) -> FieldEchelon {
        FieldEchelon { base, rows: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<crate::ring::FieldElem>) -> bool {
        let f = self.base.clone();
        for (piv, row) in &self.rows {
            if !f.is_zero(&v[*piv]) {
                let c = v[*piv].clone();
                for (k, rv) in row.iter().enumerate() {
                    if !f.is_zero(rv) {
                        let t = f.mul(&c, rv);
                        v[k] = f.sub(&v[k], &t);
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[piv]).expect("field pivot");
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        self.rows.push((piv, v));
        true
    }
}

/// Minimal (per kind) generating matrix for the column span of `cols`.
pub fn submodule_min_gens(cols: &Matrix) -> Matrix {
    let ring: Arc<Ring> = cols.ring.clone();
    if cols.cols == 0 {
        return cols.clone();
    }
    match &ring.kind {
        RingKind::Integers | RingKind::UnivariatePoly { .. } => {
            // basis of the span: d_i * (U^{-1} e_i) for the nonzero diagonal,
            // scaled so the first nonzero entry is a preferred associate
            let s = smith(cols);
            let uinv = solve_once(&s.u, &Matrix::identity(ring.clone(), cols.rows))
                .expect("unimodular transform");
            let mut basis = Matrix::zero(ring.clone(), cols.rows, s.rank);
            for i in 0..s.rank {
                let mut col = uinv.column(i).scale(s.diag(i));
                if let Some(first) = (0..cols.rows).find(|&r| !ring.is_zero(col.at(r, 0))) {
                    let (unit, _) = ring.normalize_assoc(col.at(first, 0));
                    let uinv_unit = ring.inv(&unit).expect("associate unit");
                    col = col.scale(&uinv_unit);
                }
                for r in 0..cols.rows {
                    basis.set(r, i, col.at(r, 0).clone());
                }
            }
            basis
        }
        RingKind::QuotientAlgebra(d) => {
            // Nakayama with one incremental echelon over the base field: seed
            // with the expanded m*span, then keep columns whose expansion grows
            // the rank, inserting their full R-span as they are kept
            let dim = d.dim();
            let expand = |col: &Matrix, mult: Option<usize>| -> Vec<crate::ring::FieldElem> {
                let mut out = Vec::with_capacity(cols.rows * dim);
                for r in 0..cols.rows {
                    let e = match col.at(r, 0) {
                        crate::ring::Elem::Quot(v) => v.clone(),
                        _ => panic!("algebra entry"),
                    };
                    let e = match mult {
                        Some(b) => {
                            let mut bv = vec![d.base.zero(); dim];
                            bv[b] = d.base.one();
                            d.mul_vec(&bv, &e)
                        }
                        None => e,
                    };
                    out.extend(e);
                }
                out
            };
            let mut ech = FieldEchelon::new(d.base.clone());
            for j in 0..cols.cols {
                let c = cols.column(j);
                for &mi in &d.max_ideal {
                    for b in 0..dim {
                        let mut bv = vec![d.base.zero(); dim];
                        bv[mi] = d.base.one();
                        let mut be = vec![d.base.zero(); dim];
                        be[b] = d.base.one();
                        let prod = d.mul_vec(&bv, &be);
                        // (mi * b) * col
                        let mut vec_out = Vec::with_capacity(cols.rows * dim);
                        for r in 0..cols.rows {
                            let e = match c.at(r, 0) {
                                crate::ring::Elem::Quot(v) => v.clone(),
                                _ => panic!("algebra entry"),
                            };
                            vec_out.extend(d.mul_vec(&prod, &e));
                        }
                        ech.insert(vec_out);
                    }
                }
            }
            let mut kept: Option<Matrix> = None;
            for j in 0..cols.cols {
                let c = cols.column(j);
                if ech.insert(expand(&c, None)) {
                    for b in 0..dim {
                        ech.insert(expand(&c, Some(b)));
                    }
                    kept = Some(match kept {
                        Some(k) => k.hcat(&c),
                        None => c,
                    });
                }
            }
            kept.unwrap_or_else(|| Matrix::zero(ring.clone(), cols.rows, 0))
        }
        _ if ring.flags.is_field => {
            let base = match &ring.kind {
                RingKind::PrimeField { p } => crate::ring::BaseField::Prime(*p),
                RingKind::Rationals => crate::ring::BaseField::Rationals,
                _ => {
                    // one-dimensional algebras already handled above
                    return cols.clone();
                }
            };
            let mut ech = FieldEchelon::new(base);
            let mut kept: Option<Matrix> = None;
            for j in 0..cols.cols {
                let c = cols.column(j);
                let v: Vec<crate::ring::FieldElem> = (0..cols.rows)
                    .map(|r| match c.at(r, 0) {
                        crate::ring::Elem::Fp(x) => crate::ring::FieldElem::Fp(*x),
                        crate::ring::Elem::Rat(q) => crate::ring::FieldElem::Rat(q.clone()),
                        _ => panic!("field entry"),
                    })
                    .collect();
                if ech.insert(v) {
                    kept = Some(match kept {
                        Some(k) => k.hcat(&c),
                        None => c,
                    });
                }
            }
            kept.unwrap_or_else(|| Matrix::zero(ring.clone(), cols.rows, 0))
        }
        RingKind::PolyRing { .. } => super::reduced_relation_basis(cols),
        _ => unreachable!(),
    }
}

/// Incrementally extendable free resolution; each step chooses minimal
/// generators of the current kernel.
pub struct ResolutionBuilder {
    resolution: FreeResolution,
    ker_span: Matrix,
}

impl ResolutionBuilder {
    pub fn new(m: &PresentedModule) -> Result<ResolutionBuilder> {
        let s = m.minimal_generator_columns();
        let m0 = m.re_present(&s)?;
        let ker_span = m0.rels.clone();
        Ok(ResolutionBuilder {
            resolution: FreeResolution {
                module: m.clone(),
                ranks: vec![m0.gens],
                maps: vec![],
                augmentation: s,
            },
            ker_span,
        })
    }

    pub fn length(&self) -> usize {
        self.resolution.maps.len()
    }

    pub fn extend(&mut self) {
        let u = submodule_min_gens(&self.ker_span);
        self.resolution.ranks.push(u.cols);
        self.ker_span = kernel_gens(&u);
        self.resolution.maps.push(u);
    }

    pub fn extend_to(&mut self, length: usize) {
        while self.length() < length {
            self.extend();
        }
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    pub fn into_resolution(self) -> FreeResolution {
        self.resolution
    }
}

/// A free resolution of the stated length, deterministic, minimal over local
/// kinds.
pub fn free_resolution(m: &PresentedModule, length: usize) -> Result<FreeResolution> {
    let mut b = ResolutionBuilder::new(m)?;
    b.extend_to(length);
    Ok(b.into_resolution())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::standard;

    #[test]
    fn resolution_of_free_module() {
        let z = Ring::integers();
        let m = PresentedModule::free(z.clone(), 1);
        let r = free_resolution(&m, 2).unwrap();
        assert_eq!(r.ranks, vec![1, 0, 0]);
        assert!(r.verify_exactness());
    }

    #[test]
    fn resolution_of_z2() {
        let z = Ring::integers();
        let m = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[2]));
        let r = free_resolution(&m, 2).unwrap();
        assert_eq!(r.ranks, vec![1, 1, 0]);
        assert_eq!(*r.map(1), Matrix::from_i64(z.clone(), 1, 1, &[2]));
        assert!(r.verify_exactness());
    }

    #[test]
    fn periodic_resolution_of_residue_field() {
        // k over F2[x]/(x^2): ... -> R -x-> R -x-> R ->> k
        let r = standard::truncated_poly(2, 2);
        let x = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let k = PresentedModule::cokernel(&Matrix::new(r.clone(), 1, 1, vec![x.clone()]));
        let res = free_resolution(&k, 3).unwrap();
        assert_eq!(res.ranks, vec![1, 1, 1, 1]);
        for m in &res.maps {
            assert_eq!(*m, Matrix::new(r.clone(), 1, 1, vec![x.clone()]));
        }
        assert!(res.verify_exactness());
        assert!(res.is_minimal());
    }

    #[test]
    fn fat_point_first_syzygy_growth() {
        // k over F2[x,y]/(x^2,xy,y^2): P_0 = R, P_1 = R^2, P_2 = R^4
        let r = standard::fat_point(2);
        let x = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let y = crate::ring::parse::parse_elem(&r, "y").unwrap();
        let k = PresentedModule::cokernel(&Matrix::new(r.clone(), 1, 2, vec![x, y]));
        let res = free_resolution(&k, 2).unwrap();
        assert_eq!(res.ranks, vec![1, 2, 4]);
        assert!(res.verify_exactness());
        assert!(res.is_minimal());
    }
}
