//! Finitely presented modules: canonical presentations, minimal generating
//! sets, isomorphism invariants, and the kernel/image bookkeeping that Ext,
//! Tor and the complex layer are built from.

pub mod functors;
pub mod map;
pub mod resolution;

use crate::error::{Error, Result};
use crate::ring::solve::{contains_columns, has_generalized_inverse, solve_once};
use crate::ring::{smith::smith, Elem, Matrix, Ring, RingKind};
use std::sync::Arc;

pub use functors::{biduality_map, dual_module, ext, hom_module, tensor_module, tor, transpose};
pub use map::ModuleMap;
pub use resolution::{free_resolution, FreeResolution};

/// A finitely presented module R^gens / column-span(rels).
#[derive(Debug, Clone)]
pub struct PresentedModule {
    pub ring: Arc<Ring>,
    pub gens: usize,
    /// gens x nrels matrix whose columns are the relations.
    pub rels: Matrix,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.rels == other.rels
    }
}

impl PresentedModule {
    pub fn new(ring: Arc<Ring>, gens: usize, rels: Matrix) -> Result<PresentedModule> {
        rels.check_dims(gens, rels.cols)?;
        Ok(PresentedModule { ring, gens, rels })
    }

    pub fn free(ring: Arc<Ring>, rank: usize) -> PresentedModule {
        let rels = Matrix::zero(ring.clone(), rank, 0);
        PresentedModule { ring, gens: rank, rels }
    }

    pub fn zero(ring: Arc<Ring>) -> PresentedModule {
        PresentedModule::free(ring, 0)
    }

    /// Cokernel of a matrix: the target free module modulo the columns.
    pub fn cokernel(a: &Matrix) -> PresentedModule {
        PresentedModule {
            ring: a.ring.clone(),
            gens: a.rows,
            rels: a.clone(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        if self.gens == 0 {
            return true;
        }
        contains_columns(&self.rels, &Matrix::identity(self.ring.clone(), self.gens))
    }

    /// coker(rels) is projective iff rels has a generalized inverse.
    pub fn is_projective(&self) -> bool {
        has_generalized_inverse(&self.rels)
    }

    /// Class of a column vector is zero in the module.
    pub fn element_is_zero(&self, v: &Matrix) -> bool {
        contains_columns(&self.rels, v)
    }

    /// Direct sum with generator bookkeeping (self gens first).
    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            gens: self.gens + other.gens,
            rels: self.rels.direct_sum(&other.rels),
        }
    }

    /// k-dimension over the base field for artinian kinds (fields and finite
    /// algebras); None for other kinds.
    pub fn k_dimension(&self) -> Option<usize> {
        match &self.ring.kind {
            RingKind::QuotientAlgebra(d) => {
                let dim = d.dim();
                let expanded = expand_algebra_columns(&self.rels);
                Some(self.gens * dim - matrix_rank_field(&expanded))
            }
            _ if self.ring.flags.is_field => {
                Some(self.gens - matrix_rank_field(&self.rels))
            }
            _ => None,
        }
    }

    /// Isomorphism-invariant fingerprint used to compare modules without
    /// constructing maps: Smith diagonal over euclidean kinds, base-field
    /// dimension over artinian kinds.
    pub fn invariant(&self) -> ModuleInvariant {
        match &self.ring.kind {
            RingKind::Integers | RingKind::UnivariatePoly { .. } => {
                let s = smith(&self.rels);
                let mut torsion = vec![];
                let mut unit_count = 0;
                for i in 0..s.rank {
                    if self.ring.is_unit(s.diag(i)) {
                        unit_count += 1;
                    } else {
                        torsion.push(self.ring.format(s.diag(i)));
                    }
                }
                let free = self.gens - unit_count - torsion.len();
                ModuleInvariant::FreeTorsion { free, torsion }
            }
            _ if self.k_dimension().is_some() => {
                ModuleInvariant::Dimension(self.k_dimension().unwrap())
            }
            _ => {
                // polynomial rings: fall back to a reduced presentation signature
                let c = self.canonicalize();
                ModuleInvariant::Presentation {
                    gens: c.module.gens,
                    rels: (0..c.module.rels.cols)
                        .map(|j| {
                            (0..c.module.rels.rows)
                                .map(|i| self.ring.format(c.module.rels.at(i, j)))
                                .collect()
                        })
                        .collect(),
                }
            }
        }
    }

    /// Canonical presentation together with the change-of-generators maps.
    pub fn canonicalize(&self) -> Canonicalized {
        match &self.ring.kind {
            RingKind::Integers | RingKind::UnivariatePoly { .. } => self.canonicalize_euclidean(),
            RingKind::QuotientAlgebra(_) => self.canonicalize_units(),
            _ if self.ring.flags.is_field => self.canonicalize_units(),
            RingKind::PolyRing { .. } => {
                // eliminate unit pivots first, then keep a reduced module basis
                // of the remaining relation span
                let stage = self.canonicalize_units();
                let rels = reduced_relation_basis(&stage.module.rels);
                Canonicalized {
                    module: PresentedModule {
                        ring: self.ring.clone(),
                        gens: stage.module.gens,
                        rels,
                    },
                    to_canonical: stage.to_canonical,
                    from_canonical: stage.from_canonical,
                }
            }
            _ => unreachable!("roster kind not covered"),
        }
    }

    fn canonicalize_euclidean(&self) -> Canonicalized {
        let ring = self.ring.clone();
        let s = smith(&self.rels);
        // coker(rels) = coker(D) in coordinates y = U x
        let n = self.rels.rows.min(self.rels.cols);
        let keep: Vec<usize> = (0..self.gens)
            .filter(|&i| !(i < n && ring.is_unit(s.d.at(i, i))))
            .collect();
        let mut diag_entries: Vec<Elem> = vec![];
        for &i in &keep {
            if i < n && !ring.is_zero(s.d.at(i, i)) {
                diag_entries.push(s.d.at(i, i).clone());
            }
        }
        let mut rels = Matrix::zero(ring.clone(), keep.len(), diag_entries.len());
        let mut col = 0;
        for (r, &i) in keep.iter().enumerate() {
            if i < n && !ring.is_zero(s.d.at(i, i)) {
                rels.set(r, col, s.d.at(i, i).clone());
                col += 1;
            }
        }
        let mut to_canonical = s.u.select_rows(&keep);
        let uinv = solve_once(&s.u, &Matrix::identity(ring.clone(), self.gens))
            .expect("transform is invertible");
        let mut from_canonical = uinv.select_columns(&keep);
        // normalize generator signs: first nonzero entry of each generator
        // column becomes the preferred associate
        for j in 0..from_canonical.cols {
            if let Some(first) =
                (0..from_canonical.rows).find(|&r| !ring.is_zero(from_canonical.at(r, j)))
            {
                let (unit, _) = ring.normalize_assoc(from_canonical.at(first, j));
                if !ring.is_zero(&ring.sub(&unit, &ring.one())) {
                    let ui = ring.inv(&unit).expect("associate unit");
                    for r in 0..from_canonical.rows {
                        let v = ring.mul(&ui, from_canonical.at(r, j));
                        from_canonical.set(r, j, v);
                    }
                    for c in 0..to_canonical.cols {
                        let v = ring.mul(&unit, to_canonical.at(j, c));
                        to_canonical.set(j, c, v);
                    }
                }
            }
        }
        Canonicalized {
            module: PresentedModule {
                ring,
                gens: keep.len(),
                rels,
            },
            to_canonical,
            from_canonical,
        }
    }

    /// Eliminate generators against unit pivots in the relations. Over fields
    /// this removes every relation; over local algebras it yields a minimal
    /// presentation (all remaining entries in the maximal ideal).
    fn canonicalize_units(&self) -> Canonicalized {
        let ring = self.ring.clone();
        let mut rels = self.rels.clone();
        // to_new expresses original generators through the current generator list
        let mut to_new = Matrix::identity(ring.clone(), self.gens);
        let mut from_new = Matrix::identity(ring.clone(), self.gens);
        loop {
            let mut pivot = None;
            'search: for j in 0..rels.cols {
                for i in 0..rels.rows {
                    if ring.is_unit(rels.at(i, j)) {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            let inv = ring.inv(rels.at(pi, pj)).unwrap();
            // normalize the pivot column so the pivot entry is 1
            let pcol = rels.column(pj).scale(&inv);
            // gen pi = -(sum of other entries of pcol) in the quotient
            // substitute into every other relation column
            let mut new_rels = Matrix::zero(ring.clone(), rels.rows - 1, rels.cols - 1);
            let rows_keep: Vec<usize> = (0..rels.rows).filter(|&r| r != pi).collect();
            let mut cc = 0;
            for j in 0..rels.cols {
                if j == pj {
                    continue;
                }
                let factor = rels.at(pi, j).clone();
                for (rr, &r) in rows_keep.iter().enumerate() {
                    let v = ring.sub(rels.at(r, j), &ring.mul(&factor, pcol.at(r, 0)));
                    new_rels.set(rr, cc, v);
                }
                cc += 1;
            }
            // substitution matrix: old gens -> kept gens
            let mut subst = Matrix::zero(ring.clone(), rels.rows - 1, rels.rows);
            for (rr, &r) in rows_keep.iter().enumerate() {
                subst.set(rr, r, ring.one());
            }
            for (rr, &r) in rows_keep.iter().enumerate() {
                // e_pi maps to -pcol restricted to kept rows
                subst.set(rr, pi, ring.neg(pcol.at(r, 0)));
            }
            // inclusion of kept gens back
            let mut incl = Matrix::zero(ring.clone(), rels.rows, rels.rows - 1);
            for (rr, &r) in rows_keep.iter().enumerate() {
                incl.set(r, rr, ring.one());
            }
            to_new = subst.mul(&to_new);
            from_new = from_new.mul(&incl);
            rels = new_rels;
        }
        // drop zero relation columns
        let nonzero: Vec<usize> = (0..rels.cols)
            .filter(|&j| !rels.column(j).is_zero())
            .collect();
        let rels = rels.select_columns(&nonzero);
        Canonicalized {
            module: PresentedModule {
                ring: self.ring.clone(),
                gens: to_new.rows,
                rels,
            },
            to_canonical: to_new,
            from_canonical: from_new,
        }
    }

    /// A deterministic minimal generating column matrix S (gens x g') such that
    /// the classes of the columns of S generate the module, minimal over local
    /// and euclidean kinds.
    pub fn minimal_generator_columns(&self) -> Matrix {
        let ring = self.ring.clone();
        match &ring.kind {
            RingKind::Integers | RingKind::UnivariatePoly { .. } => {
                let c = self.canonicalize_euclidean();
                c.from_canonical
            }
            RingKind::QuotientAlgebra(_) | RingKind::PolyRing { .. } => {
                let c = self.canonicalize_units();
                c.from_canonical
            }
            _ if ring.flags.is_field => {
                let c = self.canonicalize_units();
                c.from_canonical
            }
            _ => Matrix::identity(ring, self.gens),
        }
    }

    /// Re-present the module on the generator set given by the columns of S.
    /// The caller asserts that the classes of S generate.
    pub fn re_present(&self, s: &Matrix) -> Result<PresentedModule> {
        if !contains_columns(
            &s.hcat(&self.rels),
            &Matrix::identity(self.ring.clone(), self.gens),
        ) {
            return Err(Error::arg("proposed columns do not generate the module"));
        }
        let rels = map::preimage_gens(s, &self.rels);
        Ok(PresentedModule {
            ring: self.ring.clone(),
            gens: s.cols,
            rels,
        })
    }

    /// Torsion submodule for euclidean kinds (Smith diagonal part) and artinian
    /// local kinds (zero, every non-unit is a zero divisor there).
    pub fn torsion_submodule(&self) -> Result<PresentedModule> {
        match &self.ring.kind {
            RingKind::Integers | RingKind::UnivariatePoly { .. } => {
                let c = self.canonicalize_euclidean();
                // canonical rels is a diagonal of non-units; the torsion part is
                // the generators hit by a nonzero diagonal entry
                let m = &c.module;
                let mut torsion_rows = vec![];
                for j in 0..m.rels.cols {
                    for i in 0..m.gens {
                        if !self.ring.is_zero(m.rels.at(i, j)) {
                            torsion_rows.push(i);
                        }
                    }
                }
                torsion_rows.sort_unstable();
                torsion_rows.dedup();
                let rels = m.rels.select_rows(&torsion_rows);
                Ok(PresentedModule {
                    ring: self.ring.clone(),
                    gens: torsion_rows.len(),
                    rels,
                })
            }
            _ if self.ring.flags.is_field => Ok(PresentedModule::zero(self.ring.clone())),
            RingKind::QuotientAlgebra(_) => Ok(PresentedModule::zero(self.ring.clone())),
            _ => Err(Error::unsupported(format!(
                "torsion submodule over {}",
                self.ring.name
            ))),
        }
    }

    /// Free rank of a projective module over local/euclidean kinds, where
    /// projective modules are free: the canonical presentation must be
    /// relation-free, otherwise None.
    pub fn free_rank(&self) -> Option<usize> {
        let c = self.canonicalize();
        if c.module.rels.cols == 0 || c.module.rels.is_zero() {
            Some(c.module.gens)
        } else {
            None
        }
    }
}

/// Change-of-presentation data: `to_canonical * from_canonical = id` on the
/// canonical generators, both matrices inducing mutually inverse maps.
pub struct Canonicalized {
    pub module: PresentedModule,
    /// canonical gens x original gens.
    pub to_canonical: Matrix,
    /// original gens x canonical gens.
    pub from_canonical: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleInvariant {
    FreeTorsion { free: usize, torsion: Vec<String> },
    Dimension(usize),
    Presentation { gens: usize, rels: Vec<Vec<String>> },
}

impl ModuleInvariant {
    pub fn is_zero(&self) -> bool {
        match self {
            ModuleInvariant::FreeTorsion { free, torsion } => *free == 0 && torsion.is_empty(),
            ModuleInvariant::Dimension(d) => *d == 0,
            ModuleInvariant::Presentation { gens, .. } => *gens == 0,
        }
    }
}

impl std::fmt::Display for ModuleInvariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuleInvariant::FreeTorsion { free, torsion } => {
                write!(f, "free^{free}")?;
                for t in torsion {
                    write!(f, " + R/({t})")?;
                }
                Ok(())
            }
            ModuleInvariant::Dimension(d) => write!(f, "dim {d}"),
            ModuleInvariant::Presentation { gens, rels } => {
                write!(f, "gens {gens}, rels {}", rels.len())
            }
        }
    }
}

/// Rank of a matrix over a field kind.
fn matrix_rank_field(a: &Matrix) -> usize {
    let ring = a.ring.clone();
    let mut m = a.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pr) = (rank..m.rows).find(|&r| !ring.is_zero(m.at(r, col))) else {
            continue;
        };
        if pr != rank {
            for j in 0..m.cols {
                let x = m.at(rank, j).clone();
                let y = m.at(pr, j).clone();
                m.set(rank, j, y);
                m.set(pr, j, x);
            }
        }
        let inv = ring.inv(m.at(rank, col)).expect("field pivot");
        for j in 0..m.cols {
            let v = ring.mul(&inv, m.at(rank, j));
            m.set(rank, j, v);
        }
        for r in 0..m.rows {
            if r != rank && !ring.is_zero(m.at(r, col)) {
                let f = m.at(r, col).clone();
                for j in 0..m.cols {
                    let t = ring.mul(&f, m.at(rank, j));
                    let v = ring.sub(m.at(r, j), &t);
                    m.set(r, j, v);
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Expand a matrix over a finite algebra into base-field columns spanning the
/// same subspace (image of the base-field extension of scalars).
fn expand_algebra_columns(a: &Matrix) -> Matrix {
    let d = a.ring.algebra().expect("algebra ring");
    let base = match &d.base {
        crate::ring::BaseField::Prime(p) => Ring::prime_field(*p).unwrap(),
        crate::ring::BaseField::Rationals => Ring::rationals(),
    };
    let m = d.dim();
    Matrix::from_fn(base, a.rows * m, a.cols * m, |i, j| {
        let (ia, ib) = (i / m, i % m);
        let (ja, jb) = (j / m, j % m);
        let grid = d.mult_matrix(match a.at(ia, ja) {
            Elem::Quot(v) => v,
            _ => panic!("algebra entry"),
        });
        match &grid[ib][jb] {
            crate::ring::FieldElem::Fp(x) => Elem::Fp(*x),
            crate::ring::FieldElem::Rat(r) => Elem::Rat(r.clone()),
        }
    })
}

/// Reduced generating basis of a column span over polynomial rings
/// (deterministic); the ambient free module is unchanged.
pub fn reduced_relation_basis(rels: &Matrix) -> Matrix {
    if rels.cols == 0 {
        return rels.clone();
    }
    use crate::ring::groebner::{module_groebner, reduce_basis, PolyCtx, VPoly};
    let ctx = PolyCtx::of(&rels.ring);
    let gens: Vec<VPoly> = (0..rels.cols)
        .map(|j| VPoly {
            comps: (0..rels.rows)
                .map(|i| match rels.at(i, j) {
                    Elem::MPoly(p) => p.clone(),
                    _ => panic!("poly entry"),
                })
                .collect(),
        })
        .collect();
    let (gb, _) = module_groebner(&gens, &ctx, false);
    let red = reduce_basis(gb, &ctx);
    let mut out = Matrix::zero(rels.ring.clone(), rels.rows, red.len());
    for (j, v) in red.iter().enumerate() {
        for (i, c) in v.comps.iter().enumerate() {
            out.set(i, j, Elem::MPoly(c.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::standard;

    #[test]
    fn cokernel_examples() {
        let z = Ring::integers();
        // coker([1]) = 0
        let m = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[1]));
        assert!(m.is_zero_module());
        // coker([2]) = Z/2
        let m2 = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[2]));
        assert!(!m2.is_zero_module());
        assert_eq!(
            m2.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
        assert!(!m2.is_projective());
        assert!(PresentedModule::free(z.clone(), 3).is_projective());
    }

    #[test]
    fn fat_point_cokernel_dimension() {
        // coker of R -> R^2, 1 |-> (x, y) over F2[x,y]/(x^2,xy,y^2): dim 6-1 = 5
        let r = standard::fat_point(2);
        let x = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let y = crate::ring::parse::parse_elem(&r, "y").unwrap();
        let a = Matrix::new(r.clone(), 2, 1, vec![x, y]);
        let m = PresentedModule::cokernel(&a);
        assert_eq!(m.k_dimension(), Some(5));
    }

    #[test]
    fn canonical_form_euclidean() {
        let z = Ring::integers();
        // Z^2 / <(2,0),(0,1)> = Z/2
        let a = Matrix::from_i64(z.clone(), 2, 2, &[2, 0, 0, 1]);
        let m = PresentedModule::cokernel(&a);
        let c = m.canonicalize();
        assert_eq!(c.module.gens, 1);
        assert_eq!(
            c.module.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
    }

    #[test]
    fn minimal_presentation_local() {
        // over F2[x]/(x^2): R^2 / <(1, x), (0, x)> : first gen eliminable
        let r = standard::truncated_poly(2, 2);
        let x = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let rels = Matrix::new(
            r.clone(),
            2,
            2,
            vec![r.one(), r.zero(), x.clone(), x.clone()],
        );
        let m = PresentedModule::cokernel(&rels);
        let c = m.canonicalize();
        assert_eq!(c.module.gens, 1);
        // all remaining entries lie in the maximal ideal
        for e in c.module.rels.entries() {
            assert!(r.in_max_ideal(e));
        }
        // k-dimension is preserved
        assert_eq!(m.k_dimension(), c.module.k_dimension());
    }

    #[test]
    fn torsion_of_mixed_module() {
        let z = Ring::integers();
        // Z + Z/4
        let a = Matrix::from_i64(z.clone(), 2, 1, &[4, 0]);
        let m = PresentedModule::cokernel(&a);
        let t = m.torsion_submodule().unwrap();
        assert_eq!(
            t.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["4".into()] }
        );
    }
}
