//! Maps of presented modules and the subquotient presentations behind
//! kernels, images and homology.

use super::PresentedModule;
use crate::error::{Error, Result};
use crate::ring::solve::{contains_columns, kernel_gens, solve_once};
use crate::ring::Matrix;

/// Generators of the preimage {x in R^a : u x lies in span(target_rels)}.
pub fn preimage_gens(u: &Matrix, target_rels: &Matrix) -> Matrix {
    if target_rels.cols == 0 {
        return kernel_gens(u);
    }
    let combined = u.hcat(target_rels);
    let k = kernel_gens(&combined);
    k.block(0, 0, u.cols, k.cols)
}

/// Present span(num)/span(den) on the columns of num; den must lie in span(num).
pub fn present_subquotient(num: &Matrix, den: &Matrix) -> Result<PresentedModule> {
    let expressed = solve_once(num, den)
        .ok_or_else(|| Error::arg("denominator is not contained in the numerator span"))?;
    let syz = kernel_gens(num);
    let rels = expressed.hcat(&syz);
    PresentedModule::new(num.ring.clone(), num.cols, rels)
}

/// Kernel of the induced map coker(src_rels) -> coker(tgt_rels) lifted by `u`.
/// Returns the presentation and the generator columns inside R^{src gens}.
pub fn kernel_of_cokernel_map(
    u: &Matrix,
    src_rels: &Matrix,
    tgt_rels: &Matrix,
) -> Result<(PresentedModule, Matrix)> {
    let g = preimage_gens(u, tgt_rels);
    let m = present_subquotient(&g, src_rels)?;
    Ok((m, g))
}

/// Homology ker(u_out)/im(u_in) of a three-term stretch of a complex of
/// cokernel-presented modules, everything lifted to the free covers:
///
///   coker(rels_prev) --u_in--> coker(rels_here) --u_out--> coker(rels_next)
///
/// Returns the presentation and the numerator generator columns in the middle
/// free cover.
pub fn homology_of_cokernels(
    u_in: &Matrix,
    u_out: &Matrix,
    rels_prev_cols: usize,
    rels_here: &Matrix,
    rels_next: &Matrix,
) -> Result<(PresentedModule, Matrix)> {
    let _ = rels_prev_cols;
    let num = preimage_gens(u_out, rels_next);
    let den = u_in.hcat(rels_here);
    let m = present_subquotient(&num, &den)?;
    Ok((m, num))
}

/// A map of presented modules, recorded on generators.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    /// target.gens x source.gens.
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<ModuleMap> {
        matrix.check_dims(target.gens, source.gens)?;
        let m = ModuleMap { source, target, matrix };
        if !m.is_well_defined() {
            return Err(Error::validation(
                "matrix does not carry source relations into target relations",
            ));
        }
        Ok(m)
    }

    pub fn identity(m: &PresentedModule) -> ModuleMap {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.ring.clone(), m.gens),
        }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> ModuleMap {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zero(source.ring.clone(), target.gens, source.gens),
        }
    }

    pub fn is_well_defined(&self) -> bool {
        if self.source.rels.cols == 0 {
            return true;
        }
        contains_columns(&self.target.rels, &self.matrix.mul(&self.source.rels))
    }

    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        assert_eq!(inner.target.gens, self.source.gens, "composition mismatch");
        ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn is_zero_map(&self) -> bool {
        // every generator image is a relation
        self.target.rels.cols == 0 && self.matrix.is_zero()
            || contains_columns(&self.target.rels, &self.matrix)
            || self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        let g = preimage_gens(&self.matrix, &self.target.rels);
        if g.cols == 0 {
            return true;
        }
        contains_columns(&self.source.rels, &g)
    }

    pub fn is_surjective(&self) -> bool {
        if self.target.gens == 0 {
            return true;
        }
        contains_columns(
            &self.matrix.hcat(&self.target.rels),
            &Matrix::identity(self.matrix.ring.clone(), self.target.gens),
        )
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Presentation of the kernel, with generator columns in the source cover.
    pub fn kernel(&self) -> Result<(PresentedModule, Matrix)> {
        kernel_of_cokernel_map(&self.matrix, &self.source.rels, &self.target.rels)
    }

    /// Presentation of the cokernel.
    pub fn cokernel(&self) -> PresentedModule {
        PresentedModule {
            ring: self.matrix.ring.clone(),
            gens: self.target.gens,
            rels: self.matrix.hcat(&self.target.rels),
        }
    }

    /// Image of the map equals the span of `cols` (classes in the target):
    /// mutual containment modulo target relations.
    pub fn image_equals_span(&self, cols: &Matrix) -> bool {
        let im = self.matrix.hcat(&self.target.rels);
        let sp = cols.hcat(&self.target.rels);
        contains_columns(&im, cols) && contains_columns(&sp, &self.matrix)
    }

    /// An inverse map when the map is bijective; None otherwise.
    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_isomorphism() {
            return None;
        }
        // solve [matrix | tgt_rels] (x; y) = e_j for each target generator
        let aug = self.matrix.hcat(&self.target.rels);
        let sol = solve_once(&aug, &Matrix::identity(self.matrix.ring.clone(), self.target.gens))?;
        let g = sol.block(0, 0, self.source.gens, self.target.gens);
        Some(ModuleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: g,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        let z = Ring::integers();
        // multiplication by 2 on Z/4: kernel = 2Z/4 = Z/2, cokernel = Z/2
        let z4 = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[4]));
        let two = ModuleMap::new(z4.clone(), z4.clone(), Matrix::from_i64(z.clone(), 1, 1, &[2]))
            .unwrap();
        let (ker, _) = two.kernel().unwrap();
        assert_eq!(
            ker.invariant(),
            super::super::ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
        let coker = two.cokernel();
        assert_eq!(
            coker.invariant(),
            super::super::ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
        assert!(!two.is_injective());
        assert!(!two.is_surjective());
    }

    #[test]
    fn iso_with_inverse() {
        let z = Ring::integers();
        let z6 = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[6]));
        // multiplication by 5 is an automorphism of Z/6
        let five = ModuleMap::new(z6.clone(), z6.clone(), Matrix::from_i64(z.clone(), 1, 1, &[5]))
            .unwrap();
        assert!(five.is_isomorphism());
        let inv = five.inverse().unwrap();
        let comp = five.compose(&inv);
        // composite is the identity modulo 6
        let diff = comp.matrix.sub(&Matrix::identity(z.clone(), 1));
        assert!(z6.element_is_zero(&diff));
    }
}
