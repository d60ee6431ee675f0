//! Koszul tensoring: X (x) K(a) realized as the cone of multiplication by a.

use super::cone::cone;
use super::{ChainMap, Complex};
use crate::error::Result;
use crate::ring::{Elem, Matrix};

/// Multiplication by a ring element as a chain self-map.
pub fn multiplication_map(x: &Complex, a: &Elem) -> ChainMap {
    let ring = x.ring.clone();
    ChainMap::over_source_layout(x, x, 0, |d| {
        Matrix::identity(ring.clone(), x.rank(d)).scale(a)
    })
    .expect("scalar multiplication commutes with differentials")
}

/// X (x) K(a_1, ..., a_r) by iterated cones of the multiplication triangles
/// X -a-> X -> X'.
pub fn koszul_tensor(x: &Complex, elements: &[Elem]) -> Result<Complex> {
    let mut acc = x.clone();
    for a in elements {
        let f = multiplication_map(&acc, a);
        acc = cone(&f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology::cohomology;
    use crate::complex::tests::two_term_z;
    use crate::module::ModuleInvariant;
    use crate::ring::Ring;

    #[test]
    fn koszul_of_point_is_two_term() {
        let z = Ring::integers();
        let pt = Complex::concentrated(z.clone(), 0, 1);
        let k = koszul_tensor(&pt, &[Elem::int(5)]).unwrap();
        // cone of (5): degrees (-1, 0) with differential 5... cone of f: X->X
        // has X^{d+1} (+) X^d; here ranks 1 at degrees -1, 0
        assert_eq!(k.rank(-1), 1);
        assert_eq!(k.rank(0), 1);
        let h0 = cohomology(&k, 0);
        assert_eq!(
            h0.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["5".into()] }
        );
    }

    #[test]
    fn koszul_long_exact_consistency() {
        // H of X (x) K(3) for X = [Z -2-> Z]: the multiplication triangle gives
        // 0 -> H^i(X)/3 -> H^i(X') -> ann_3 H^{i+1}(X) -> 0;
        // H^0(X) = 0, H^1(X) = Z/2: H^1(X') = Z/2 /3 = Z/2, H^0(X') = ann_3(Z/2) = 0...
        // compute both sides directly
        let x = two_term_z(2);
        // multiplication by 3 is an isomorphism on H^1(X) = Z/2, so the long
        // exact sequence of the multiplication triangle forces acyclicity
        let xk = koszul_tensor(&x, &[Elem::int(3)]).unwrap();
        assert!(xk.is_acyclic());
        // multiplication by 2 is zero on Z/2: both H^0 and H^1 pick up 2-torsion
        let xk2 = koszul_tensor(&x, &[Elem::int(2)]).unwrap();
        let h0 = cohomology(&xk2, 0);
        let h1 = cohomology(&xk2, 1);
        assert_eq!(
            h0.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
        assert_eq!(
            h1.invariant(),
            ModuleInvariant::FreeTorsion { free: 0, torsion: vec!["2".into()] }
        );
    }
}
