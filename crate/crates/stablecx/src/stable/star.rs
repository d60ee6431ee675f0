//! Certification of *torsion-free and *reflexive complexes: the primary
//! Ext-vanishing decision with the rho-injectivity cross-check.

use crate::complex::cohomology::rho_map;
use crate::complex::{Complex, DEFAULT_TRUNCATION_MARGIN};
use crate::error::Result;
use crate::module::{functors, PresentedModule};

#[derive(Debug, Clone)]
pub struct StarCertificate {
    /// Ext^1(C^d(X), R) = 0 for every checked degree (the defining criterion
    /// for *torsion-free).
    pub ext1_vanishes: bool,
    /// rho^d injective for every checked degree (independent cross-check).
    pub rho_injective: bool,
    /// rho^d bijective for every checked degree (the *reflexive property).
    pub rho_bijective: bool,
    /// Ext^2(C^d(X), R) = 0 for every checked degree: sufficient for
    /// *reflexivity but not necessary; reported as a diagnostic only.
    pub ext2_vanishes: bool,
    pub degrees: Vec<i64>,
    pub window_certified: bool,
}

impl StarCertificate {
    pub fn torsion_free(&self) -> bool {
        self.ext1_vanishes
    }
    pub fn reflexive(&self) -> bool {
        self.rho_bijective
    }
    /// The two torsion-free decisions agree.
    pub fn routes_agree(&self) -> bool {
        self.ext1_vanishes == self.rho_injective
    }
}

pub fn star_certificate(x: &Complex) -> Result<StarCertificate> {
    let window_certified = !x.is_bounded();
    let xb = if window_certified {
        x.truncate(DEFAULT_TRUNCATION_MARGIN)
    } else {
        x.clone()
    };
    let ring = xb.ring.clone();
    let r = PresentedModule::free(ring.clone(), 1);
    let (lo, hi) = xb.support_hull();
    let degrees: Vec<i64> = (lo..=hi + 1).collect();
    let mut ext1 = true;
    let mut ext2 = true;
    let mut inj = true;
    let mut bij = true;
    for &d in &degrees {
        let c = PresentedModule::cokernel(&xb.diff(d - 1));
        if !functors::ext(&c, &r, 1)?.is_zero_module() {
            ext1 = false;
        }
        if !functors::ext(&c, &r, 2)?.is_zero_module() {
            ext2 = false;
        }
        let rho = rho_map(&xb, &r, d)?;
        if !rho.is_injective() {
            inj = false;
        }
        if !rho.is_isomorphism() {
            bij = false;
        }
    }
    Ok(StarCertificate {
        ext1_vanishes: ext1,
        rho_injective: inj,
        rho_bijective: bij,
        ext2_vanishes: ext2,
        degrees,
        window_certified,
    })
}

pub fn is_star_torsion_free(x: &Complex) -> Result<StarCertificate> {
    star_certificate(x)
}

pub fn is_star_reflexive(x: &Complex) -> Result<StarCertificate> {
    star_certificate(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{standard, Matrix, Ring};

    #[test]
    fn add_objects_are_reflexive() {
        let z = Ring::integers();
        let f = super::super::AddObject::from_ranks(z, -1, vec![2, 1]).0;
        let cert = star_certificate(&f).unwrap();
        assert!(cert.torsion_free() && cert.reflexive() && cert.routes_agree());
    }

    #[test]
    fn truncated_resolution_of_z2_is_not_torsion_free() {
        // X = [Z -2-> Z] in degrees (-1, 0): C^1-side Ext^1(Z/2, Z) = Z/2
        let z = Ring::integers();
        let x = Complex::bounded(
            z.clone(),
            -1,
            vec![1, 1],
            vec![Matrix::from_i64(z, 1, 1, &[2])],
        )
        .unwrap();
        let cert = star_certificate(&x).unwrap();
        assert!(!cert.torsion_free());
        assert!(cert.routes_agree(), "{cert:?}");
    }

    #[test]
    fn gorenstein_dim_zero_everything_reflexive() {
        // over F2[x]/(x^2) every complex is *reflexive
        let r = standard::truncated_poly(2, 2);
        let xel = crate::ring::parse::parse_elem(&r, "x").unwrap();
        let x = Complex::bounded(
            r.clone(),
            0,
            vec![1, 2, 1],
            vec![
                Matrix::new(r.clone(), 2, 1, vec![xel.clone(), r.zero()]),
                Matrix::new(r.clone(), 1, 2, vec![r.zero(), xel.clone()]),
            ],
        )
        .unwrap();
        let cert = star_certificate(&x).unwrap();
        assert!(cert.torsion_free() && cert.reflexive() && cert.routes_agree());
    }

    #[test]
    fn periodic_complex_window_certified() {
        let p = crate::complex::tests::periodic_x_complex();
        let cert = star_certificate(&p).unwrap();
        assert!(cert.window_certified);
        assert!(cert.reflexive());
    }
}
