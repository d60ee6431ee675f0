//! Localization at the total quotient ring: entrywise base change of
//! complexes and the vanishing transfer from the localized side back to R.

use super::star::star_certificate;
use crate::complex::homotopy::{is_null_homotopic, NullHomotopyReport};
use crate::complex::{ChainMap, Complex, DEFAULT_TRUNCATION_MARGIN};
use crate::error::Result;
use crate::ring::Ring;
use std::sync::Arc;

pub fn localize_complex(x: &Complex) -> Result<Complex> {
    let target = x.ring.total_quotient_ring()?;
    Ok(localize_into(x, &target))
}

fn localize_into(x: &Complex, target: &Arc<Ring>) -> Complex {
    let diffs = x
        .diffs
        .iter()
        .map(|m| m.map_ring(target.clone(), |e| x.ring.localize_elem(target, e)))
        .collect();
    Complex {
        ring: target.clone(),
        lo: x.lo,
        ranks: x.ranks.clone(),
        diffs,
        left_period: x.left_period,
        right_period: x.right_period,
    }
}

pub fn localize_map(f: &ChainMap) -> Result<ChainMap> {
    let target = f.source.ring.total_quotient_ring()?;
    let src = localize_into(&f.source, &target);
    let tgt = localize_into(&f.target, &target);
    let comps = f
        .comps
        .iter()
        .map(|m| m.map_ring(target.clone(), |e| f.source.ring.localize_elem(&target, e)))
        .collect();
    Ok(ChainMap {
        source: src,
        target: tgt,
        degree: f.degree,
        lo: f.lo,
        comps,
        left_period: f.left_period,
        right_period: f.right_period,
    })
}

/// Report for the generic-vanishing transfer: when X is *torsion-free, F lies
/// in Add(R), and the localized map vanishes in the homotopy category over the
/// total quotient ring, the map vanishes over R; both sides are verified and
/// the homotopy witness over R is returned.
#[derive(Debug)]
pub struct GenericVanishReport {
    pub source_torsion_free: bool,
    pub target_is_add: bool,
    pub localized_null: Option<NullHomotopyReport>,
    pub global_null: Option<NullHomotopyReport>,
}

impl GenericVanishReport {
    /// The implication asserted by the transfer holds for this instance.
    pub fn holds(&self) -> bool {
        let hyp = self.source_torsion_free
            && self.target_is_add
            && self
                .localized_null
                .as_ref()
                .is_some_and(|r| r.homotopy.is_some());
        if !hyp {
            return true;
        }
        self.global_null
            .as_ref()
            .is_some_and(|r| r.homotopy.is_some())
    }
}

pub fn generic_vanish_check(f: &ChainMap) -> Result<GenericVanishReport> {
    let cert = star_certificate(&f.source)?;
    let target_is_add = super::is_add_object(&f.target);
    let lf = localize_map(f)?;
    let localized_null = is_null_homotopic(&lf, DEFAULT_TRUNCATION_MARGIN)?;
    let global_null = is_null_homotopic(f, DEFAULT_TRUNCATION_MARGIN)?;
    Ok(GenericVanishReport {
        source_torsion_free: cert.torsion_free(),
        target_is_add,
        localized_null: Some(localized_null),
        global_null: Some(global_null),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;
    use crate::stable::AddObject;

    #[test]
    fn localize_two_term_over_z() {
        let z = Ring::integers();
        let x = Complex::bounded(
            z.clone(),
            0,
            vec![1, 1],
            vec![Matrix::from_i64(z, 1, 1, &[2])],
        )
        .unwrap();
        let lx = localize_complex(&x).unwrap();
        assert_eq!(lx.ring.name, "Q");
        // over Q the complex is acyclic and hence stably trivial
        assert!(lx.is_acyclic());
    }

    #[test]
    fn vanishing_transfer_on_zero_map() {
        let z = Ring::integers();
        let f_obj = AddObject::from_ranks(z.clone(), 0, vec![1]).0;
        let x = Complex::bounded(
            z.clone(),
            0,
            vec![1, 1],
            vec![Matrix::from_i64(z.clone(), 1, 1, &[2])],
        )
        .unwrap();
        let f = ChainMap::zero(&x, &f_obj, 0);
        let rep = generic_vanish_check(&f).unwrap();
        assert!(rep.holds());
    }
}
