//! Homology of the spaces attached to a nonorientable surface `F` of genus
//! `h` in the 4-ball with normal Euler number `e`.
//!
//! Each table lists the nonzero groups by degree.

use std::collections::BTreeMap;

use crate::{DecoratedModule, FinAbGroup, InvariantsError, Result};

pub type HomologyTable = BTreeMap<usize, FinAbGroup>;

fn check_genus(h: usize) -> Result<()> {
    if h == 0 {
        Err(InvariantsError::InvalidGenus)
    } else {
        Ok(())
    }
}

fn half_even(e: i64) -> Result<i64> {
    if e % 2 != 0 {
        return Err(InvariantsError::OddEulerNumber(e));
    }
    Ok(e / 2)
}

fn table(entries: impl IntoIterator<Item = (usize, FinAbGroup)>) -> HomologyTable {
    entries.into_iter().filter(|(_, g)| !g.is_trivial()).collect()
}

/// `Z/4` for odd Euler numbers, `Z/2 ⊕ Z/2` for even ones.
fn fibre_torsion(e: i64) -> Vec<u64> {
    if e % 2 != 0 {
        vec![4]
    } else {
        vec![2, 2]
    }
}

/// The circle bundle of Euler number `e` over the closed surface, or over
/// the surface with a disc removed.
pub fn homology_circle_bundle(h: usize, e: i64, punctured: bool) -> Result<HomologyTable> {
    check_genus(h)?;
    Ok(if punctured {
        table([(0, FinAbGroup::free(1)), (1, FinAbGroup::new(h, &[2])), (2, FinAbGroup::free(h - 1))])
    } else {
        table([
            (0, FinAbGroup::free(1)),
            (1, FinAbGroup::new(h - 1, &fibre_torsion(e))),
            (2, FinAbGroup::free(h - 1)),
            (3, FinAbGroup::free(1)),
        ])
    })
}

/// The double cover of the circle bundle unwrapping the fibre, for even `e`.
/// It is again a circle bundle, with Euler number `e/2`.
pub fn homology_circle_bundle_cover(h: usize, e: i64, punctured: bool) -> Result<HomologyTable> {
    homology_circle_bundle(h, euler_number_double_cover(e)?, punctured)
}

/// The boundary of the surface exterior. It does not depend on the knot.
pub fn homology_boundary_exterior(h: usize) -> Result<HomologyTable> {
    check_genus(h)?;
    homology_circle_bundle(h, 0, false)
}

/// The double cover of the boundary of the exterior, given `H₁` of the
/// double branched cover of the boundary knot.
pub fn boundary_universal_cover(h: usize, e: i64, h1_sigma2k: &FinAbGroup) -> Result<HomologyTable> {
    check_genus(h)?;
    let x = half_even(e)?;
    let mut t = homology_circle_bundle(h, x, false)?;
    let h1 = t.remove(&1).unwrap_or_default().direct_sum(h1_sigma2k);
    t.insert(1, h1);
    Ok(t)
}

/// The surface exterior.
pub fn homology_exterior(h: usize) -> Result<HomologyTable> {
    check_genus(h)?;
    Ok(table([(0, FinAbGroup::free(1)), (1, FinAbGroup::new(0, &[2])), (2, FinAbGroup::free(h - 1))]))
}

/// Homology of the exterior with group-ring coefficients, i.e. of its
/// universal (double) cover as a module.
pub fn zz2_homology_exterior(h: usize) -> Result<BTreeMap<usize, DecoratedModule>> {
    check_genus(h)?;
    Ok(BTreeMap::from([
        (0, DecoratedModule { plus: 1, ..Default::default() }),
        (2, DecoratedModule { minus: 1, free: h - 1, ..Default::default() }),
    ]))
}

/// The double branched cover of the 4-ball along the surface.
pub fn homology_branched_cover(h: usize) -> Result<HomologyTable> {
    check_genus(h)?;
    Ok(table([(0, FinAbGroup::free(1)), (2, FinAbGroup::free(h))]))
}

/// `H₂` of the double branched cover with its deck action: `T` acts by `−1`.
pub fn branched_cover_module(h: usize) -> Result<DecoratedModule> {
    check_genus(h)?;
    Ok(DecoratedModule { minus: h, ..Default::default() })
}

/// Euler number of the bundle on the double cover, half that of the base.
pub fn euler_number_double_cover(e: i64) -> Result<i64> {
    half_even(e)
}

/// Alternating sum of Betti numbers.
pub fn euler_characteristic(t: &HomologyTable) -> i64 {
    t.iter().map(|(&d, g)| if d % 2 == 0 { 1 } else { -1 } * g.free_rank() as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, torsion: &[u64]) -> FinAbGroup {
        FinAbGroup::new(free, torsion)
    }

    #[test]
    fn circle_bundles() {
        let t = homology_circle_bundle(1, 1, false).unwrap();
        assert_eq!(t[&1], g(0, &[4]));
        let t = homology_circle_bundle(2, 2, false).unwrap();
        assert_eq!(t[&1], g(1, &[2, 2]));
        let t = homology_circle_bundle(3, 0, true).unwrap();
        assert_eq!((t[&1].clone(), t[&2].clone()), (g(3, &[2]), g(2, &[])));
        assert!(!homology_circle_bundle(1, 0, true).unwrap().contains_key(&2));
    }

    #[test]
    fn exterior_and_covers() {
        assert!(!homology_exterior(1).unwrap().contains_key(&2));
        assert_eq!(homology_exterior(5).unwrap()[&2], g(4, &[]));
        assert_eq!(zz2_homology_exterior(1).unwrap()[&2].to_string(), "Z-");
        assert_eq!(zz2_homology_exterior(4).unwrap()[&2].to_string(), "Z- + Z[Z2]^3");
        assert_eq!(homology_branched_cover(3).unwrap()[&2], g(3, &[]));
        assert_eq!(branched_cover_module(2).unwrap().to_string(), "Z-^2");
    }

    #[test]
    fn boundary_tables() {
        let t = homology_boundary_exterior(2).unwrap();
        assert_eq!((t[&1].clone(), t[&2].clone()), (g(1, &[2, 2]), g(1, &[])));
        let trivial = FinAbGroup::trivial();
        assert_eq!(boundary_universal_cover(1, 2, &trivial).unwrap()[&1], g(0, &[4]));
        assert_eq!(boundary_universal_cover(1, 4, &trivial).unwrap()[&1], g(0, &[2, 2]));
        assert_eq!(boundary_universal_cover(2, 2, &g(0, &[3])).unwrap()[&1], g(1, &[4, 3]));
        assert_eq!(boundary_universal_cover(1, 3, &trivial), Err(InvariantsError::OddEulerNumber(3)));
    }

    #[test]
    fn double_cover_euler_number() {
        assert_eq!(euler_number_double_cover(-2).unwrap(), -1);
        assert_eq!(euler_number_double_cover(0).unwrap(), 0);
        assert!(euler_number_double_cover(5).is_err());
    }
}
