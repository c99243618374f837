use invariants::{
    euler_characteristic, homology_boundary_exterior, homology_branched_cover, homology_circle_bundle,
    homology_circle_bundle_cover, homology_exterior, zz2_homology_exterior,
};

#[test]
fn euler_characteristics() {
    for h in 1..=10 {
        // Three-manifolds have vanishing Euler characteristic.
        for e in [-3, 0, 1, 4] {
            assert_eq!(euler_characteristic(&homology_circle_bundle(h, e, true).unwrap()), 0);
            assert_eq!(euler_characteristic(&homology_circle_bundle(h, e, false).unwrap()), 0);
        }
        assert_eq!(euler_characteristic(&homology_boundary_exterior(h).unwrap()), 0);
        // χ(exterior) = χ(D⁴) − χ(F) = 1 − (1 − h) = h.
        assert_eq!(euler_characteristic(&homology_exterior(h).unwrap()), h as i64);
        // χ(branched cover) = 2χ(D⁴) − χ(F).
        assert_eq!(euler_characteristic(&homology_branched_cover(h).unwrap()), 2 - (1 - h as i64));
    }
}

#[test]
fn universal_cover_rank() {
    for h in 1..=10 {
        let b2 = homology_exterior(h).unwrap().get(&2).map_or(0, |g| g.free_rank());
        let cover = zz2_homology_exterior(h).unwrap()[&2];
        assert_eq!(cover.underlying().free_rank(), 2 * b2 + 1);
        // Rationally, the invariant part recovers the base.
        assert_eq!(cover.eigenranks().0, b2);
        // The branched cover drops the rank-(h-1) boundary contribution.
        let branched = homology_branched_cover(h).unwrap()[&2].free_rank();
        assert_eq!(branched, cover.underlying().free_rank() - (h - 1));
    }
}

#[test]
fn cover_of_bundle_is_bundle_of_half_euler_number() {
    for h in 1..=6 {
        for x in -3i64..=3 {
            assert_eq!(
                homology_circle_bundle_cover(h, 2 * x, false).unwrap(),
                homology_circle_bundle(h, x, false).unwrap()
            );
            assert_eq!(
                homology_circle_bundle_cover(h, 2 * x, true).unwrap(),
                homology_circle_bundle(h, 0, true).unwrap()
            );
        }
    }
}
