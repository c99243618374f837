use std::collections::BTreeSet;

use exactmat::{cokernel_invariants, det, integer_inverse, BigInt, IntMatrix};
use num_traits::Signed;
use proptest::prelude::*;
use zforms::{aut_group, classify_odd_indefinite, even_sublattice_form, is_isometric, theta_ab, QuadFormZ, SymFormZ};

fn square(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, n * n).prop_map(move |v| IntMatrix::from_i64(n, n, &v))
}

/// Unimodular matrices built from random elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..10).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                u.negate_row(i);
            } else {
                u.add_row_multiple(i, j, &BigInt::from(k));
            }
        }
        u
    })
}

/// Positive definite Gram matrices `MᵀM + D` with small entries.
fn definite(n: usize) -> impl Strategy<Value = SymFormZ> {
    (square(n, 2), prop::collection::vec(1i64..=2, n)).prop_map(move |(m, d)| {
        let g = &m.transpose() * &m;
        SymFormZ::new(&g + &IntMatrix::diagonal(&d)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent_and_skew_blind(q in (1usize..=4).prop_flat_map(|n| (square(n, 5), square(n, 5)))) {
        let (rep, b) = q;
        let form = QuadFormZ::new(rep.clone()).unwrap();
        prop_assert_eq!(form.canonicalized().canonical(), form.canonical());
        let shifted = QuadFormZ::new(&(&rep + &b) - &b.transpose()).unwrap();
        prop_assert_eq!(shifted.canonical(), form.canonical());
        prop_assert_eq!(shifted.symmetrize(), form.symmetrize());
    }

    #[test]
    fn even_sublattice_is_even_of_index_two(diag in prop::collection::vec(prop::sample::select(vec![-1i64, 1]), 1..=5), u in unimodular(5)) {
        let n = diag.len();
        let u = u.submatrix(0, n, 0, n);
        prop_assume!(det(&u).unwrap().abs() == BigInt::from(1));
        let a = SymFormZ::diagonal(&diag).transform(&u).unwrap();
        let (basis, restricted) = even_sublattice_form(&a).unwrap();
        prop_assert!(restricted.symmetrize().is_even());
        prop_assert_eq!(a.transform(&basis).unwrap(), restricted.symmetrize());
        let c = cokernel_invariants(&basis);
        prop_assert_eq!(c.free_rank, 0);
        prop_assert_eq!(c.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn isometry_recovered_from_conjugate(a in (1usize..=3).prop_flat_map(definite), u in unimodular(3)) {
        let n = a.rank();
        let u = u.submatrix(0, n, 0, n);
        prop_assume!(det(&u).unwrap().abs() == BigInt::from(1));
        let b = a.transform(&u).unwrap();
        let m = is_isometric(&a, &b).unwrap().expect("conjugate forms are isometric");
        prop_assert_eq!(&a.gram().congruence(&m).unwrap(), b.gram());
        // Automorphism group orders are a conjugacy invariant.
        prop_assert_eq!(aut_group(&a).unwrap().len(), aut_group(&b).unwrap().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn automorphisms_form_a_group(a in (1usize..=3).prop_flat_map(definite), negate in any::<bool>()) {
        let a = if negate { a.neg() } else { a };
        let g = aut_group(&a).unwrap();
        let set: BTreeSet<Vec<i64>> = g.iter().map(|m| m.to_i64_vec().unwrap()).collect();
        prop_assert_eq!(set.len(), g.len());
        prop_assert!(g.iter().any(IntMatrix::is_identity));
        for x in &g {
            prop_assert_eq!(&a.gram().congruence(x).unwrap(), a.gram());
            let inv = integer_inverse(x).unwrap();
            prop_assert!(set.contains(&inv.to_i64_vec().unwrap()));
            for y in &g {
                prop_assert!(set.contains(&(x * y).to_i64_vec().unwrap()));
            }
        }
    }
}

#[test]
fn theta_family_rank_and_signature() {
    for h in 1..=8usize {
        for a in 0..=h {
            let b = h - a;
            let t = theta_ab(a, b).unwrap();
            let s = t.symmetrize();
            assert_eq!(t.rank(), h);
            assert!(s.is_nondegenerate(), "theta({a},{b}) degenerate");
            assert_eq!(s.signature(), Ok(a as i64 - b as i64));
        }
    }
}

#[test]
fn odd_indefinite_classification() {
    for rank in 2..=8usize {
        for sig in -(rank as i64) + 1..rank as i64 {
            if (rank as i64 - sig) % 2 != 0 {
                assert!(classify_odd_indefinite(rank, sig).is_err());
                continue;
            }
            let f = classify_odd_indefinite(rank, sig).unwrap();
            assert_eq!(f.rank(), rank);
            assert_eq!(f.signature(), Ok(sig));
            assert!(!f.is_even() && !f.is_definite() && f.is_nonsingular());
        }
    }
}
