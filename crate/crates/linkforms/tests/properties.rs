use exactmat::{det, BigInt, IntMatrix};
use linkforms::{automorphisms, baut, boundary_form, BautOptions, SearchOptions};
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use zforms::{aut_group, x_form, QuadFormZ};

fn square(n: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(n, n, &entries[..n * n])
}

fn nondegenerate_form() -> impl Strategy<Value = QuadFormZ> {
    (1usize..=4, prop::collection::vec(-8i64..=8, 16))
        .prop_map(|(n, e)| QuadFormZ::new(square(n, &e)).unwrap())
        .prop_filter("nondegenerate", |t| t.symmetrize().is_nondegenerate())
}

/// Products of a few elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i != j {
                m.add_row_multiple(i, j, &BigInt::from(k));
            }
        }
        m
    })
}

fn definite_form() -> impl Strategy<Value = QuadFormZ> {
    prop_oneof![
        (1i64..=12).prop_map(|t| QuadFormZ::new(IntMatrix::from_rows(&[[t]])).unwrap()),
        (1i64..=3).prop_map(|n| x_form(n).scale(2)),
        (1i64..=6, 1i64..=6, -2i64..=2)
            .prop_map(|(a, b, c)| { QuadFormZ::new(IntMatrix::from_rows(&[[2 * a + 2, c], [0, 2 * b + 2]])).unwrap() }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_form_is_a_split_quadratic_linking_form(
        theta in nondegenerate_form(),
        picks in prop::collection::vec((prop::collection::vec(any::<u64>(), 8), 0u64..20), 12),
    ) {
        let b = boundary_form(&theta).unwrap();
        let f = b.form();
        let den = f.denominator() as u128;
        let pick = |raw: &[u64]| -> Vec<u64> { f.factors().iter().zip(raw).map(|(&d, &c)| c % d).collect() };
        for (raw, r) in &picks {
            let (x, y, r) = (pick(&raw[..4]), pick(&raw[4..]), *r);
            let nu = |v: &[u64]| f.nu_num(v) as u128;
            let sum = f.add(&x, &y);
            prop_assert_eq!((nu(&sum) + 2 * den - nu(&x) - nu(&y)) % den, f.b_num(&x, &y) as u128);
            prop_assert_eq!(nu(&f.scale(r, &x)), (r as u128 * r as u128 % den) * nu(&x) % den);
            prop_assert_eq!(2 * nu(&x) % den, f.b_num(&x, &x) as u128);
            prop_assert_eq!(f.b_num(&x, &y), f.b_num(&y, &x));
        }
        // Adding dᵢ to a coordinate changes nothing.
        for i in 0..f.rank() {
            let mut x = pick(&picks[i].0);
            let before = f.nu_num(&x);
            x[i] += f.factors()[i];
            prop_assert_eq!(f.nu_num(&x), before);
        }
    }

    #[test]
    fn group_order_is_the_determinant(theta in nondegenerate_form()) {
        let b = boundary_form(&theta).unwrap();
        let d = det(theta.symmetrize().gram()).unwrap().abs();
        prop_assert_eq!(BigInt::from(b.form().order()), d);
    }

    #[test]
    fn orbit_count_ignores_the_basis(
        (theta, m) in definite_form().prop_flat_map(|t| { let n = t.rank(); (Just(t), unimodular(n)) }),
    ) {
        let moved = theta.transform(&m).unwrap();
        let a = baut(&theta, BautOptions::default()).unwrap();
        let b = baut(&moved, BautOptions::default()).unwrap();
        prop_assert_eq!(a.orbit_count, b.orbit_count);
        prop_assert_eq!(a.aut_link_order(), b.aut_link_order());
        prop_assert_eq!(a.image_order(), b.image_order());
    }
}

#[test]
fn boundary_map_is_multiplicative() {
    for theta in [x_form(3).scale(2), x_form(2).scale(2), x_form(4).scale(2)] {
        let b = boundary_form(&theta).unwrap();
        let auts = aut_group(&theta.symmetrize()).unwrap();
        let f = b.form();
        for g in auts.iter().step_by(5) {
            for h in auts.iter().step_by(7) {
                let lhs = b.boundary_map(&(g * h)).unwrap();
                let rhs = b.boundary_map(g).unwrap().compose(f, &b.boundary_map(h).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn rank_one_automorphisms_are_square_roots_of_one() {
    for theta in 1i64..=12 {
        let t = QuadFormZ::new(IntMatrix::from_rows(&[[theta]])).unwrap();
        let form = boundary_form(&t).unwrap().form().clone();
        let found: Vec<u64> =
            automorphisms(&form, SearchOptions::default()).unwrap().iter().map(|a| a.images()[0][0]).collect();
        let m = 2 * theta as u64;
        let expected: Vec<u64> = (0..m).filter(|&x| x.gcd(&m) == 1 && (x * x) % (4 * theta as u64) == 1).collect();
        assert_eq!(found, expected, "θ = {theta}");
    }
}
