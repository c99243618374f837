use exactmat::{BigInt, IntMatrix};
use grouprings::{GrElt, GrMatrix, Sign};
use num_integer::Integer;

fn box_elements(bound: i64) -> Vec<GrElt> {
    (-bound..=bound).flat_map(|a| (-bound..=bound).map(move |b| GrElt::new(a, b))).collect()
}

#[test]
fn evaluations_are_ring_homomorphisms() {
    let elems = box_elements(10);
    for x in &elems {
        assert_eq!(x.conj(), *x);
        assert!((x.eval(Sign::Plus) - x.eval(Sign::Minus)).is_even());
        for y in &elems {
            for s in Sign::both() {
                assert_eq!((x * y).eval(s), x.eval(s) * y.eval(s));
                assert_eq!((x + y).eval(s), x.eval(s) + y.eval(s));
            }
        }
    }
}

#[test]
fn multiplication_is_commutative_and_t_squares_to_one() {
    let elems = box_elements(3);
    for x in &elems {
        for y in &elems {
            assert_eq!(x * y, y * x);
        }
    }
    assert_eq!(&GrElt::t() * &GrElt::t(), GrElt::int(1));
}

fn column_of(elts: &[GrElt]) -> GrMatrix {
    let mut m = GrMatrix::zeros(elts.len(), 1);
    for (i, x) in elts.iter().enumerate() {
        m.set(i, 0, x.clone());
    }
    m
}

/// Brute force: is there a column `c` with entries in the box making `[x | c]`
/// invertible over the group ring?
fn has_small_complement(x: &GrMatrix, bound: i64) -> bool {
    let elems = box_elements(bound);
    elems.iter().any(|p| elems.iter().any(|q| x.hstack(&column_of(&[p.clone(), q.clone()])).unwrap().is_invertible()))
}

#[test]
fn summand_test_matches_complement_search_for_columns() {
    let elems = box_elements(1);
    for p in &elems {
        for q in &elems {
            let x = column_of(&[p.clone(), q.clone()]);
            let summand = x.is_summand().unwrap();
            assert_eq!(summand, has_small_complement(&x, 2), "{x}");
            if summand {
                let l = x.left_inverse().unwrap().unwrap();
                assert_eq!(&l * &x, GrMatrix::identity(1));
            }
        }
        let single = column_of(std::slice::from_ref(p));
        assert_eq!(single.is_summand().unwrap(), p.is_unit());
    }
}

#[test]
fn square_summands_are_invertible() {
    let elems = box_elements(1);
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    let mut m = GrMatrix::zeros(2, 2);
                    m.set(0, 0, a.clone());
                    m.set(0, 1, b.clone());
                    m.set(1, 0, c.clone());
                    m.set(1, 1, d.clone());
                    assert_eq!(m.is_summand().unwrap(), m.is_invertible(), "{m}");
                }
            }
        }
    }
}

#[test]
fn left_inverse_of_a_tall_summand() {
    // Columns (1, 1-T, T) and (0, 1, 1+T).
    let x = GrMatrix::from_pairs(&[[(1, 0), (0, 0)], [(1, -1), (1, 0)], [(0, 1), (1, 1)]]);
    let l = x.left_inverse().unwrap().expect("summand");
    assert_eq!(&l * &x, GrMatrix::identity(2));
    // The kernel of a left inverse is a complement.
    let k = l.kernel().unwrap();
    assert_eq!(k.cols(), 1);
    assert!(x.hstack(&k).unwrap().is_invertible());
}

#[test]
fn from_evaluations_rejects_mismatched_parity() {
    let plus = IntMatrix::from_rows(&[[1, 2]]);
    let minus = IntMatrix::from_rows(&[[1, 1]]);
    assert!(GrMatrix::from_evaluations(&plus, &minus).is_err());
    let ok = GrMatrix::from_evaluations(&plus, &IntMatrix::from_rows(&[[3, 0]])).unwrap();
    assert_eq!(ok.get(0, 0), GrElt::new(2, -1));
    assert_eq!(ok.get(0, 1), GrElt::new(BigInt::from(1), BigInt::from(1)));
}
