use exactmat::{BigInt, IntMatrix};
use num_integer::Integer;

use crate::{FormError, QuadFormZ, Result, SymFormZ};

/// `k` orthogonal copies of the hyperbolic plane `[[0, 1], [0, 0]]`.
pub fn hyperbolic(k: usize) -> QuadFormZ {
    let mut rep = IntMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        rep.set(2 * i, 2 * i + 1, BigInt::from(1));
    }
    QuadFormZ::new(rep).expect("square")
}

/// The rank-|n| form with first row all 2 and ones on and above the
/// diagonal below it, multiplied by the sign of `n`. Its symmetrisation is
/// definite of signature `n`; `n = 0` gives the empty form.
pub fn x_form(n: i64) -> QuadFormZ {
    let size = n.unsigned_abs() as usize;
    let sign = BigInt::from(n.signum());
    let mut rep = IntMatrix::zeros(size, size);
    for j in 0..size {
        rep.set(0, j, &sign * 2);
        for i in 1..=j {
            rep.set(i, j, sign.clone());
        }
    }
    QuadFormZ::new(rep).expect("square")
}

/// The rank `a + b` form of signature `a - b` built from the `x_form` family
/// and hyperbolic planes. Signature zero uses a doubled hyperbolic plane so
/// the form stays nondegenerate with even symmetrisation.
pub fn theta_ab(a: usize, b: usize) -> Result<QuadFormZ> {
    let h = a + b;
    if h == 0 {
        return Err(FormError::InvalidSignature { rank: 0, signature: 0 });
    }
    let sigma = a as i64 - b as i64;
    if sigma == 0 {
        Ok(hyperbolic(1).scale(2).direct_sum(&hyperbolic(h / 2 - 1)))
    } else {
        let pad = (h - sigma.unsigned_abs() as usize) / 2;
        Ok(x_form(sigma).direct_sum(&hyperbolic(pad)))
    }
}

/// The odd indefinite nonsingular form `(1)^a ⊕ (-1)^b` with the given rank
/// and signature.
pub fn classify_odd_indefinite(rank: usize, signature: i64) -> Result<SymFormZ> {
    let bad = FormError::InvalidSignature { rank, signature };
    if (rank as i64) <= signature.abs() || (rank as i64 - signature).is_odd() {
        return Err(bad);
    }
    let a = ((rank as i64 + signature) / 2) as usize;
    let diag: Vec<i64> = (0..rank).map(|i| if i < a { 1 } else { -1 }).collect();
    Ok(SymFormZ::diagonal(&diag))
}

/// The sublattice `{x : xᵀAx even}` of an odd form and the restricted form,
/// returned as its quadratic refinement. The basis matrix has the new basis
/// vectors as columns.
pub fn even_sublattice_form(a: &SymFormZ) -> Result<(IntMatrix, QuadFormZ)> {
    let n = a.rank();
    let gram = a.gram();
    let odd: Vec<bool> = (0..n).map(|i| gram.get(i, i).is_odd()).collect();
    let Some(k) = odd.iter().position(|&o| o) else {
        return Err(FormError::FormAlreadyEven);
    };
    // xᵀAx mod 2 is the linear functional x ↦ Σ A_ii x_i; this is its kernel.
    let mut basis = IntMatrix::zeros(n, n);
    for j in 0..n {
        if j == k {
            basis.set(k, k, BigInt::from(2));
        } else {
            basis.set(j, j, BigInt::from(1));
            if odd[j] {
                basis.set(k, j, BigInt::from(1));
            }
        }
    }
    let restricted = a.transform(&basis)?.quadratic_refinement()?;
    Ok((basis, restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::{det, BigInt};

    #[test]
    fn hyperbolic_shapes() {
        assert_eq!(hyperbolic(0).rank(), 0);
        assert_eq!(hyperbolic(1).rep(), &IntMatrix::from_rows(&[[0, 1], [0, 0]]));
        assert_eq!(det(hyperbolic(2).symmetrize().gram()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn x_forms() {
        assert_eq!(x_form(1).rep(), &IntMatrix::from_rows(&[[2]]));
        assert_eq!(x_form(1).symmetrize().gram(), &IntMatrix::from_rows(&[[4]]));
        assert_eq!(x_form(2).rep(), &IntMatrix::from_rows(&[[2, 2], [0, 1]]));
        assert_eq!(x_form(3).rep(), &IntMatrix::from_rows(&[[2, 2, 2], [0, 1, 1], [0, 0, 1]]));
        assert_eq!(x_form(-2).rep(), &IntMatrix::from_rows(&[[-2, -2], [0, -1]]));
        assert_eq!(x_form(0).rank(), 0);
        for n in [-5, -1, 1, 4, 7] {
            assert_eq!(x_form(n).symmetrize().signature(), Ok(n));
        }
    }

    #[test]
    fn theta_family() {
        assert_eq!(theta_ab(1, 1).unwrap().rep(), &IntMatrix::from_rows(&[[0, 2], [0, 0]]));
        assert_eq!(theta_ab(2, 0).unwrap(), x_form(2));
        let t = theta_ab(2, 1).unwrap();
        assert_eq!(t, x_form(1).direct_sum(&hyperbolic(1)));
        assert_eq!(t.symmetrize().signature(), Ok(1));
        assert!(theta_ab(0, 0).is_err());
    }

    #[test]
    fn odd_indefinite() {
        assert_eq!(classify_odd_indefinite(2, 0).unwrap(), SymFormZ::diagonal(&[1, -1]));
        assert_eq!(classify_odd_indefinite(3, 1).unwrap(), SymFormZ::diagonal(&[1, 1, -1]));
        assert_eq!(classify_odd_indefinite(4, -2).unwrap(), SymFormZ::diagonal(&[1, -1, -1, -1]));
        assert!(classify_odd_indefinite(3, 3).is_err());
        assert!(classify_odd_indefinite(3, 0).is_err());
    }

    #[test]
    fn even_sublattices() {
        let (basis, q) = even_sublattice_form(&SymFormZ::diagonal(&[1, -1])).unwrap();
        assert_eq!(basis, IntMatrix::from_rows(&[[2, 1], [0, 1]]));
        assert_eq!(q.symmetrize().gram(), &IntMatrix::from_rows(&[[4, 2], [2, 0]]));
        let (_, q) = even_sublattice_form(&SymFormZ::diagonal(&[1, 1, 1])).unwrap();
        assert_eq!(q.symmetrize(), x_form(3).symmetrize());
        let (_, q) = even_sublattice_form(&SymFormZ::diagonal(&[1])).unwrap();
        assert_eq!(q.symmetrize().gram(), &IntMatrix::from_rows(&[[4]]));
        assert_eq!(even_sublattice_form(&SymFormZ::diagonal(&[2, 2])), Err(FormError::FormAlreadyEven));
    }
}
