use std::fmt;

use exactmat::{BigInt, IntMatrix, MatError};
use num_traits::Zero;

use crate::{Result, SymFormZ};

/// An integral (+1)-quadratic form: a square matrix taken modulo `B - Bᵀ`.
///
/// Two representatives are equal as forms iff their canonical
/// representatives agree, so equality never searches for `B`.
#[derive(Clone)]
pub struct QuadFormZ {
    rep: IntMatrix,
}

impl QuadFormZ {
    pub fn new(rep: IntMatrix) -> Result<Self> {
        if !rep.is_square() {
            return Err(MatError::NonSquare { rows: rep.rows(), cols: rep.cols() }.into());
        }
        Ok(Self { rep })
    }

    pub fn zero(rank: usize) -> Self {
        Self { rep: IntMatrix::zeros(rank, rank) }
    }

    pub fn rank(&self) -> usize {
        self.rep.rows()
    }

    pub fn rep(&self) -> &IntMatrix {
        &self.rep
    }

    /// Upper-triangular representative: diagonal kept, `Q_ij + Q_ji` above it.
    pub fn canonical(&self) -> IntMatrix {
        let n = self.rank();
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            c.set(i, i, self.rep.get(i, i).clone());
            for j in i + 1..n {
                c.set(i, j, self.rep.get(i, j) + self.rep.get(j, i));
            }
        }
        c
    }

    pub fn canonicalized(&self) -> Self {
        Self { rep: self.canonical() }
    }

    /// The symmetric bilinear form `Q + Qᵀ`.
    pub fn symmetrize(&self) -> SymFormZ {
        SymFormZ::new(&self.rep + &self.rep.transpose()).expect("Q + Qᵀ is symmetric")
    }

    /// Pullback along `m`: the form `mᵀ Q m`.
    pub fn transform(&self, m: &IntMatrix) -> Result<Self> {
        Ok(Self { rep: self.rep.congruence(m)? })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { rep: self.rep.block_diag(&other.rep) }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { rep: self.rep.scale(&BigInt::from(k)) }
    }

    pub fn neg(&self) -> Self {
        Self { rep: -&self.rep }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().entries().iter().all(Zero::is_zero)
    }

    /// `x Q xᵀ` for an integer vector.
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut total = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                total += &x[i] * self.rep.get(i, j) * &x[j];
            }
        }
        total
    }
}

impl PartialEq for QuadFormZ {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.canonical() == other.canonical()
    }
}

impl Eq for QuadFormZ {}

impl fmt::Debug for QuadFormZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadFormZ({})", self.rep)
    }
}

impl fmt::Display for QuadFormZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrisation_of_doubled_x2() {
        let q = QuadFormZ::new(IntMatrix::from_rows(&[[4, 4], [0, 2]])).unwrap();
        assert_eq!(q.symmetrize().gram(), &IntMatrix::from_rows(&[[8, 4], [4, 4]]));
    }

    #[test]
    fn zero_form_symmetrises_to_zero() {
        assert!(QuadFormZ::zero(3).symmetrize().gram().is_zero());
    }

    #[test]
    fn skew_adjustment_is_invisible() {
        let q = QuadFormZ::new(IntMatrix::from_rows(&[[1, 5], [-2, 3]])).unwrap();
        let p = QuadFormZ::new(IntMatrix::from_rows(&[[1, 0], [3, 3]])).unwrap();
        assert_eq!(q, p);
        assert_ne!(q, QuadFormZ::new(IntMatrix::from_rows(&[[1, 0], [4, 3]])).unwrap());
        assert_eq!(q.canonicalized().canonical(), q.canonical());
    }
}
