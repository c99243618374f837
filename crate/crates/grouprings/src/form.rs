use std::fmt;

use num_traits::Zero;
use zforms::QuadFormZ;

use crate::{GrElt, GrError, GrMatrix, Result, Sign};

/// A quadratic form on `Λⁿ`, i.e. a matrix modulo `B − B̄ᵀ`.
///
/// The involution is trivial, so `B − Bᵀ` has zero diagonal and the class is
/// determined by the diagonal together with `M_ij + M_ji` for `i < j`.
#[derive(Clone)]
pub struct QuadFormGr {
    rep: GrMatrix,
}

impl QuadFormGr {
    pub fn new(rep: GrMatrix) -> Result<Self> {
        if rep.rows() != rep.cols() {
            return Err(GrError::Dimension(format!("form matrix is {}x{}", rep.rows(), rep.cols())));
        }
        Ok(Self { rep })
    }

    pub fn zero(rank: usize) -> Self {
        Self { rep: GrMatrix::zeros(rank, rank) }
    }

    /// An integral form viewed over `Λ`.
    pub fn from_z(form: &QuadFormZ) -> Self {
        Self { rep: GrMatrix::from_int(form.rep()) }
    }

    pub fn rank(&self) -> usize {
        self.rep.rows()
    }

    pub fn rep(&self) -> &GrMatrix {
        &self.rep
    }

    /// The upper triangular representative of the class.
    pub fn canonical(&self) -> GrMatrix {
        let n = self.rank();
        let mut out = GrMatrix::zeros(n, n);
        for i in 0..n {
            out.set(i, i, self.rep.get(i, i));
            for j in i + 1..n {
                out.set(i, j, &self.rep.get(i, j) + &self.rep.get(j, i));
            }
        }
        out
    }

    pub fn canonicalized(&self) -> Self {
        Self { rep: self.canonical() }
    }

    /// The hermitian form `rep + rep̄ᵀ`.
    pub fn symmetrize(&self) -> GrMatrix {
        &self.rep + &self.rep.conj_transpose()
    }

    pub fn is_nondegenerate(&self) -> bool {
        let lambda = self.symmetrize();
        Sign::both().iter().all(|&s| exactmat::det(&lambda.eval(s)).is_ok_and(|d| !d.is_zero()))
    }

    /// Substitutes `T = ±1`.
    pub fn eval(&self, s: Sign) -> QuadFormZ {
        QuadFormZ::new(self.rep.eval(s)).expect("square")
    }

    /// `Mᵀ · rep · M`.
    pub fn transform(&self, m: &GrMatrix) -> Result<Self> {
        Ok(Self { rep: self.rep.congruence(m)? })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { rep: self.rep.block_diag(&other.rep) }
    }

    pub fn scale(&self, x: &GrElt) -> Self {
        Self { rep: self.rep.scale(x) }
    }

    pub fn neg(&self) -> Self {
        Self { rep: -&self.rep }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_zero()
    }
}

impl PartialEq for QuadFormGr {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.canonical() == other.canonical()
    }
}

impl Eq for QuadFormGr {}

impl fmt::Debug for QuadFormGr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadFormGr{}", self.canonical())
    }
}

impl fmt::Display for QuadFormGr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// Evaluation of a form at `T = ±1`.
pub fn eval_form(theta: &QuadFormGr, s: Sign) -> QuadFormZ {
    theta.eval(s)
}

/// `(1 − T)·θ` for a nondegenerate integral form `θ`.
pub fn free_wall_form(theta: &QuadFormZ) -> Result<QuadFormGr> {
    if !theta.symmetrize().is_nondegenerate() {
        return Err(GrError::DegenerateForm);
    }
    Ok(QuadFormGr::from_z(theta).scale(&GrElt::one_plus(Sign::Minus)))
}

/// `(1 − T)·m` for an integer matrix.
#[cfg(test)]
pub(crate) fn times_one_minus_t(m: &exactmat::IntMatrix) -> GrMatrix {
    GrMatrix::from_int(m).scale(&GrElt::one_plus(Sign::Minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::IntMatrix;
    use zforms::{hyperbolic, x_form};

    #[test]
    fn class_ignores_antisymmetric_changes() {
        let a = QuadFormGr::new(GrMatrix::from_pairs(&[[(1, 1), (2, 0)], [(0, 1), (0, 3)]])).unwrap();
        let b = QuadFormGr::new(GrMatrix::from_pairs(&[[(1, 1), (0, 1)], [(2, 0), (0, 3)]])).unwrap();
        assert_eq!(a, b);
        let c = QuadFormGr::new(GrMatrix::from_pairs(&[[(1, 1), (2, 0)], [(0, 0), (0, 3)]])).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn wall_form_evaluations() {
        let theta = x_form(2);
        let w = free_wall_form(&theta).unwrap();
        assert!(w.eval(Sign::Plus).is_zero());
        assert_eq!(w.eval(Sign::Minus), theta.scale(2));

        let one = QuadFormZ::new(IntMatrix::from_rows(&[[1]])).unwrap();
        assert_eq!(free_wall_form(&one).unwrap().rep(), &GrMatrix::from_pairs(&[[(1, -1)]]));
        assert!(free_wall_form(&hyperbolic(1)).unwrap().eval(Sign::Plus).is_zero());
        assert_eq!(free_wall_form(&QuadFormZ::zero(2)), Err(GrError::DegenerateForm));
    }

    #[test]
    fn constant_forms_evaluate_to_themselves() {
        let theta = x_form(3);
        let lifted = QuadFormGr::from_z(&theta);
        for s in Sign::both() {
            assert_eq!(eval_form(&lifted, s), theta);
        }
    }
}
