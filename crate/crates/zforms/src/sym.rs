use std::fmt;

use exactmat::{det, BigInt, BigRational, IntMatrix, MatError};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{FormError, QuadFormZ, Result};

/// A symmetric bilinear form on Zⁿ given by its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFormZ {
    gram: IntMatrix,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SymFormZ {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(MatError::NonSquare { rows: gram.rows(), cols: gram.cols() }.into());
        }
        if !gram.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        Self { gram: IntMatrix::diagonal(entries) }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        det(&self.gram).expect("gram is square")
    }

    /// Inertia by exact symmetric elimination. A zero diagonal with a nonzero
    /// off-diagonal entry is handled as a 2×2 hyperbolic pivot block.
    pub fn inertia(&self) -> Inertia {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(self.gram.get(i, j).clone())).collect()).collect();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
        while !alive.is_empty() {
            if let Some(pos) = alive.iter().position(|&i| !a[i][i].is_zero()) {
                let p = alive.remove(pos);
                let pivot = a[p][p].clone();
                if pivot.is_positive() {
                    out.positive += 1;
                } else {
                    out.negative += 1;
                }
                for &i in &alive {
                    let f = &a[i][p] / &pivot;
                    if f.is_zero() {
                        continue;
                    }
                    for &j in &alive {
                        let v = &a[i][j] - &f * &a[p][j];
                        a[i][j] = v;
                    }
                }
                continue;
            }
            let pair = alive
                .iter()
                .enumerate()
                .find_map(|(x, &i)| alive[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
            let Some((p, q)) = pair else {
                out.zero += alive.len();
                break;
            };
            // Block [[0, c], [c, 0]] has one positive and one negative eigenvalue.
            alive.retain(|&i| i != p && i != q);
            out.positive += 1;
            out.negative += 1;
            let c = a[p][q].clone();
            // Inverse block is [[0, 1/c], [1/c, 0]]; eliminate through it.
            for &i in &alive {
                let (ip, iq) = (a[i][p].clone(), a[i][q].clone());
                if ip.is_zero() && iq.is_zero() {
                    continue;
                }
                for &j in &alive {
                    let v = &a[i][j] - (&ip * &a[q][j] + &iq * &a[p][j]) / &c;
                    a[i][j] = v;
                }
            }
        }
        out
    }

    /// Signature of a nondegenerate form.
    pub fn signature(&self) -> Result<i64> {
        let inertia = self.inertia();
        if inertia.zero > 0 {
            return Err(FormError::DegenerateForm);
        }
        Ok(inertia.positive as i64 - inertia.negative as i64)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_definite(&self) -> bool {
        let i = self.inertia();
        i.zero == 0 && (i.positive == 0 || i.negative == 0)
    }

    pub fn is_positive_definite(&self) -> bool {
        let i = self.inertia();
        i.zero == 0 && i.negative == 0
    }

    pub fn neg(&self) -> Self {
        Self { gram: -&self.gram }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { gram: self.gram.block_diag(&other.gram) }
    }

    /// Pullback `mᵀ G m`.
    pub fn transform(&self, m: &IntMatrix) -> Result<Self> {
        Ok(Self { gram: self.gram.congruence(m)? })
    }

    /// The unique quadratic form with this symmetrisation, if the form is even.
    pub fn quadratic_refinement(&self) -> Result<QuadFormZ> {
        if !self.is_even() {
            return Err(FormError::OddForm);
        }
        let n = self.rank();
        let mut q = IntMatrix::zeros(n, n);
        for i in 0..n {
            q.set(i, i, self.gram.get(i, i) / 2);
            for j in i + 1..n {
                q.set(i, j, self.gram.get(i, j).clone());
            }
        }
        QuadFormZ::new(q)
    }

    /// `x G y` for integer vectors.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut total = BigInt::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                total += &x[i] * self.gram.get(i, j) * &y[j];
            }
        }
        total
    }
}

impl fmt::Debug for SymFormZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFormZ({})", self.gram)
    }
}

impl fmt::Display for SymFormZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> SymFormZ {
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g.set(i, i, BigInt::from(2));
        }
        // Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4.
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            g.set(i, j, BigInt::from(-1));
            g.set(j, i, BigInt::from(-1));
        }
        SymFormZ::new(g).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(SymFormZ::new(IntMatrix::identity(4)).unwrap().signature(), Ok(4));
        let h = SymFormZ::new(IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!(h.signature(), Ok(0));
        assert_eq!(SymFormZ::diagonal(&[1, -1, -1]).signature(), Ok(-1));
        assert_eq!(SymFormZ::diagonal(&[1, 0]).signature(), Err(FormError::DegenerateForm));
        let mixed = SymFormZ::new(IntMatrix::from_rows(&[[0, 2, 1], [2, 0, 3], [1, 3, 0]])).unwrap();
        assert_eq!(mixed.signature(), Ok(-1));
    }

    #[test]
    fn parity_and_definiteness() {
        let d = SymFormZ::diagonal(&[2, 2]);
        assert!(d.is_even() && d.is_definite() && !d.is_nonsingular());
        let m = SymFormZ::diagonal(&[1, -1]);
        assert!(!m.is_even() && !m.is_definite() && m.is_nonsingular());
        let e = e8();
        assert_eq!(e.det(), BigInt::one());
        assert!(e.is_even() && e.is_definite() && e.is_nonsingular());
        assert_eq!(e.signature(), Ok(8));
    }

    #[test]
    fn refinement_round_trips() {
        let g = SymFormZ::new(IntMatrix::from_rows(&[[4, 2], [2, 0]])).unwrap();
        let q = g.quadratic_refinement().unwrap();
        assert_eq!(q.rep(), &IntMatrix::from_rows(&[[2, 2], [0, 0]]));
        assert_eq!(q.symmetrize(), g);
    }
}
