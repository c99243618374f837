use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use exactmat::{gf2, integer_inverse, integer_kernel, integer_left_inverse, IntMatrix, MatError};
use num_integer::Integer;

use crate::{GrElt, GrError, Result, Sign};

/// A matrix over `Λ = Z[Z₂]`, stored as `A + BT` with integer `A`, `B`.
///
/// Linear algebra goes through the two evaluations `M(1) = A + B` and
/// `M(-1) = A - B`. The pair determines `M`, and a pair of integer matrices
/// comes from some `M` iff they agree mod 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrMatrix {
    a: IntMatrix,
    b: IntMatrix,
}

pub(crate) fn reduce_mod_two(m: &IntMatrix) -> Vec<Vec<bool>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(Integer::is_odd).collect()).collect()
}

pub(crate) fn from_bits(rows: &[Vec<bool>], cols: usize) -> IntMatrix {
    let data: Vec<i64> = rows.iter().flat_map(|r| r.iter().map(|&x| i64::from(x))).collect();
    IntMatrix::from_i64(rows.len(), cols, &data)
}

impl GrMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { a: IntMatrix::zeros(rows, cols), b: IntMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        Self { a: IntMatrix::identity(n), b: IntMatrix::zeros(n, n) }
    }

    /// `a + bT` from its two coefficient matrices.
    pub fn from_parts(a: IntMatrix, b: IntMatrix) -> Result<Self> {
        if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
            return Err(MatError::DimensionMismatch("coefficient matrices differ in shape".into()).into());
        }
        Ok(Self { a, b })
    }

    /// An integer matrix viewed over `Λ`.
    pub fn from_int(m: &IntMatrix) -> Self {
        Self { a: m.clone(), b: IntMatrix::zeros(m.rows(), m.cols()) }
    }

    /// Entries given row by row as `(a, b)` pairs meaning `a + bT`.
    pub fn from_pairs<R: AsRef<[(i64, i64)]>>(rows: &[R]) -> Self {
        let a: Vec<Vec<i64>> = rows.iter().map(|r| r.as_ref().iter().map(|p| p.0).collect()).collect();
        let b: Vec<Vec<i64>> = rows.iter().map(|r| r.as_ref().iter().map(|p| p.1).collect()).collect();
        Self { a: IntMatrix::from_rows(&a), b: IntMatrix::from_rows(&b) }
    }

    /// The unique matrix with the given values at `T = 1` and `T = -1`.
    pub fn from_evaluations(plus: &IntMatrix, minus: &IntMatrix) -> Result<Self> {
        if (plus.rows(), plus.cols()) != (minus.rows(), minus.cols()) {
            return Err(MatError::DimensionMismatch("evaluations differ in shape".into()).into());
        }
        let sum = plus + minus;
        if sum.entries().iter().any(Integer::is_odd) {
            return Err(GrError::IncompatibleEvaluations);
        }
        let half = |m: &IntMatrix| {
            let data = m.entries().iter().map(|x| x / 2).collect();
            IntMatrix::from_vec(m.rows(), m.cols(), data).expect("same shape")
        };
        Ok(Self { a: half(&sum), b: half(&(plus - minus)) })
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// Coefficient of `1`.
    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    /// Coefficient of `T`.
    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> GrElt {
        GrElt { a: self.a.get(i, j).clone(), b: self.b.get(i, j).clone() }
    }

    pub fn set(&mut self, i: usize, j: usize, x: GrElt) {
        self.a.set(i, j, x.a);
        self.b.set(i, j, x.b);
    }

    pub fn eval(&self, s: Sign) -> IntMatrix {
        match s {
            Sign::Plus => &self.a + &self.b,
            Sign::Minus => &self.a - &self.b,
        }
    }

    /// True iff no entry involves `T`.
    pub fn is_integral(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn transpose(&self) -> Self {
        Self { a: self.a.transpose(), b: self.b.transpose() }
    }

    /// Conjugate transpose. The involution fixes `T`, so this is the transpose.
    pub fn conj_transpose(&self) -> Self {
        self.transpose()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let aa = self.a.checked_mul(&other.a)?;
        let bb = self.b.checked_mul(&other.b)?;
        let ab = self.a.checked_mul(&other.b)?;
        let ba = self.b.checked_mul(&other.a)?;
        Ok(Self { a: &aa + &bb, b: &ab + &ba })
    }

    pub fn scale(&self, x: &GrElt) -> Self {
        Self { a: &self.a.scale(&x.a) + &self.b.scale(&x.b), b: &self.a.scale(&x.b) + &self.b.scale(&x.a) }
    }

    /// `Mᵀ · self · M`.
    pub fn congruence(&self, m: &Self) -> Result<Self> {
        m.conj_transpose().checked_mul(&self.checked_mul(m)?)
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        Ok(Self { a: self.a.hstack(&other.a)?, b: self.b.hstack(&other.b)? })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        Ok(Self { a: self.a.vstack(&other.a)?, b: self.b.vstack(&other.b)? })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self { a: self.a.block_diag(&other.a), b: self.b.block_diag(&other.b) }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self { a: self.a.submatrix(r0, r1, c0, c1), b: self.b.submatrix(r0, r1, c0, c1) }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self { a: self.a.select_columns(cols), b: self.b.select_columns(cols) }
    }

    pub fn det(&self) -> Result<GrElt> {
        let plus = exactmat::det(&self.eval(Sign::Plus))?;
        let minus = exactmat::det(&self.eval(Sign::Minus))?;
        GrElt::from_evaluations(&plus, &minus)
    }

    /// True iff the matrix is square with determinant `±1` or `±T`.
    pub fn is_invertible(&self) -> bool {
        self.a.is_square() && self.det().is_ok_and(|d| d.is_unit())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(GrError::NotInvertible);
        }
        let plus = integer_inverse(&self.eval(Sign::Plus))?;
        let minus = integer_inverse(&self.eval(Sign::Minus))?;
        Self::from_evaluations(&plus, &minus)
    }

    /// Some `L` over `Λ` with `L · self = I`, if one exists.
    ///
    /// Left inverses of the two evaluations are `L± = L±⁰ + Y± N±` where the
    /// rows of `N±` span the left kernels. Compatibility mod 2 is a linear
    /// system over F₂ in `Y±`, solved row by row.
    pub fn left_inverse(&self) -> Result<Option<Self>> {
        let cols = self.cols();
        let plus = self.eval(Sign::Plus);
        let minus = self.eval(Sign::Minus);
        let (Some(l_plus), Some(l_minus)) = (integer_left_inverse(&plus), integer_left_inverse(&minus)) else {
            return Ok(None);
        };
        let n_plus = integer_kernel(&plus.transpose()).transpose();
        let n_minus = integer_kernel(&minus.transpose()).transpose();
        let mut system = reduce_mod_two(&n_plus);
        system.extend(reduce_mod_two(&n_minus));
        let k = n_plus.rows();
        let mut y_plus = vec![vec![false; k]; cols];
        let mut y_minus = vec![vec![false; n_minus.rows()]; cols];
        let gap = reduce_mod_two(&(&l_minus - &l_plus));
        for r in 0..cols {
            if system.is_empty() {
                if gap[r].iter().any(|&x| x) {
                    return Ok(None);
                }
                continue;
            }
            let Some(y) = gf2::solve_left(&system, &gap[r]) else { return Ok(None) };
            // Signs are invisible mod 2, so the minus part may be subtracted.
            y_plus[r] = y[..k].to_vec();
            y_minus[r] = y[k..].to_vec();
        }
        let l_plus = &l_plus + &(&from_bits(&y_plus, k) * &n_plus);
        let l_minus = &l_minus - &(&from_bits(&y_minus, n_minus.rows()) * &n_minus);
        Self::from_evaluations(&l_plus, &l_minus).map(Some)
    }

    /// True iff the columns span a free direct summand of `Λ^rows`.
    pub fn is_summand(&self) -> Result<bool> {
        Ok(self.left_inverse()?.is_some())
    }

    /// A basis (as columns) of `{x : self · x = 0}` over `Λ`.
    ///
    /// The kernel is the set of compatible pairs drawn from the two integer
    /// kernels. When those reduce to the same subspace mod 2, a unimodular
    /// change of basis makes the two bases agree mod 2 and the pairs then
    /// form a free basis. Otherwise the kernel is not free of this shape.
    pub fn kernel(&self) -> Result<Self> {
        let plus = integer_kernel(&self.eval(Sign::Plus));
        let minus = integer_kernel(&self.eval(Sign::Minus));
        let r = plus.cols();
        if minus.cols() != r {
            return Err(GrError::NotFree("kernel ranks differ at T = ±1".into()));
        }
        if r == 0 {
            return Ok(Self::zeros(self.cols(), 0));
        }
        // Columns of the bases as rows over F₂.
        let p_rows = reduce_mod_two(&plus.transpose());
        let q_rows = reduce_mod_two(&minus.transpose());
        let mut g = vec![vec![false; r]; r];
        for (j, q) in q_rows.iter().enumerate() {
            let coeffs = gf2::solve_left(&p_rows, q).ok_or_else(|| GrError::NotFree("kernels differ mod 2".into()))?;
            for i in 0..r {
                g[i][j] = coeffs[i];
            }
        }
        let lift = gf2::unimodular_lift(&g).ok_or_else(|| GrError::NotFree("kernels differ mod 2".into()))?;
        Self::from_evaluations(&(&plus * &lift), &minus)
    }
}

impl fmt::Debug for GrMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &GrMatrix {
    type Output = GrMatrix;
    fn add(self, rhs: &GrMatrix) -> GrMatrix {
        GrMatrix { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &GrMatrix {
    type Output = GrMatrix;
    fn sub(self, rhs: &GrMatrix) -> GrMatrix {
        GrMatrix { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Neg for &GrMatrix {
    type Output = GrMatrix;
    fn neg(self) -> GrMatrix {
        GrMatrix { a: -&self.a, b: -&self.b }
    }
}

impl Mul for &GrMatrix {
    type Output = GrMatrix;

    /// Panics on a shape mismatch; use `checked_mul` for fallible input.
    fn mul(self, rhs: &GrMatrix) -> GrMatrix {
        self.checked_mul(rhs).expect("shape mismatch in mul")
    }
}
