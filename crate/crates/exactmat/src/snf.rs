use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{det::integer_inverse, IntMatrix, MatError, Result};

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// and satisfying the divisibility chain `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The diagonal entries of `d`, in order (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Structure of `Z^rows / column-span(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors greater than one, ascending along the divisibility chain.
    pub torsion: Vec<BigInt>,
}

impl Cokernel {
    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// Rounded quotient `a / b` (nearest integer), used to keep remainders small.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() || (twice.abs() == b.abs() && r.signum() == b.signum()) {
        q + 1
    } else {
        q
    }
}

/// Smith normal form by pivot-minimizing elimination. The input is not modified.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && pivot.map_or(true, |(pi, pj)| x.abs() < a.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(a.get(i, t), a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(a.get(t, j), a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column are clear; enforce divisibility of the rest.
                let bad = (t + 1..rows)
                    .find_map(|i| (t + 1..cols).find(|&j| !a.get(i, j).is_multiple_of(a.get(t, t))).map(|_| i));
                match bad {
                    None => break,
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                }
            }
            // Move the smallest entry of row t / column t onto the diagonal.
            let mut best = (t, t);
            for i in t + 1..rows {
                let x = a.get(i, t);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                let x = a.get(t, j);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else if best.1 != t {
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d: a, v }
}

/// Free rank and invariant factors (> 1) of the cokernel of `m`.
pub fn cokernel_invariants(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let r = snf.rank();
    Cokernel { free_rank: m.rows() - r, torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect() }
}

/// True iff the columns of `m` span a direct summand of Z^rows of rank `cols`.
pub fn has_integer_left_inverse(m: &IntMatrix) -> bool {
    m.rows() >= m.cols() && {
        let snf = smith_normal_form(m);
        snf.diagonal().iter().all(One::is_one)
    }
}

/// An integer `l` with `l · m = I`, if one exists.
pub fn integer_left_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows < cols {
        return None;
    }
    let snf = smith_normal_form(m);
    if !snf.diagonal().iter().all(One::is_one) {
        return None;
    }
    // m = u⁻¹ [I; 0] v⁻¹, so l = v [I 0] u.
    let top_u = snf.u.submatrix(0, cols, 0, rows);
    Some(&snf.v * &top_u)
}

/// Basis (as columns) of the integer kernel {x : m x = 0}. The kernel is
/// always a direct summand, so these columns extend to a basis of Z^cols.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    snf.v.submatrix(0, m.cols(), r, m.cols())
}

/// Some integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if b.rows() != m.rows() {
        return Err(MatError::DimensionMismatch("right-hand side rows".into()));
    }
    let snf = smith_normal_form(m);
    let ub = &snf.u * b;
    let diag = snf.diagonal();
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for k in 0..b.cols() {
        for i in 0..m.rows() {
            let rhs = ub.get(i, k);
            let d = diag.get(i).cloned().unwrap_or_default();
            if d.is_zero() {
                if !rhs.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let (q, r) = rhs.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y.set(i, k, q);
        }
    }
    Ok(Some(&snf.v * &y))
}

/// Extends the columns of `m` (which must span a direct summand) to a
/// unimodular matrix `[m | c]`.
pub fn complete_to_basis(m: &IntMatrix) -> Result<IntMatrix> {
    if !has_integer_left_inverse(m) {
        return Err(MatError::NotUnimodular);
    }
    let snf = smith_normal_form(m);
    let u_inv = integer_inverse(&snf.u)?;
    let extra = u_inv.submatrix(0, m.rows(), m.cols(), m.rows());
    m.hstack(&extra)
}
