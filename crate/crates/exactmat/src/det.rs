use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{IntMatrix, MatError, RatMatrix, Result};

/// Exact determinant by fraction-free Bareiss elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(MatError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = !sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign { -d } else { d })
}

/// Rank over Q.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = RatMatrix::from(m);
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        for j in 0..cols {
            let (x, y) = (a.get(p, j).clone(), a.get(r, j).clone());
            a.set(p, j, y);
            a.set(r, j, x);
        }
        let pivot = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse over Q by Gauss-Jordan elimination.
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(MatError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = RatMatrix::from(m);
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(MatError::SingularMatrix)?;
        if p != c {
            for j in 0..n {
                let (x, y) = (a.get(p, j).clone(), a.get(c, j).clone());
                a.set(p, j, y);
                a.set(c, j, x);
                let (x, y) = (inv.get(p, j).clone(), inv.get(c, j).clone());
                inv.set(p, j, y);
                inv.set(c, j, x);
            }
        }
        let pivot = a.get(c, c).clone();
        for j in 0..n {
            let v = a.get(c, j) / &pivot;
            a.set(c, j, v);
            let v = inv.get(c, j) / &pivot;
            inv.set(c, j, v);
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = a.get(i, j) - &f * a.get(c, j);
                a.set(i, j, v);
                let v = inv.get(i, j) - &f * inv.get(c, j);
                inv.set(i, j, v);
            }
        }
    }
    Ok(inv)
}

/// Inverse of a unimodular integer matrix.
pub fn integer_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let d = det(m)?;
    if d.abs() != BigInt::one() {
        return Err(MatError::NotUnimodular);
    }
    rational_inverse(m)?.to_integer().ok_or(MatError::NotUnimodular)
}
