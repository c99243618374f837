//! Small dense linear algebra over the field with two elements.
//!
//! Rows are `Vec<bool>`; sizes here never exceed a few dozen.

use num_bigint::BigInt;

use crate::IntMatrix;

/// Row-reduces in place and returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<bool>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let src = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<bool>]) -> usize {
    let mut copy = rows.to_vec();
    row_reduce(&mut copy).len()
}

/// Solves `x · a = b` for a row vector `x`, where `a` is given by rows.
pub fn solve_left(a: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
    // Transpose to a column system aᵀ xᵀ = bᵀ and reduce the augmented matrix.
    let n = a.len();
    let m = b.len();
    let mut aug: Vec<Vec<bool>> = (0..m)
        .map(|j| {
            let mut row: Vec<bool> = a.iter().map(|r| r[j]).collect();
            row.push(b[j]);
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![false; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n];
    }
    Some(x)
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(a: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = a.len();
    let mut aug: Vec<Vec<bool>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| i == j));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return if n == 0 { Some(Vec::new()) } else { None };
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A unimodular integer matrix reducing to the invertible `g` mod 2.
///
/// Row-reduces `g` to the identity and multiplies the inverses of the
/// elementary steps back together over Z.
pub fn unimodular_lift(g: &[Vec<bool>]) -> Option<IntMatrix> {
    let n = g.len();
    let mut a = g.to_vec();
    let mut lift = IntMatrix::identity(n);
    let minus_one = BigInt::from(-1);
    for c in 0..n {
        let p = (c..n).find(|&i| a[i][c])?;
        if p != c {
            a.swap(p, c);
            lift.swap_cols(p, c);
        }
        for i in 0..n {
            if i != c && a[i][c] {
                let src = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x ^= *y;
                }
                // Row i += row c has inverse I - e_ic; multiply on the right.
                lift.add_col_multiple(c, i, &minus_one);
            }
        }
    }
    Some(lift)
}
