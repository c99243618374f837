use exactmat::{BigInt, BigRational, IntMatrix};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{FormError, Result};

/// All nonzero `x` with `xᵀGx ≤ max_norm` for a positive definite Gram
/// matrix `G`, paired with their norms.
///
/// Fincke–Pohst enumeration over an exact rational Cholesky decomposition.
/// Each coordinate range is over-approximated with an integer square root
/// and then filtered exactly, so no floating point is involved.
pub fn short_vectors(gram: &IntMatrix, max_norm: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    let n = gram.rows();
    let mut q: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(gram.get(i, j).clone())).collect()).collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(FormError::IndefiniteForm);
        }
        for j in i + 1..n {
            let v = &q[i][j] / &q[i][i];
            q[j][i] = q[i][j].clone();
            q[i][j] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][l] - &q[k][i] * &q[i][l];
                q[k][l] = v;
            }
        }
    }
    let g: Vec<i64> = gram.to_i64_vec().ok_or(FormError::EntriesTooLarge)?;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        descend(n - 1, &q, &g, &mut x, BigRational::from_integer(max_norm.into()), &mut out);
    }
    Ok(out)
}

fn descend(
    i: usize,
    q: &[Vec<BigRational>],
    g: &[i64],
    x: &mut [i64],
    budget: BigRational,
    out: &mut Vec<(Vec<i64>, i64)>,
) {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center -= &q[i][j] * BigRational::from_integer(x[j].into());
    }
    let slack = (&budget / &q[i][i]).ceil().to_integer();
    let radius: BigInt = slack.sqrt() + 1;
    let lo = center.floor().to_integer() - &radius;
    let hi = center.ceil().to_integer() + &radius;
    let (lo, hi) = (lo.to_i64().expect("small"), hi.to_i64().expect("small"));
    for xi in lo..=hi {
        let diff = BigRational::from_integer(BigInt::from(xi)) - &center;
        let cost = &q[i][i] * &diff * &diff;
        if cost > budget {
            continue;
        }
        x[i] = xi;
        if i == 0 {
            if x.iter().any(|&v| v != 0) {
                out.push((x.to_vec(), norm(g, x)));
            }
        } else {
            descend(i - 1, q, g, x, &budget - &cost, out);
        }
    }
    x[i] = 0;
}

pub(crate) fn norm(g: &[i64], x: &[i64]) -> i64 {
    let n = x.len();
    let mut total = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            total += x[i] * g[i * n + j] * x[j];
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_lattice_counts() {
        let g = IntMatrix::identity(2);
        let v = short_vectors(&g, 1).unwrap();
        assert_eq!(v.len(), 4);
        let v = short_vectors(&g, 2).unwrap();
        assert_eq!(v.len(), 8);
    }

    #[test]
    fn matches_box_search() {
        let g = IntMatrix::from_rows(&[[4, 2, 2], [2, 2, 1], [2, 1, 2]]);
        let gi = g.to_i64_vec().unwrap();
        let found = short_vectors(&g, 6).unwrap();
        let mut brute = 0;
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    let x = [a, b, c];
                    let n = norm(&gi, &x);
                    if n > 0 && n <= 6 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(found.len(), brute);
    }

    #[test]
    fn indefinite_rejected() {
        let g = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(short_vectors(&g, 2), Err(FormError::IndefiniteForm));
    }
}
