//! Lagrangian complements over `Λ = Z[Z₂]` assembled from the two eigen-sides.
//!
//! A matrix over `Λ` is a pair of integer matrices congruent mod 2, and both
//! `UᵀλU = 0` and invertibility of `[V | U]` can be checked one evaluation at
//! a time. So it suffices to produce a lagrangian complement of `V(1)` that
//! agrees mod 2 with the prescribed one of `V(-1)`, up to a basis change.
//!
//! On the plus side, dual vectors to `V(1)` are corrected by half their
//! self-pairing to give one complement `C` with `V(1)ᵀλC = I`. Every other
//! lagrangian complement is `C + V(1)A` with `A` skew. The minus complement
//! pins `A` down mod 2, and its reduction must be alternating, which is
//! where the evenness of `λ` and the quadratic vanishing come in.

use exactmat::{complete_to_basis, gf2, integer_inverse, integer_left_inverse, BigInt, IntMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::reduce_mod_two;
use crate::{GrError, GrMatrix, QuasiFormation, Result, Sign};

/// Outcome of the elementary test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryVerdict {
    /// Columns spanning a lagrangian complement to `V`.
    Elementary(GrMatrix),
    Inconclusive(String),
}

/// Controls how a complement of `V(-1)` is obtained.
#[derive(Clone, Debug)]
pub struct CriterionOptions {
    /// A known lagrangian complement of `V(-1)`; skips the search.
    pub minus_complement: Option<IntMatrix>,
    /// Largest coefficient tried when searching for one.
    pub max_coefficient: i64,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        Self { minus_complement: None, max_coefficient: 3 }
    }
}

fn violated(reason: &str) -> GrError {
    GrError::PreconditionViolated(reason.into())
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && exactmat::det(m).is_ok_and(|d| d.abs().is_one())
}

fn bit_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).fold(false, |acc, (&x, r)| acc ^ (x && r[j]))).collect())
        .collect()
}

/// Independent check that `u` spans a lagrangian complement to `v` for `λ`.
pub fn is_lagrangian_complement(lambda: &GrMatrix, v: &GrMatrix, u: &GrMatrix) -> bool {
    let Ok(pairing) = lambda.congruence(u) else { return false };
    pairing.is_zero() && v.hstack(u).is_ok_and(|m| m.is_invertible())
}

/// Finds `U` with `V ⊕ U = Λ²ⁿ` and `λ|_{U×U} = 0`.
///
/// `λ` must be symmetric, even and nonsingular, `V` a half-rank summand whose
/// plus evaluation is lagrangian, and `u_minus` a lagrangian complement of
/// `V(-1)` for `λ(-1)`. The result agrees with `u_minus` at `T = -1` up to
/// a change of basis.
pub fn find_lagrangian_complement(lambda: &GrMatrix, v: &GrMatrix, u_minus: &IntMatrix) -> Result<GrMatrix> {
    let m = lambda.rows();
    let n = v.cols();
    if !lambda.a().is_square() || m != 2 * n || v.rows() != m || (u_minus.rows(), u_minus.cols()) != (m, n) {
        return Err(violated("shapes must be 2n x 2n, 2n x n, 2n x n"));
    }
    if lambda != &lambda.transpose() {
        return Err(violated("form is not hermitian"));
    }
    if !(0..m).all(|i| lambda.get(i, i).is_even()) {
        return Err(violated("form is not even"));
    }
    if !lambda.is_invertible() {
        return Err(violated("form is singular"));
    }
    if !v.is_summand()? {
        return Err(violated("V is not a direct summand"));
    }
    let (l_plus, l_minus) = (lambda.eval(Sign::Plus), lambda.eval(Sign::Minus));
    let (x_plus, x_minus) = (v.eval(Sign::Plus), v.eval(Sign::Minus));
    if !l_plus.congruence(&x_plus)?.is_zero() {
        return Err(violated("V(1) is not lagrangian"));
    }
    if !is_unimodular(&x_minus.hstack(u_minus)?) {
        return Err(violated("U- is not a complement of V(-1)"));
    }
    if !l_minus.congruence(u_minus)?.is_zero() {
        return Err(violated("U- is not lagrangian"));
    }

    // Dual vectors: λ(1)(V(1), Y) = I.
    let left = integer_left_inverse(&x_plus).ok_or_else(|| violated("V(1) is not a direct summand"))?;
    let dual = &integer_inverse(&l_plus)? * &left.transpose();
    // Subtracting V(1)H with H + Hᵀ = YᵀλY makes the dual vectors isotropic.
    let self_pairing = l_plus.congruence(&dual)?;
    let mut half = IntMatrix::zeros(n, n);
    for i in 0..n {
        let (q, r) = self_pairing.get(i, i).div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(violated("odd self-pairing of a dual vector"));
        }
        half.set(i, i, q);
        for j in i + 1..n {
            half.set(i, j, self_pairing.get(i, j).clone());
        }
    }
    let c = &dual - &(&x_plus * &half);

    // Write U- = V B + C G mod 2; its span is that of C + V(BG⁻¹).
    let coords = &integer_inverse(&x_plus.hstack(&c)?)? * u_minus;
    let bits = reduce_mod_two(&coords);
    let (b_bits, g_bits) = bits.split_at(n);
    let g_inv = gf2::inverse(g_bits).ok_or_else(|| violated("U- does not meet V(-1) trivially mod 2"))?;
    let shift = bit_mul(b_bits, &g_inv);

    // The shift is alternating mod 2; lift it to a skew integer matrix.
    let mut skew = IntMatrix::zeros(n, n);
    for i in 0..n {
        if shift[i][i] {
            return Err(violated("U- is not quadratically isotropic mod 2"));
        }
        for j in i + 1..n {
            if shift[i][j] != shift[j][i] {
                return Err(violated("U- is not isotropic mod 2"));
            }
            if shift[i][j] {
                skew.set(i, j, BigInt::one());
                skew.set(j, i, -BigInt::one());
            }
        }
    }
    let u_plus = &c + &(&x_plus * &skew);
    // Align bases: U(1)·G ≡ U- mod 2.
    let align = gf2::unimodular_lift(g_bits).ok_or_else(|| violated("singular change of basis"))?;
    let u_plus = &u_plus * &align;
    debug_assert_eq!(reduce_mod_two(&u_plus), reduce_mod_two(u_minus));

    let u = GrMatrix::from_evaluations(&u_plus, u_minus).map_err(|_| violated("evaluations disagree mod 2"))?;
    if !is_lagrangian_complement(lambda, v, &u) {
        return Err(violated("constructed complement failed verification"));
    }
    Ok(u)
}

/// Column-by-column search for `U₀ + X H` isotropic, `H` in a coefficient box.
struct MinusSearch<'a> {
    lambda: &'a IntMatrix,
    x: &'a IntMatrix,
    base: &'a IntMatrix,
    bound: i64,
    chosen: Vec<IntMatrix>,
}

impl MinusSearch<'_> {
    fn column(&self, j: usize, h: &[i64]) -> IntMatrix {
        let shift = IntMatrix::from_i64(h.len(), 1, h);
        &self.base.select_columns(&[j]) + &(self.x * &shift)
    }

    fn pairs_vanish(&self, col: &IntMatrix) -> bool {
        let lc = self.lambda * col;
        let t = col.transpose();
        (&t * &lc).is_zero() && self.chosen.iter().all(|u| (&u.transpose() * &lc).is_zero())
    }

    fn walk(&mut self, j: usize) -> bool {
        let n = self.base.cols();
        if j == n {
            return true;
        }
        let width = (2 * self.bound + 1) as usize;
        let total = width.pow(n as u32);
        for code in 0..total {
            let mut rest = code;
            let h: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (rest % width) as i64 - self.bound;
                    rest /= width;
                    d
                })
                .collect();
            let col = self.column(j, &h);
            if self.pairs_vanish(&col) {
                self.chosen.push(col);
                if self.walk(j + 1) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        false
    }
}

fn search_minus_complement(lambda: &IntMatrix, x: &IntMatrix, max_coefficient: i64) -> Option<IntMatrix> {
    let n = x.cols();
    let full = complete_to_basis(x).ok()?;
    let base = full.submatrix(0, full.rows(), n, full.cols());
    (1..=max_coefficient).find_map(|bound| {
        let mut s = MinusSearch { lambda, x, base: &base, bound, chosen: Vec::new() };
        s.walk(0).then(|| s.chosen.iter().skip(1).fold(s.chosen[0].clone(), |acc, c| acc.hstack(c).expect("rows")))
    })
}

/// Tests whether a quasi-formation over `Λ` admits a lagrangian complement
/// to `V`, returning one as witness.
///
/// `V(1)` must be lagrangian. A lagrangian complement of `V(-1)` comes from
/// the options or a bounded search; failure to find one is inconclusive.
pub fn elementary_criterion(qf: &QuasiFormation, opts: &CriterionOptions) -> ElementaryVerdict {
    let inconclusive = |s: &str| ElementaryVerdict::Inconclusive(s.into());
    let plus = qf.eigen(Sign::Plus);
    match plus.is_lagrangian(plus.v_basis()) {
        Ok(true) => {}
        Ok(false) => return inconclusive("E+ not lagrangian"),
        Err(e) => return ElementaryVerdict::Inconclusive(e.to_string()),
    }
    let lambda = qf.lambda();
    let x_minus = qf.v_eval(Sign::Minus);
    if qf.rank() == 0 {
        return ElementaryVerdict::Elementary(GrMatrix::zeros(0, 0));
    }
    let u_minus = match &opts.minus_complement {
        Some(u) => u.clone(),
        None => match search_minus_complement(&lambda.eval(Sign::Minus), &x_minus, opts.max_coefficient) {
            Some(u) => u,
            None => return inconclusive("no lagrangian complement of E-(V) within the search bound"),
        },
    };
    match find_lagrangian_complement(&lambda, qf.v_basis(), &u_minus) {
        Ok(u) => ElementaryVerdict::Elementary(u),
        Err(e) => ElementaryVerdict::Inconclusive(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::hyperbolic_rep;
    use crate::Ring;

    fn hyperbolic_lambda(n: usize) -> GrMatrix {
        let h = hyperbolic_rep(n);
        &h + &h.transpose()
    }

    #[test]
    fn dual_lagrangian_is_found() {
        let lambda = hyperbolic_lambda(2);
        let q = QuasiFormation::trivial(Ring::Gr, 2);
        let f = q.f_basis().eval(Sign::Minus);
        let u = find_lagrangian_complement(&lambda, q.v_basis(), &f).unwrap();
        assert!(is_lagrangian_complement(&lambda, q.v_basis(), &u));
    }

    #[test]
    fn violated_plus_condition() {
        let lambda = hyperbolic_lambda(1);
        let v = GrMatrix::from_pairs(&[[(1, 0)], [(1, 0)]]);
        let u = IntMatrix::column(&[0, 1]);
        assert_eq!(
            find_lagrangian_complement(&lambda, &v, &u),
            Err(GrError::PreconditionViolated("V(1) is not lagrangian".into()))
        );
        let q = QuasiFormation::boundary(Ring::Gr, &GrMatrix::from_pairs(&[[(1, 0)]])).unwrap();
        assert_eq!(
            elementary_criterion(&q, &CriterionOptions::default()),
            ElementaryVerdict::Inconclusive("E+ not lagrangian".into())
        );
    }

    #[test]
    fn search_handles_trivial_formation() {
        let q = QuasiFormation::trivial(Ring::Gr, 2);
        let ElementaryVerdict::Elementary(u) = elementary_criterion(&q, &CriterionOptions::default()) else {
            panic!("trivial formation should be elementary");
        };
        assert!(is_lagrangian_complement(&q.lambda(), q.v_basis(), &u));
    }
}
