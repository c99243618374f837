use exactmat::{
    integer_inverse, rational_inverse, smith_normal_form, solve_integer, BigInt, BigRational, IntMatrix, RatMatrix,
};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use zforms::{QuadFormZ, SymFormZ};

use crate::{FinQuadLinkForm, LinkAut, LinkError, Result};

/// The boundary linking form of `θ`, with the data needed to push
/// isometries of `θ` down to it.
#[derive(Clone, Debug)]
pub struct BoundaryForm {
    theta: QuadFormZ,
    gram: SymFormZ,
    /// Columns are integer lifts of the generators of `coker(A)`.
    lifts: IntMatrix,
    /// Row `j` gives the `j`-th generator coordinate of `[x]`, mod `dⱼ`.
    coords: IntMatrix,
    form: FinQuadLinkForm,
    /// `A⁻¹·lifts` as numerators over `lift_den`.
    inv_lifts_num: Vec<i64>,
    lift_den: i64,
    gram_i64: Vec<i64>,
    coords_i64: Vec<i64>,
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Computes the boundary linking form of a nondegenerate `θ`.
///
/// Standard basis vectors are used as generators when their classes happen
/// to be independent with orders equal to the invariant factors (sorted by
/// order); otherwise the Smith normal form supplies generators.
pub fn boundary_form(theta: &QuadFormZ) -> Result<BoundaryForm> {
    let gram = theta.symmetrize();
    let a = gram.gram().clone();
    let n = a.rows();
    if gram.det().is_zero() {
        return Err(LinkError::DegenerateForm);
    }
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();
    let nonunit: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
    let factors: Vec<u64> = nonunit
        .iter()
        .map(|&i| diag[i].to_u64().ok_or_else(|| LinkError::InvalidForm("invariant factor too large".into())))
        .collect::<Result<_>>()?;
    let k = factors.len();
    let u_sub = IntMatrix::from_vec(k, n, nonunit.iter().flat_map(|&i| snf.u.row(i).to_vec()).collect())?;
    let a_inv = rational_inverse(&a)?;

    let class_order = |col: usize| -> u64 {
        let den = lcm_of_denominators((0..n).map(|i| a_inv.get(i, col)));
        den.to_u64().unwrap_or(u64::MAX)
    };
    let mut standard: Vec<usize> = (0..n).filter(|&i| class_order(i) > 1).collect();
    standard.sort_by_key(|&i| class_order(i));
    let orders: Vec<u64> = standard.iter().map(|&i| class_order(i)).collect();

    let u_inv = integer_inverse(&snf.u)?;
    let snf_lifts = u_inv.select_columns(&nonunit);
    // Lift coordinates of each SNF generator: solve L·c + A·y = g. With the
    // right orders, solvability for every g makes the lifts a basis.
    let lift_coordinates = |lifts: &IntMatrix| -> Result<Option<IntMatrix>> {
        let system = lifts.hstack(&a)?;
        let mut zmat = IntMatrix::zeros(k, k);
        for i in 0..k {
            let Some(sol) = solve_integer(&system, &snf_lifts.select_columns(&[i]))? else {
                return Ok(None);
            };
            for j in 0..k {
                zmat.set(j, i, sol.get(j, 0).clone());
            }
        }
        Ok(Some(zmat))
    };

    let standard_lifts = IntMatrix::identity(n).select_columns(&standard);
    let standard_zmat = if orders == factors { lift_coordinates(&standard_lifts)? } else { None };
    let (lifts, zmat) = match standard_zmat {
        Some(z) => (standard_lifts, z),
        None => (snf_lifts, IntMatrix::identity(k)),
    };

    let mut coords = &zmat * &u_sub;
    for j in 0..k {
        for c in 0..n {
            let v = coords.get(j, c).mod_floor(&BigInt::from(factors[j]));
            coords.set(j, c, v);
        }
    }

    let inv_lifts = RatMatrix::from(&lifts);
    let p = a_inv.checked_mul(&inv_lifts)?;
    let q = RatMatrix::from(theta.rep());
    let r = p.transpose().checked_mul(&q)?.checked_mul(&p)?;
    let form = FinQuadLinkForm::new(factors, &r)?;

    let (p_num, p_den) = p.to_numerators();
    let to_i64 = |m: &IntMatrix| m.to_i64_vec().ok_or_else(|| LinkError::InvalidForm("entries too large".into()));
    Ok(BoundaryForm {
        theta: theta.clone(),
        inv_lifts_num: to_i64(&p_num)?,
        lift_den: p_den.to_i64().ok_or_else(|| LinkError::InvalidForm("denominator too large".into()))?,
        gram_i64: to_i64(&a)?,
        coords_i64: to_i64(&coords)?,
        gram,
        lifts,
        coords,
        form,
    })
}

impl BoundaryForm {
    pub fn form(&self) -> &FinQuadLinkForm {
        &self.form
    }

    pub fn theta(&self) -> &QuadFormZ {
        &self.theta
    }

    pub fn gram(&self) -> &SymFormZ {
        &self.gram
    }

    /// Integer lifts of the generators, as columns.
    pub fn lifts(&self) -> &IntMatrix {
        &self.lifts
    }

    /// The matrix sending `x ∈ Zⁿ` to the generator coordinates of `[x]`.
    pub fn coordinate_map(&self) -> &IntMatrix {
        &self.coords
    }

    /// Generator coordinates of the class of `x`.
    pub fn class_of(&self, x: &[i64]) -> Vec<u64> {
        let n = x.len();
        let k = self.form.rank();
        let raw: Vec<i64> = (0..k).map(|j| (0..n).map(|c| self.coords_i64[j * n + c] * x[c]).sum()).collect();
        self.form.reduce(&raw)
    }

    /// The induced automorphism `(hᵀ)⁻¹` of the linking form.
    ///
    /// Checks that `h` is an isometry and that the result preserves `ν`.
    pub fn boundary_map(&self, h: &IntMatrix) -> Result<LinkAut> {
        let a = self.gram.gram();
        if &a.congruence(h)? != a {
            return Err(LinkError::NotAnIsometry);
        }
        let hv = h.to_i64_vec().ok_or_else(|| LinkError::InvalidForm("entries too large".into()))?;
        let f = self.boundary_map_unchecked(&hv);
        let form = &self.form;
        for x in form.elements() {
            if form.nu_num(&f.apply(form, &x)) != form.nu_num(&x) {
                return Err(LinkError::Internal("boundary map does not preserve ν".into()));
            }
        }
        Ok(f)
    }

    /// `(hᵀ)⁻¹` on generators for a row-major isometry `h`, with no checks.
    /// Uses `(hᵀ)⁻¹ = A h A⁻¹`.
    pub fn boundary_map_unchecked(&self, h: &[i64]) -> LinkAut {
        let n = self.gram.rank();
        let k = self.form.rank();
        let p = &self.inv_lifts_num;
        let images = (0..k)
            .map(|j| {
                let hp: Vec<i128> =
                    (0..n).map(|r| (0..n).map(|c| h[r * n + c] as i128 * p[c * k + j] as i128).sum()).collect();
                let w: Vec<i64> = (0..n)
                    .map(|r| {
                        let v: i128 = (0..n).map(|c| self.gram_i64[r * n + c] as i128 * hp[c]).sum();
                        debug_assert_eq!(v % self.lift_den as i128, 0);
                        (v / self.lift_den as i128) as i64
                    })
                    .collect();
                self.class_of(&w)
            })
            .collect();
        LinkAut::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zforms::{hyperbolic, x_form};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn quad(rows: &[&[i64]]) -> QuadFormZ {
        let n = rows.len();
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        QuadFormZ::new(IntMatrix::from_i64(n, n, &flat)).unwrap()
    }

    #[test]
    fn rank_one_four() {
        let b = boundary_form(&quad(&[&[4]])).unwrap();
        assert_eq!(b.form().factors(), &[8]);
        for x in 0..8u64 {
            assert_eq!(b.form().nu(&[x]), rat((x * x) as i64, 16) - (rat((x * x) as i64, 16)).floor());
        }
    }

    #[test]
    fn diag_two_two() {
        let b = boundary_form(&quad(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(b.form().factors(), &[4, 4]);
        for x in b.form().elements() {
            let v = rat((x[0] * x[0] + x[1] * x[1]) as i64, 8);
            assert_eq!(b.form().nu(&x), &v - v.floor());
        }
    }

    #[test]
    fn hyperbolic_doubled() {
        let b = boundary_form(&hyperbolic(1).scale(2)).unwrap();
        assert_eq!(b.form().factors(), &[2, 2]);
        assert_eq!(b.form().nu(&[1, 1]), rat(1, 2));
        assert_eq!(b.form().nu(&[1, 0]), rat(0, 1));
    }

    #[test]
    fn unimodular_gives_trivial_group() {
        let b = boundary_form(&hyperbolic(2)).unwrap();
        assert_eq!(b.form().order(), 1);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(boundary_form(&quad(&[&[0, 1], &[-1, 0]])), Err(LinkError::DegenerateForm)));
    }

    #[test]
    fn identity_and_negation_boundaries() {
        let b = boundary_form(&quad(&[&[4]])).unwrap();
        let id = b.boundary_map(&IntMatrix::identity(1)).unwrap();
        assert_eq!(id.images(), &[vec![1]]);
        let neg = b.boundary_map(&IntMatrix::from_rows(&[[-1]])).unwrap();
        assert_eq!(neg.images(), &[vec![7]]);
        assert_eq!(b.boundary_map(&IntMatrix::from_rows(&[[2]])), Err(LinkError::NotAnIsometry));
    }

    #[test]
    fn swap_on_diag_two_two() {
        let b = boundary_form(&quad(&[&[2, 0], &[0, 2]])).unwrap();
        let swap = b.boundary_map(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!(swap.images(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn snf_fallback_is_consistent() {
        // 2·X₃ needs the fallback or a permuted standard basis; either way
        // every lift must map to its own generator.
        let b = boundary_form(&x_form(3).scale(2)).unwrap();
        assert_eq!(b.form().factors(), &[2, 2, 8]);
        for j in 0..b.form().rank() {
            let col: Vec<i64> = b.lifts().col(j).iter().map(|x| x.to_i64().unwrap()).collect();
            assert_eq!(b.class_of(&col), b.form().unit(j));
        }
    }
}
