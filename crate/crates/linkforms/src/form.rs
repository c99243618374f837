use std::fmt;

use exactmat::{BigInt, BigRational, IntMatrix, RatMatrix};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{LinkError, Result};

/// A split quadratic linking form on `T = ⊕ Z/dᵢ`.
///
/// In generator coordinates `ν(x) = xᵀRx` and `b(x, y) = xᵀ(R + Rᵀ)y`, both
/// mod 1. `R` is kept upper triangular with entries in `[0, 1)`, which is a
/// canonical representative for a fixed choice of generators.
#[derive(Clone, PartialEq, Eq)]
pub struct FinQuadLinkForm {
    factors: Vec<u64>,
    r: RatMatrix,
    den: u64,
    /// Row-major numerators of `R` over `den`.
    r_num: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

fn frac_mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl FinQuadLinkForm {
    /// Builds the form, canonicalising `R` and checking that `ν` and `b`
    /// are well defined on the presented group.
    pub fn new(factors: Vec<u64>, r: &RatMatrix) -> Result<Self> {
        let k = factors.len();
        if r.rows() != k || r.cols() != k {
            return Err(LinkError::InvalidForm(format!("R must be {k}x{k}")));
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(LinkError::InvalidForm("invariant factors must exceed 1".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(LinkError::InvalidForm("invariant factors must form a divisibility chain".into()));
        }
        let mut canon = RatMatrix::zeros(k, k);
        for i in 0..k {
            canon.set(i, i, frac_mod_one(r.get(i, i)));
            for j in i + 1..k {
                canon.set(i, j, frac_mod_one(&(r.get(i, j) + r.get(j, i))));
            }
        }
        let (num, den) = canon.to_numerators();
        let den = den.to_u64().ok_or_else(|| LinkError::InvalidForm("denominator too large".into()))?;
        let r_num: Vec<u64> = num.entries().iter().map(|x| x.to_u64().expect("in [0, den)")).collect();
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .ok_or_else(|| LinkError::InvalidForm("group too large to index".into()))?;
        let mut strides = vec![1usize; k];
        for i in 1..k {
            strides[i] = strides[i - 1] * factors[i - 1] as usize;
        }
        let form = Self { factors, r: canon, den, r_num, strides, order };
        form.validate()?;
        Ok(form)
    }

    fn validate(&self) -> Result<()> {
        let k = self.rank();
        for i in 0..k {
            let mut x = vec![0u64; k];
            x[i] = self.factors[i];
            if self.nu_num_raw(&x) != 0 {
                return Err(LinkError::InvalidForm(format!("ν(d{i}·e{i}) ≠ 0")));
            }
            for j in 0..k {
                let mut y = vec![0u64; k];
                y[j] = 1;
                if self.b_num_raw(&x, &y) != 0 {
                    return Err(LinkError::InvalidForm(format!("b(e{j}, d{i}·e{i}) ≠ 0")));
                }
            }
        }
        Ok(())
    }

    /// The trivial form on the zero group.
    pub fn trivial() -> Self {
        Self::new(Vec::new(), &RatMatrix::zeros(0, 0)).expect("empty form")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of cyclic generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `|T|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The canonical matrix `R`.
    pub fn r(&self) -> &RatMatrix {
        &self.r
    }

    /// Common denominator of all values of `ν` and `b`.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Numerators of `R` as an integer matrix over [`Self::denominator`].
    pub fn numerators(&self) -> IntMatrix {
        let k = self.rank();
        IntMatrix::from_vec(k, k, self.r_num.iter().map(|&x| BigInt::from(x)).collect()).expect("k×k")
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let c = (idx % d as usize) as u64;
                idx /= d as usize;
                c
            })
            .collect()
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order).map(|i| self.coords(i))
    }

    /// Reduces integer coordinates into `[0, dᵢ)`.
    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(&c, &d)| c.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn scale(&self, m: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(a, d)| (a * (m % d)) % d).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    fn nu_num_raw(&self, x: &[u64]) -> u64 {
        let k = self.rank();
        let den = self.den as u128;
        let mut total = 0u128;
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as u128 % den;
            for j in i..k {
                let rij = self.r_num[i * k + j] as u128;
                if rij != 0 {
                    total = (total + rij * xi % den * (x[j] as u128 % den)) % den;
                }
            }
        }
        total as u64
    }

    fn b_num_raw(&self, x: &[u64], y: &[u64]) -> u64 {
        let k = self.rank();
        let den = self.den as u128;
        let mut total = 0u128;
        for i in 0..k {
            for j in 0..k {
                let s = if i == j {
                    2 * self.r_num[i * k + i] as u128
                } else {
                    self.r_num[i.min(j) * k + i.max(j)] as u128
                };
                if s != 0 {
                    total = (total + s * (x[i] as u128 % den) % den * (y[j] as u128 % den)) % den;
                }
            }
        }
        total as u64
    }

    /// Numerator of `ν(x)` over [`Self::denominator`].
    pub fn nu_num(&self, x: &[u64]) -> u64 {
        self.nu_num_raw(x)
    }

    /// Numerator of `b(x, y)` over [`Self::denominator`].
    pub fn b_num(&self, x: &[u64], y: &[u64]) -> u64 {
        self.b_num_raw(x, y)
    }

    /// `ν(x)` as a fraction in `[0, 1)`.
    pub fn nu(&self, x: &[u64]) -> BigRational {
        BigRational::new(self.nu_num(x).into(), self.den.into())
    }

    /// `b(x, y)` as a fraction in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(self.b_num(x, y).into(), self.den.into())
    }

    /// `ν` on each generator.
    pub fn nu_on_generators(&self) -> Vec<BigRational> {
        (0..self.rank()).map(|i| self.nu(&self.unit(i))).collect()
    }

    /// The pairing on generators.
    pub fn b_matrix(&self) -> RatMatrix {
        let k = self.rank();
        let mut m = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.b(&self.unit(i), &self.unit(j)));
            }
        }
        m
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut x = vec![0; self.rank()];
        x[i] = 1;
        x
    }

    /// Values of `ν` on every element, scaled to denominator `den`, which
    /// must be a multiple of [`Self::denominator`].
    pub(crate) fn nu_table(&self, den: u64) -> Vec<u64> {
        let scale = den / self.den;
        (0..self.order).map(|i| self.nu_num(&self.coords(i)) * scale).collect()
    }

    /// True iff `x ↦ ν(x)` is identically zero and `b` vanishes.
    pub fn is_trivial_form(&self) -> bool {
        self.r_num.iter().all(|&x| x == 0)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        // Direct sums of chains need not be chains, so this only supports the
        // case where the concatenation is already sorted by divisibility.
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        let k = factors.len();
        let mut r = RatMatrix::zeros(k, k);
        let a = self.rank();
        for i in 0..a {
            for j in 0..a {
                r.set(i, j, self.r.get(i, j).clone());
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                r.set(a + i, a + j, other.r.get(i, j).clone());
            }
        }
        Self::new(factors, &r)
    }
}

impl fmt::Debug for FinQuadLinkForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinQuadLinkForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "T = 0");
        }
        let group: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        let nus: Vec<String> = self.nu_on_generators().iter().map(ToString::to_string).collect();
        write!(f, "T = {}; ν(gᵢ) = ({})", group.join(" ⊕ "), nus.join(", "))
    }
}

impl Default for FinQuadLinkForm {
    fn default() -> Self {
        Self::trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cyclic(d: u64, r: BigRational) -> FinQuadLinkForm {
        let m = RatMatrix::from_vec(1, 1, vec![r]).unwrap();
        FinQuadLinkForm::new(vec![d], &m).unwrap()
    }

    #[test]
    fn cyclic_of_order_eight() {
        let f = cyclic(8, rat(1, 16));
        assert_eq!(f.order(), 8);
        assert_eq!(f.nu(&[3]), rat(9, 16));
        assert_eq!(f.b(&[1], &[1]), rat(1, 8));
        assert_eq!(f.element_order(&[2]), 4);
    }

    #[test]
    fn ill_defined_refinement_rejected() {
        let m = RatMatrix::from_vec(1, 1, vec![rat(1, 3)]).unwrap();
        assert!(FinQuadLinkForm::new(vec![2], &m).is_err());
    }

    #[test]
    fn canonical_form_folds_lower_triangle() {
        let r = RatMatrix::from_vec(2, 2, vec![rat(0, 1), rat(1, 4), rat(1, 4), rat(0, 1)]).unwrap();
        let f = FinQuadLinkForm::new(vec![2, 2], &r).unwrap();
        assert_eq!(f.r().get(0, 1), &rat(1, 2));
        assert_eq!(f.r().get(1, 0), &rat(0, 1));
        assert_eq!(f.nu(&[1, 1]), rat(1, 2));
        assert_eq!(f.b(&[1, 0], &[0, 1]), rat(1, 2));
    }

    #[test]
    fn index_round_trip() {
        let r = RatMatrix::zeros(3, 3);
        let f = FinQuadLinkForm::new(vec![2, 2, 8], &r).unwrap();
        for i in 0..f.order() {
            assert_eq!(f.index(&f.coords(i)), i);
        }
    }
}
