use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use exactmat::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{GrError, Result};

/// Sign of `T` under one of the two ring maps `Z[Z₂] → Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// `a + bT` in the group ring of `Z₂ = ⟨T | T² = 1⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrElt {
    pub a: BigInt,
    pub b: BigInt,
}

impl GrElt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn t() -> Self {
        Self::new(0, 1)
    }

    /// `1 + sT`.
    pub fn one_plus(s: Sign) -> Self {
        Self::new(1, s.value())
    }

    /// The value at `T = ±1`.
    pub fn eval(&self, s: Sign) -> BigInt {
        match s {
            Sign::Plus => &self.a + &self.b,
            Sign::Minus => &self.a - &self.b,
        }
    }

    /// Recovers `r` from `(r(1), r(-1))`; the two values must agree mod 2.
    pub fn from_evaluations(plus: &BigInt, minus: &BigInt) -> Result<Self> {
        let (sum, diff) = (plus + minus, plus - minus);
        if sum.is_odd() {
            return Err(GrError::IncompatibleEvaluations);
        }
        Ok(Self { a: sum / 2, b: diff / 2 })
    }

    /// The involution `T ↦ T⁻¹`, which is the identity since `T⁻¹ = T`.
    pub fn conj(&self) -> Self {
        self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Units are exactly `±1` and `±T`.
    pub fn is_unit(&self) -> bool {
        Sign::both().iter().all(|&s| self.eval(s).abs().is_one())
    }

    /// Both coefficients even, i.e. the element lies in `2Λ`.
    pub fn is_even(&self) -> bool {
        self.a.is_even() && self.b.is_even()
    }
}

impl fmt::Display for GrElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t_part = |f: &mut fmt::Formatter<'_>, lead: bool| -> fmt::Result {
            let b = &self.b;
            let mag = b.abs();
            let sign = match (b.is_negative(), lead) {
                (true, _) => "-",
                (false, true) => "",
                (false, false) => "+",
            };
            if mag.is_one() {
                write!(f, "{sign}T")
            } else {
                write!(f, "{sign}{mag}T")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => t_part(f, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                t_part(f, false)
            }
        }
    }
}

impl Add for &GrElt {
    type Output = GrElt;
    fn add(self, rhs: &GrElt) -> GrElt {
        GrElt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &GrElt {
    type Output = GrElt;
    fn sub(self, rhs: &GrElt) -> GrElt {
        GrElt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &GrElt {
    type Output = GrElt;
    fn mul(self, rhs: &GrElt) -> GrElt {
        GrElt { a: &self.a * &rhs.a + &self.b * &rhs.b, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl Neg for &GrElt {
    type Output = GrElt;
    fn neg(self) -> GrElt {
        GrElt { a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_idempotents_annihilate() {
        let p = GrElt::one_plus(Sign::Plus);
        let m = GrElt::one_plus(Sign::Minus);
        assert!((&p * &m).is_zero());
        assert_eq!(&p * &p, GrElt::new(2, 2));
    }

    #[test]
    fn units() {
        for (a, b, unit) in [(1, 0, true), (0, -1, true), (1, 1, false), (2, 1, false), (0, 0, false)] {
            assert_eq!(GrElt::new(a, b).is_unit(), unit, "{a}+{b}T");
        }
    }

    #[test]
    fn display() {
        assert_eq!(GrElt::new(1, -1).to_string(), "1-T");
        assert_eq!(GrElt::new(0, 2).to_string(), "2T");
        assert_eq!(GrElt::new(-3, 0).to_string(), "-3");
        assert_eq!(GrElt::new(0, -1).to_string(), "-T");
    }

    #[test]
    fn evaluation_round_trip() {
        let x = GrElt::new(3, -5);
        let back = GrElt::from_evaluations(&x.eval(Sign::Plus), &x.eval(Sign::Minus)).unwrap();
        assert_eq!(back, x);
        assert_eq!(GrElt::from_evaluations(&BigInt::from(1), &BigInt::from(0)), Err(GrError::IncompatibleEvaluations));
    }
}
