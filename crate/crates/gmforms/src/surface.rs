use crate::{GmError, Result, Z4QuadForm, Z4, Z8};

/// Possible normal Euler numbers of a nonorientable surface of genus `h`
/// bounding a knot of signature `sigma_k`: from `2σ − 2h` to `2σ + 2h` in
/// steps of 4.
pub fn massey_range(h: u32, sigma_k: i64) -> Vec<i64> {
    let h = i64::from(h);
    (0..=h).map(|k| 2 * sigma_k - 2 * h + 4 * k).collect()
}

/// Numerical data of a surface in the 4-ball bounding a knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceInvariants {
    /// Nonorientable genus.
    pub h: u32,
    /// Normal Euler number.
    pub e: i64,
    /// Signature of the boundary knot.
    pub sigma_k: i64,
    /// Absolute value of the knot determinant.
    pub det_k_abs: u64,
}

impl SurfaceInvariants {
    pub fn new(h: u32, e: i64, sigma_k: i64, det_k_abs: u64) -> Result<Self> {
        if h == 0 {
            return Err(GmError::InvalidInvariants("genus must be positive".into()));
        }
        if sigma_k % 2 != 0 {
            return Err(GmError::InvalidInvariants(format!("knot signature {sigma_k} is odd")));
        }
        if det_k_abs % 2 == 0 {
            return Err(GmError::InvalidInvariants(format!("knot determinant {det_k_abs} is not odd")));
        }
        Ok(Self { h, e, sigma_k, det_k_abs })
    }

    pub fn in_range(&self) -> bool {
        let offset = self.e - 2 * self.sigma_k;
        offset.abs() <= 2 * i64::from(self.h) && (offset + 2 * i64::from(self.h)) % 4 == 0
    }

    fn require_in_range(&self) -> Result<()> {
        if self.in_range() {
            Ok(())
        } else {
            Err(GmError::EulerOutOfRange { h: self.h, e: self.e, sigma_k: self.sigma_k })
        }
    }

    /// `|e − 2σ(K)| = 2h`, i.e. `e` is an endpoint of the range.
    pub fn is_extremal(&self) -> Result<bool> {
        self.require_in_range()?;
        Ok((self.e - 2 * self.sigma_k).abs() == 2 * i64::from(self.h))
    }

    /// Signature of the double branched cover, `σ(K) − e/2`.
    pub fn branched_cover_signature(&self) -> Result<i64> {
        self.require_in_range()?;
        Ok(self.sigma_k - self.e / 2)
    }
}

/// The refinement of the diagonal form of genus `h` whose Brown invariant
/// is `−e/2` mod 8, for an unknotted boundary.
///
/// It has `(h − e/2)/2` basis values 1 followed by `(h + e/2)/2` values 3.
pub fn standard_gm_form(h: u32, e: i64) -> Result<Z4QuadForm> {
    if h == 0 || !massey_range(h, 0).contains(&e) {
        return Err(GmError::EulerOutOfRange { h, e, sigma_k: 0 });
    }
    let h = i64::from(h);
    let ones = (h - e / 2) / 2;
    let q: Vec<Z4> = (0..h).map(|i| Z4::new(if i < ones { 1 } else { 3 })).collect();
    Z4QuadForm::standard(&q)
}

/// Whether `β(q) ≡ −e/2 + 4·Arf(boundary)` mod 8.
pub fn check_gm_congruence(form: &Z4QuadForm, e: i64, arf_boundary: bool) -> Result<bool> {
    if e % 2 != 0 {
        return Err(GmError::OddEulerNumber(e));
    }
    let expected = Z8::new(-e / 2 + if arf_boundary { 4 } else { 0 });
    Ok(form.brown_kervaire()? == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(massey_range(1, 0), vec![-2, 2]);
        assert_eq!(massey_range(2, 0), vec![-4, 0, 4]);
        assert_eq!(massey_range(3, 2), vec![-2, 2, 6, 10]);
    }

    #[test]
    fn extremality() {
        let s = |h, e, sk| SurfaceInvariants::new(h, e, sk, 1).unwrap();
        assert!(s(2, 4, 0).is_extremal().unwrap());
        assert!(!s(2, 0, 0).is_extremal().unwrap());
        assert!(s(3, 10, 2).is_extremal().unwrap());
        assert_eq!(s(2, 2, 0).is_extremal(), Err(GmError::EulerOutOfRange { h: 2, e: 2, sigma_k: 0 }));
    }

    #[test]
    fn standard_forms() {
        let f = standard_gm_form(1, -2).unwrap();
        assert_eq!(f.q_basis(), &[Z4::new(1)]);
        assert_eq!(f.brown_kervaire().unwrap(), Z8::new(1));
        let g = standard_gm_form(1, 2).unwrap();
        assert_eq!(g.q_basis(), &[Z4::new(3)]);
        assert_eq!(g.brown_kervaire().unwrap(), Z8::new(7));
        let k = standard_gm_form(2, 0).unwrap();
        assert_eq!(k.q_basis(), &[Z4::new(1), Z4::new(3)]);
        assert_eq!(k.brown_kervaire().unwrap(), Z8::new(0));
        assert!(standard_gm_form(2, 2).is_err());
    }

    #[test]
    fn congruence_examples() {
        let f = standard_gm_form(1, -2).unwrap();
        assert!(check_gm_congruence(&f, -2, false).unwrap());
        assert!(!check_gm_congruence(&f, 2, false).unwrap());
        assert!(check_gm_congruence(&standard_gm_form(3, -6).unwrap(), -6, false).unwrap());
        assert_eq!(check_gm_congruence(&f, 1, false), Err(GmError::OddEulerNumber(1)));
    }
}
