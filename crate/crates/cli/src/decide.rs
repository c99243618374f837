use gmforms::SurfaceInvariants;
use linkforms::{boundary_form, ell5_trivial, Ell5Options, Ell5Verdict, TrivialRoute, DEFAULT_GROUP_CAP};
use serde::{Deserialize, Serialize};
use zforms::{hyperbolic, theta_ab, QuadFormZ};

use crate::{rationals, to_i64_rows, CliError, Result};

/// Which unknotting statement covers the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Closed surfaces in the 4-sphere.
    TheoremA,
    /// Surfaces in the 4-ball bounding a knot with `|det K| = 1`.
    TheoremB,
    /// Isotopy after one internal stabilisation.
    #[serde(rename = "TheoremC_stabilized")]
    TheoremCStabilized,
    #[serde(rename = "None")]
    NoneApplicable,
}

/// How triviality of the orbit set was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    #[serde(rename = "Appendix_bAut")]
    AppendixBaut,
    Nikulin,
    #[serde(rename = "Stabilized_Nikulin")]
    StabilizedNikulin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingSummary {
    /// Invariant factors of the discriminant group.
    pub factors: Vec<u64>,
    /// Values of the quadratic linking form on the generators, as fractions.
    pub nu_on_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Details {
    pub h: u32,
    pub e: i64,
    pub sigma_k: i64,
    pub det_k_abs: u64,
    /// Signature of the double branched cover.
    pub sigma: i64,
    pub a: usize,
    pub b: usize,
    pub extremal: bool,
    pub stabilized: bool,
    /// Whether `h ≤ 3` or `e` is non-extremal, the hypotheses under which
    /// the statement was originally proved. Outside them a trivial orbit set
    /// still completes the argument.
    pub hypotheses_met: bool,
    /// Representative of the form whose double is examined.
    pub theta: Option<Vec<Vec<i64>>>,
    pub linking_form: Option<LinkingSummary>,
    pub orbit_count: Option<usize>,
    pub note: Option<String>,
}

/// Outcome of the decision pipeline. It reports which theorem applies and
/// never claims a surface is knotted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawVerdict")]
pub struct Verdict {
    pub applicable_theorem: Theorem,
    pub route: Option<Route>,
    pub reason: Option<String>,
    pub details: Details,
}

#[derive(Deserialize)]
struct RawVerdict {
    applicable_theorem: Theorem,
    route: Option<Route>,
    reason: Option<String>,
    details: Details,
}

impl TryFrom<RawVerdict> for Verdict {
    type Error = String;

    fn try_from(raw: RawVerdict) -> std::result::Result<Self, String> {
        match (raw.applicable_theorem, &raw.route, &raw.reason) {
            (Theorem::NoneApplicable, Some(_), _) => Err("a verdict without a theorem has no route".into()),
            (Theorem::NoneApplicable, None, None) => Err("a verdict without a theorem needs a reason".into()),
            (Theorem::NoneApplicable, None, Some(r)) if r.is_empty() => Err("empty reason".into()),
            (t, None, _) if t != Theorem::NoneApplicable => Err("an applicable theorem needs a route".into()),
            _ => Ok(Self {
                applicable_theorem: raw.applicable_theorem,
                route: raw.route,
                reason: raw.reason,
                details: raw.details,
            }),
        }
    }
}

impl Verdict {
    fn applies(theorem: Theorem, route: Route, details: Details) -> Self {
        Self { applicable_theorem: theorem, route: Some(route), reason: None, details }
    }

    fn abstain(reason: impl Into<String>, details: Details) -> Self {
        Self { applicable_theorem: Theorem::NoneApplicable, route: None, reason: Some(reason.into()), details }
    }

    pub fn is_applicable(&self) -> bool {
        self.applicable_theorem != Theorem::NoneApplicable
    }
}

/// Decides which unknotting theorem covers surfaces with the given data.
///
/// `definite_bound` is the largest rank for which a definite form is
/// attacked by direct enumeration.
pub fn decide(inv: &SurfaceInvariants, stabilized: bool, definite_bound: usize) -> Result<Verdict> {
    let h = i64::from(inv.h);
    if inv.e % 2 != 0 {
        return Err(CliError::InvalidParity(format!("e = {} is odd", inv.e)));
    }
    let sigma = inv.sigma_k - inv.e / 2;
    if (sigma - h) % 2 != 0 {
        return Err(CliError::InvalidParity(format!("σ = {sigma} and h = {h} differ in parity")));
    }
    if !inv.in_range() {
        return Err(CliError::EulerOutOfRange { h: inv.h, e: inv.e, sigma_k: inv.sigma_k });
    }
    let a = ((h + sigma) / 2) as usize;
    let b = ((h - sigma) / 2) as usize;
    let extremal = sigma.abs() == h;
    let mut details = Details {
        h: inv.h,
        e: inv.e,
        sigma_k: inv.sigma_k,
        det_k_abs: inv.det_k_abs,
        sigma,
        a,
        b,
        extremal,
        stabilized,
        hypotheses_met: h <= 3 || !extremal,
        theta: None,
        linking_form: None,
        orbit_count: None,
        note: None,
    };

    let unavailable = if inv.det_k_abs != 1 {
        Some(format!("form classification unavailable: |det K| = {} is not 1", inv.det_k_abs))
    } else if extremal && h == 9 {
        Some("definite h=9 beyond classification: E8 ⊕ (1) is not ruled out for locally flat surfaces".to_string())
    } else if extremal && h > 8 {
        Some(format!("form classification unavailable: definite rank {h} admits non-diagonal forms"))
    } else {
        None
    };
    if let Some(why) = unavailable {
        if !stabilized {
            return Ok(Verdict::abstain(why, details));
        }
        // With a hyperbolic summand of the doubled form, the rank exceeds the
        // number of p-primary summands by two for every odd p and the 2-part
        // contains the required hyperbolic block, whatever the unknown form is.
        details.note = Some(format!("{why}; the stabilised criterion holds for every form of this rank"));
        return Ok(Verdict::applies(Theorem::TheoremCStabilized, Route::StabilizedNikulin, details));
    }

    let mut theta: QuadFormZ = theta_ab(a, b)?;
    if stabilized {
        theta = theta.direct_sum(&hyperbolic(1));
    }
    let doubled = theta.scale(2);
    details.theta = Some(to_i64_rows(&theta.canonical())?);
    let boundary = boundary_form(&doubled)?;
    details.linking_form = Some(LinkingSummary {
        factors: boundary.form().factors().to_vec(),
        nu_on_generators: rationals(&boundary.form().nu_on_generators()),
    });

    let opts = Ell5Options { definite_max_rank: definite_bound, cap: DEFAULT_GROUP_CAP, ..Ell5Options::default() };
    Ok(match ell5_trivial(&doubled, opts) {
        Ell5Verdict::Trivial(route) => {
            details.orbit_count = Some(1);
            let route = match (route, stabilized) {
                (TrivialRoute::Nikulin, true) => Route::StabilizedNikulin,
                (TrivialRoute::Nikulin, false) => Route::Nikulin,
                (TrivialRoute::DirectBaut, _) => Route::AppendixBaut,
            };
            if !details.hypotheses_met {
                details.note = Some("extremal with h > 3: settled by direct enumeration of the orbit set".into());
            }
            let theorem = if stabilized { Theorem::TheoremCStabilized } else { Theorem::TheoremB };
            Verdict::applies(theorem, route, details)
        }
        Ell5Verdict::Nontrivial(k) => {
            details.orbit_count = Some(k);
            Verdict::abstain(
                format!(
                    "the orbit set has {k} elements, so this method gives no conclusion (not evidence of knotting)"
                ),
                details,
            )
        }
        Ell5Verdict::Unknown(why) => Verdict::abstain(why, details),
    })
}

/// Closed surfaces: puncture and compare with the unknot as boundary.
pub fn decide_closed(h: u32, e: i64, stabilized: bool, definite_bound: usize) -> Result<Verdict> {
    let inv = SurfaceInvariants::new(h, e, 0, 1)?;
    let mut v = decide(&inv, stabilized, definite_bound)?;
    if v.applicable_theorem == Theorem::TheoremB {
        v.applicable_theorem = Theorem::TheoremA;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(h: u32, e: i64, sigma_k: i64, det: u64) -> SurfaceInvariants {
        SurfaceInvariants::new(h, e, sigma_k, det).unwrap()
    }

    #[test]
    fn klein_bottle_with_zero_euler_number() {
        let v = decide(&inv(2, 0, 0, 1), false, 5).unwrap();
        assert_eq!(v.applicable_theorem, Theorem::TheoremB);
        assert!(matches!(v.route, Some(Route::AppendixBaut | Route::Nikulin)));
        assert_eq!((v.details.a, v.details.b), (1, 1));
        assert_eq!(v.details.linking_form.unwrap().factors, vec![4, 4]);
    }

    #[test]
    fn extremal_genus_three() {
        let v = decide(&inv(3, -6, 0, 1), false, 5).unwrap();
        assert_eq!(v.applicable_theorem, Theorem::TheoremB);
        assert_eq!(v.route, Some(Route::AppendixBaut));
        assert_eq!(v.details.sigma, 3);
        assert_eq!(v.details.linking_form.unwrap().factors, vec![2, 2, 8]);
    }

    #[test]
    fn genus_nine_extremal_abstains() {
        let v = decide(&inv(9, 18, 0, 1), false, 5).unwrap();
        assert_eq!(v.applicable_theorem, Theorem::NoneApplicable);
        assert!(v.reason.unwrap().contains("definite h=9 beyond classification"));
    }

    #[test]
    fn bad_determinant_abstains_unless_stabilised() {
        let v = decide(&inv(2, 0, 0, 3), false, 5).unwrap();
        assert!(v.reason.unwrap().contains("form classification unavailable"));
        let s = decide(&inv(2, 0, 0, 3), true, 5).unwrap();
        assert_eq!((s.applicable_theorem, s.route), (Theorem::TheoremCStabilized, Some(Route::StabilizedNikulin)));
    }

    #[test]
    fn errors() {
        assert_eq!(
            decide(&inv(2, 2, 0, 1), false, 5),
            Err(CliError::InvalidParity("σ = -1 and h = 2 differ in parity".into()))
        );
        assert_eq!(decide(&inv(2, 8, 0, 1), false, 5), Err(CliError::EulerOutOfRange { h: 2, e: 8, sigma_k: 0 }));
        assert!(matches!(decide(&inv(1, 3, 0, 1), false, 5), Err(CliError::InvalidParity(_))));
    }

    #[test]
    fn closed_surfaces_use_the_closed_statement() {
        let v = decide_closed(1, 2, false, 5).unwrap();
        assert_eq!(v.applicable_theorem, Theorem::TheoremA);
    }

    #[test]
    fn deserialising_enforces_the_reason() {
        let v = decide(&inv(9, 18, 0, 1), false, 5).unwrap();
        let mut json: serde_json::Value = serde_json::to_value(&v).unwrap();
        assert_eq!(json["applicable_theorem"], "None");
        json["reason"] = serde_json::Value::Null;
        assert!(serde_json::from_value::<Verdict>(json).is_err());
    }
}
