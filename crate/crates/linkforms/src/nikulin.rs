use exactmat::cokernel_invariants;
use num_traits::ToPrimitive;
use zforms::QuadFormZ;

use crate::{baut, boundary_form, BautOptions, Exec, LinkError, Result, DEFAULT_GROUP_CAP};

/// Number of invariant factors divisible by the prime `p`.
pub fn n_p(factors: &[u64], p: u64) -> Result<usize> {
    if p < 2 || (2..).take_while(|q| q * q <= p).any(|q| p % q == 0) {
        return Err(LinkError::NotPrime(p));
    }
    Ok(factors.iter().filter(|&&d| d % p == 0).count())
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NikulinVerdict {
    /// Every automorphism of the boundary form is induced by an isometry.
    Surjective,
    NotApplicable(String),
}

/// Nikulin's sufficient condition for `Aut(θ) → Aut(∂θ)` to be onto:
/// indefiniteness, `rank ≥ n_p + 2` for odd `p`, and when `rank = n₂` an
/// orthogonal summand isomorphic to the boundary of `[[0, 2], [0, 0]]`.
pub fn nikulin_check(theta: &QuadFormZ) -> Result<NikulinVerdict> {
    let gram = theta.symmetrize();
    if !gram.is_nondegenerate() {
        return Err(LinkError::DegenerateForm);
    }
    if gram.is_definite() {
        return Ok(NikulinVerdict::NotApplicable("indefinite required".into()));
    }
    let rank = theta.rank();
    let factors: Vec<u64> = cokernel_invariants(gram.gram())
        .torsion
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| LinkError::InvalidForm("invariant factor too large".into())))
        .collect::<Result<_>>()?;
    let primes = factors.last().map(|&e| prime_divisors(e)).unwrap_or_default();
    for &p in primes.iter().filter(|&&p| p != 2) {
        let np = n_p(&factors, p)?;
        if rank < np + 2 {
            return Ok(NikulinVerdict::NotApplicable(format!("rank {rank} < n_{p} + 2 = {}", np + 2)));
        }
    }
    if rank == n_p(&factors, 2)? && !has_hyperbolic_summand(theta)? {
        return Ok(NikulinVerdict::NotApplicable("rank equals n_2 and no hyperbolic order-2 summand".into()));
    }
    Ok(NikulinVerdict::Surjective)
}

/// Looks for order-2 `x`, `y` with `ν(x) = ν(y) = 0`, `b(x, y) = 1/2` whose
/// span splits off orthogonally.
fn has_hyperbolic_summand(theta: &QuadFormZ) -> Result<bool> {
    let boundary = boundary_form(theta)?;
    let form = boundary.form();
    if form.order() > DEFAULT_GROUP_CAP {
        return Err(LinkError::GroupTooLarge { order: form.order(), cap: DEFAULT_GROUP_CAP });
    }
    let den = form.denominator();
    let half = den / 2;
    let isotropic: Vec<Vec<u64>> =
        form.elements().filter(|x| form.element_order(x) == 2 && form.nu_num(x) == 0).collect();
    for (i, x) in isotropic.iter().enumerate() {
        for y in &isotropic[i + 1..] {
            if den % 2 != 0 || form.b_num(x, y) != half {
                continue;
            }
            let span = [vec![0; form.rank()], x.clone(), y.clone(), form.add(x, y)];
            let complement: Vec<Vec<u64>> =
                form.elements().filter(|z| form.b_num(z, x) == 0 && form.b_num(z, y) == 0).collect();
            let meets_trivially = span[1..].iter().all(|s| !complement.contains(s));
            if meets_trivially && complement.len() * 4 == form.order() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialRoute {
    Nikulin,
    DirectBaut,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ell5Verdict {
    Trivial(TrivialRoute),
    Nontrivial(usize),
    Unknown(String),
}

#[derive(Clone, Copy, Debug)]
pub struct Ell5Options {
    /// Largest rank for which a definite form is attempted by enumeration.
    pub definite_max_rank: usize,
    pub cap: usize,
    pub exec: Exec,
}

impl Default for Ell5Options {
    fn default() -> Self {
        Self { definite_max_rank: 5, cap: DEFAULT_GROUP_CAP, exec: Exec::default() }
    }
}

/// Decides triviality of the orbit set: Nikulin for indefinite forms, then
/// direct enumeration where the automorphism groups are finite.
pub fn ell5_trivial(theta: &QuadFormZ, opts: Ell5Options) -> Ell5Verdict {
    let gram = theta.symmetrize();
    if !gram.is_nondegenerate() {
        return Ell5Verdict::Unknown("degenerate form".into());
    }
    let definite = gram.is_definite();
    if !definite {
        match nikulin_check(theta) {
            Ok(NikulinVerdict::Surjective) => return Ell5Verdict::Trivial(TrivialRoute::Nikulin),
            Ok(NikulinVerdict::NotApplicable(_)) => {}
            Err(e) => return Ell5Verdict::Unknown(e.to_string()),
        }
    } else if theta.rank() > opts.definite_max_rank {
        return Ell5Verdict::Unknown(format!(
            "definite rank {} exceeds the enumeration bound {}",
            theta.rank(),
            opts.definite_max_rank
        ));
    }
    match baut(theta, BautOptions { cap: opts.cap, exec: opts.exec }) {
        Ok(r) if r.trivial() => Ell5Verdict::Trivial(TrivialRoute::DirectBaut),
        Ok(r) => Ell5Verdict::Nontrivial(r.orbit_count),
        Err(LinkError::IndefiniteForm) => {
            Ell5Verdict::Unknown("indefinite and Nikulin's criterion does not apply".into())
        }
        Err(e) => Ell5Verdict::Unknown(e.to_string()),
    }
}
