//! Quadratic forms over Z/2 with values in Z/4 or Z/2.
//!
//! Vectors of `(Z/2)^dim` are bit masks, bit `i` being the coefficient of
//! the `i`-th basis vector. A form is determined by the bilinear form and
//! its values on the basis.

use crate::{GmError, Result, MAX_ENUMERATION_DIM, MAX_ISOMETRY_DIM, Z4, Z8};

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

fn to_mask(v: &[bool]) -> u64 {
    v.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (i, _)| m | 1 << i)
}

/// Rank over Z/2 of the rows.
fn rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let reduced = basis.iter().fold(r, |x, &b| x.min(x ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Validates a square symmetric bit matrix and packs its rows.
fn pack_symmetric(bilinear: &[Vec<bool>]) -> Result<Vec<u64>> {
    let dim = bilinear.len();
    if dim > 63 {
        return Err(GmError::TooLarge(dim));
    }
    for row in bilinear {
        if row.len() != dim {
            return Err(GmError::DimMismatch { expected: dim, found: row.len() });
        }
    }
    if (0..dim).any(|i| (0..i).any(|j| bilinear[i][j] != bilinear[j][i])) {
        return Err(GmError::NotSymmetric);
    }
    Ok(bilinear.iter().map(|r| to_mask(r)).collect())
}

fn unpack(rows: &[u64]) -> Vec<Vec<bool>> {
    let dim = rows.len();
    rows.iter().map(|&r| (0..dim).map(|j| r >> j & 1 == 1).collect()).collect()
}

fn block_sum(a: &[u64], b: &[u64]) -> Vec<u64> {
    let shift = a.len();
    a.iter().copied().chain(b.iter().map(|&r| r << shift)).collect()
}

/// `Σ i^{q(x)}` as a Gaussian integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussSum {
    pub re: i64,
    pub im: i64,
}

impl GaussSum {
    /// The `k` with `self = √2^dim · ζ₈^k`, if the sum has that shape.
    pub fn phase(self, dim: usize) -> Option<Z8> {
        let (re, im) = (self.re, self.im);
        let scale = |e: usize| 1i64.checked_shl(e as u32);
        if dim % 2 == 0 {
            // An integer power of two times a fourth root of unity.
            let s = scale(dim / 2)?;
            [(s, 0), (0, s), (-s, 0), (0, -s)].iter().position(|&p| p == (re, im)).map(|k| Z8::new(2 * k as i64))
        } else {
            // A power of two times (±1 ± i).
            let s = scale((dim - 1) / 2)?;
            [(s, s), (-s, s), (-s, -s), (s, -s)].iter().position(|&p| p == (re, im)).map(|k| Z8::new(2 * k as i64 + 1))
        }
    }
}

/// A quadratic refinement `q : (Z/2)^dim → Z/4` of a symmetric form `λ`,
/// so `q(x + y) = q(x) + q(y) + 2λ(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z4QuadForm {
    rows: Vec<u64>,
    q: Vec<Z4>,
}

impl Z4QuadForm {
    /// `q` on basis vectors must have the parity of the self-pairing.
    pub fn new(bilinear: &[Vec<bool>], q: &[Z4]) -> Result<Self> {
        let rows = pack_symmetric(bilinear)?;
        if q.len() != rows.len() {
            return Err(GmError::DimMismatch { expected: rows.len(), found: q.len() });
        }
        if let Some(i) = (0..q.len()).find(|&i| (q[i].value() % 2 == 1) != (rows[i] >> i & 1 == 1)) {
            return Err(GmError::InconsistentValue(i));
        }
        Ok(Self { rows, q: q.to_vec() })
    }

    /// The diagonal model: `λ` is the identity, as for a connected sum of
    /// projective planes, so every basis value is odd.
    pub fn standard(q: &[Z4]) -> Result<Self> {
        let n = q.len();
        let identity: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Self::new(&identity, q)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn q_basis(&self) -> &[Z4] {
        &self.q
    }

    pub fn bilinear(&self) -> Vec<Vec<bool>> {
        unpack(&self.rows)
    }

    pub fn pair(&self, x: u64, y: u64) -> bool {
        self.rows.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(false, |acc, (_, &r)| acc ^ parity(r & y))
    }

    /// `q` on the vector with bit mask `x`.
    pub fn value(&self, x: u64) -> Z4 {
        let mut out = Z4::new(0);
        for (i, (&r, &qi)) in self.rows.iter().zip(&self.q).enumerate() {
            if x >> i & 1 == 1 {
                out = out + qi;
                // Cross terms λ(eᵢ, eⱼ) for j > i, each counted twice.
                let later = x & r & !((2u64 << i) - 1);
                out = out + Z4::new(2 * i64::from(later.count_ones()));
            }
        }
        out
    }

    pub fn evaluate(&self, v: &[bool]) -> Result<Z4> {
        if v.len() != self.dim() {
            return Err(GmError::DimMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(self.value(to_mask(v)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.rows) == self.dim()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { rows: block_sum(&self.rows, &other.rows), q: self.q.iter().chain(&other.q).copied().collect() }
    }

    /// `Σ_x i^{q(x)}` over all `2^dim` vectors, walked in Gray-code order.
    pub fn gauss_sum(&self) -> Result<GaussSum> {
        let dim = self.dim();
        if dim > MAX_ENUMERATION_DIM {
            return Err(GmError::TooLarge(dim));
        }
        let mut counts = [0i64; 4];
        let (mut x, mut qx) = (0u64, Z4::new(0));
        counts[0] += 1;
        for step in 1u64..1 << dim {
            let i = step.trailing_zeros() as usize;
            // q(x + eᵢ) = q(x) + q(eᵢ) + 2λ(x, eᵢ).
            qx = qx + self.q[i] + Z4::new(if parity(self.rows[i] & x) { 2 } else { 0 });
            x ^= 1 << i;
            counts[qx.value() as usize] += 1;
        }
        Ok(GaussSum { re: counts[0] - counts[2], im: counts[1] - counts[3] })
    }

    /// The Brown invariant `β` with `Σ i^{q(x)} = √2^dim · ζ₈^β`.
    pub fn brown_kervaire(&self) -> Result<Z8> {
        if !self.is_nondegenerate() {
            return Err(GmError::DegenerateForm);
        }
        let g = self.gauss_sum()?;
        g.phase(self.dim()).ok_or(GmError::GaussSumAnomaly { re: g.re, im: g.im })
    }
}

/// A quadratic refinement `q : (Z/2)^dim → Z/2` of an alternating form,
/// so `q(x + y) = q(x) + q(y) + λ(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z2QuadForm {
    rows: Vec<u64>,
    q: Vec<bool>,
}

impl Z2QuadForm {
    pub fn new(bilinear: &[Vec<bool>], q: &[bool]) -> Result<Self> {
        let rows = pack_symmetric(bilinear)?;
        if q.len() != rows.len() {
            return Err(GmError::DimMismatch { expected: rows.len(), found: q.len() });
        }
        if rows.iter().enumerate().any(|(i, &r)| r >> i & 1 == 1) {
            return Err(GmError::NotAlternating);
        }
        Ok(Self { rows, q: q.to_vec() })
    }

    /// The hyperbolic plane with the given values on its two basis vectors.
    pub fn hyperbolic(q1: bool, q2: bool) -> Self {
        Self { rows: vec![0b10, 0b01], q: vec![q1, q2] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn value(&self, x: u64) -> bool {
        let mut out = false;
        for (i, (&r, &qi)) in self.rows.iter().zip(&self.q).enumerate() {
            if x >> i & 1 == 1 {
                let later = x & r & !((2u64 << i) - 1);
                out ^= qi ^ parity(later);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { rows: block_sum(&self.rows, &other.rows), q: self.q.iter().chain(&other.q).copied().collect() }
    }

    /// The value `q` takes on the majority of vectors.
    pub fn arf(&self) -> Result<bool> {
        let dim = self.dim();
        if rank(&self.rows) != dim {
            return Err(GmError::DegenerateForm);
        }
        if dim > MAX_ENUMERATION_DIM {
            return Err(GmError::TooLarge(dim));
        }
        let ones = (0u64..1 << dim).filter(|&x| self.value(x)).count();
        Ok(2 * ones > 1 << dim)
    }
}

/// An isometry `a → b`, given by the images of the basis vectors of `a`.
///
/// Preserving `q` on the basis and `λ` on pairs of basis vectors preserves
/// `q` everywhere, so the search only checks those.
pub fn find_isometry(a: &Z4QuadForm, b: &Z4QuadForm) -> Result<Option<Vec<u64>>> {
    let dim = a.dim();
    if b.dim() != dim {
        return Err(GmError::DimMismatch { expected: dim, found: b.dim() });
    }
    if dim > MAX_ISOMETRY_DIM {
        return Err(GmError::TooLarge(dim));
    }
    let candidates: Vec<Vec<u64>> =
        (0..dim).map(|i| (1u64..1 << dim).filter(|&y| b.value(y) == a.q[i]).collect()).collect();
    let mut images = Vec::with_capacity(dim);
    Ok(extend(a, b, &candidates, &mut images).then_some(images))
}

fn extend(a: &Z4QuadForm, b: &Z4QuadForm, candidates: &[Vec<u64>], images: &mut Vec<u64>) -> bool {
    let i = images.len();
    if i == a.dim() {
        return true;
    }
    for &y in &candidates[i] {
        let pairs_ok = images.iter().enumerate().all(|(j, &z)| b.pair(y, z) == (a.rows[i] >> j & 1 == 1));
        if pairs_ok {
            images.push(y);
            if rank(images) == images.len() && extend(a, b, candidates, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}
