use exactmat::IntMatrix;

use crate::{GrError, GrMatrix, QuadFormGr, Result, Sign};

/// Coefficient ring of a quasi-formation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The integers; all matrices have `T`-coefficient zero.
    Z,
    /// The group ring `Z[Z₂]`.
    Gr,
}

/// A quasi-formation `(H₊(F); F, V)` with `F = Λⁿ`.
///
/// The ambient module is `F ⊕ F*` with the standard hyperbolic form
/// `[[0, I], [0, 0]]`, `F` is spanned by the first `n` coordinates and `V`
/// by the columns of a `2n × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFormation {
    ring: Ring,
    n: usize,
    v: GrMatrix,
}

/// The standard hyperbolic form on `Λ²ⁿ`.
pub(crate) fn hyperbolic_rep(n: usize) -> GrMatrix {
    let mut m = GrMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, crate::GrElt::int(1));
    }
    m
}

impl QuasiFormation {
    /// Validates that `v` is `2n × n` and spans a direct summand.
    pub fn new(ring: Ring, v: GrMatrix) -> Result<Self> {
        let n = v.cols();
        if v.rows() != 2 * n {
            return Err(GrError::RankMismatch { expected: 2 * n, found: v.rows() });
        }
        if ring == Ring::Z && !v.is_integral() {
            return Err(GrError::Dimension("integral quasi-formation with T-coefficients".into()));
        }
        if !v.is_summand()? {
            return Err(GrError::NotASummand);
        }
        Ok(Self { ring, n, v })
    }

    /// `(H₊(F); F, F*)`.
    pub fn trivial(ring: Ring, n: usize) -> Self {
        let v = GrMatrix::zeros(n, n).vstack(&GrMatrix::identity(n)).expect("same width");
        Self { ring, n, v }
    }

    /// `(H₊(F); F, Γ_κ)` where `Γ_κ` is the graph of `κ`, spanned by `[I; κ]`.
    pub fn boundary(ring: Ring, kappa: &GrMatrix) -> Result<Self> {
        if kappa.rows() != kappa.cols() {
            return Err(GrError::Dimension(format!("κ is {}x{}", kappa.rows(), kappa.cols())));
        }
        if ring == Ring::Z && !kappa.is_integral() {
            return Err(GrError::Dimension("integral quasi-formation with T-coefficients".into()));
        }
        let n = kappa.rows();
        Ok(Self { ring, n, v: GrMatrix::identity(n).vstack(kappa)? })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Rank of `F`; the ambient module has rank `2n`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn psi(&self) -> QuadFormGr {
        QuadFormGr::new(hyperbolic_rep(self.n)).expect("square")
    }

    /// The hermitian form `ψ + ψ̄ᵀ`.
    pub fn lambda(&self) -> GrMatrix {
        self.psi().symmetrize()
    }

    pub fn f_basis(&self) -> GrMatrix {
        GrMatrix::identity(self.n).vstack(&GrMatrix::zeros(self.n, self.n)).expect("same width")
    }

    pub fn v_basis(&self) -> &GrMatrix {
        &self.v
    }

    /// Whether the columns of `l` span a lagrangian of `(P, ψ)`.
    ///
    /// A half-rank summand on which `ψ` vanishes is its own annihilator
    /// because `ψ + ψ̄ᵀ` is nonsingular, so those two checks suffice.
    pub fn is_lagrangian(&self, l: &GrMatrix) -> Result<bool> {
        if l.rows() != 2 * self.n {
            return Err(GrError::Dimension(format!("expected {} rows, found {}", 2 * self.n, l.rows())));
        }
        if l.cols() != self.n {
            return Err(GrError::RankMismatch { expected: self.n, found: l.cols() });
        }
        Ok(l.is_summand()? && self.psi().transform(l)?.is_zero())
    }

    /// `F` and `V` are complementary.
    pub fn is_elementary(&self) -> bool {
        self.f_basis().hstack(&self.v).is_ok_and(|m| m.is_invertible())
    }

    /// The restrictions `ψ|_V` and `−ψ|_{V⊥}`.
    pub fn induced_forms(&self) -> Result<(QuadFormGr, QuadFormGr)> {
        let psi = self.psi();
        let on_v = psi.transform(&self.v)?.canonicalized();
        let perp = self.v.conj_transpose().checked_mul(&self.lambda())?.kernel()?;
        let on_perp = psi.transform(&perp)?.neg().canonicalized();
        Ok((on_v, on_perp))
    }

    /// The integral quasi-formation obtained by substituting `T = ±1`.
    pub fn eigen(&self, s: Sign) -> Self {
        Self { ring: Ring::Z, n: self.n, v: GrMatrix::from_int(&self.v.eval(s)) }
    }

    /// `V` evaluated at `T = ±1`, as an integer matrix.
    pub fn v_eval(&self, s: Sign) -> IntMatrix {
        self.v.eval(s)
    }

    /// Orthogonal sum, with coordinates ordered `(F₁, F₂, F₁*, F₂*)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.n, other.n);
        let stacked = self.v.block_diag(&other.v);
        let n = n1 + n2;
        // Rows of the block sum are (F₁, F₁*, F₂, F₂*).
        let order: Vec<usize> =
            (0..n1).chain(2 * n1..2 * n1 + n2).chain(n1..2 * n1).chain(2 * n1 + n2..2 * n).collect();
        let mut v = GrMatrix::zeros(2 * n, n);
        for (dst, &src) in order.iter().enumerate() {
            for j in 0..n {
                v.set(dst, j, stacked.get(src, j));
            }
        }
        let ring = if self.ring == Ring::Gr || other.ring == Ring::Gr { Ring::Gr } else { Ring::Z };
        Self { ring, n, v }
    }
}
