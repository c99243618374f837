use exactmat::{rational_inverse, IntMatrix, RatMatrix};
use num_integer::Roots;

use crate::short_vectors::short_vectors;
use crate::{Exec, FormError, Result, SymFormZ};

/// A candidate basis image together with `A·v`, so inner products with it
/// cost one dot product.
struct Candidate {
    v: Vec<i64>,
    av: Vec<i64>,
}

/// Backtracking state for maps from the standard basis of a lattice with
/// Gram matrix `target` into a positive definite lattice with Gram `source`.
struct Search {
    n: usize,
    target: Vec<i64>,
    slots: Vec<Vec<Candidate>>,
}

impl Search {
    fn new(source: &IntMatrix, target: &IntMatrix) -> Result<Self> {
        let n = source.rows();
        let src = source.to_i64_vec().ok_or(FormError::EntriesTooLarge)?;
        let tgt = target.to_i64_vec().ok_or(FormError::EntriesTooLarge)?;
        let max = (0..n).map(|i| tgt[i * n + i]).max().unwrap_or(0);
        let vectors = short_vectors(source, max)?;
        let slots = (0..n)
            .map(|k| {
                vectors
                    .iter()
                    .filter(|(_, nv)| *nv == tgt[k * n + k])
                    .map(|(v, _)| Candidate { v: v.clone(), av: mul_vec(&src, v) })
                    .collect()
            })
            .collect();
        Ok(Self { n, target: tgt, slots })
    }

    fn fits(&self, chosen: &[&Candidate], k: usize, c: &Candidate) -> bool {
        chosen.iter().enumerate().all(|(j, prev)| dot(&prev.v, &c.av) == self.target[j * self.n + k])
    }

    /// Visits every complete assignment extending `chosen`; the callback
    /// returns false to stop early.
    fn walk<'a>(&'a self, chosen: &mut Vec<&'a Candidate>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        let k = chosen.len();
        if k == self.n {
            let mut m = vec![0i64; self.n * self.n];
            for (col, c) in chosen.iter().enumerate() {
                for row in 0..self.n {
                    m[row * self.n + col] = c.v[row];
                }
            }
            return f(&m);
        }
        for c in &self.slots[k] {
            if self.fits(chosen, k, c) {
                chosen.push(c);
                let go_on = self.walk(chosen, f);
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    fn collect_all(&self, exec: Exec) -> Vec<Vec<i64>> {
        if self.n == 0 {
            return vec![Vec::new()];
        }
        let firsts: Vec<&Candidate> = self.slots[0].iter().collect();
        exec.flat_map(&firsts, |c| {
            let mut out = Vec::new();
            let mut chosen = vec![*c];
            self.walk(&mut chosen, &mut |m| {
                out.push(m.to_vec());
                true
            });
            out
        })
    }
}

fn mul_vec(g: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| g[i * n + j] * v[j]).sum()).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive definite representative, or the special binary indefinite case.
enum Prepared {
    Definite(IntMatrix),
    Listed(Vec<Vec<i64>>),
}

fn prepare(a: &SymFormZ) -> Result<Prepared> {
    let inertia = a.inertia();
    if inertia.zero > 0 {
        return Err(FormError::DegenerateForm);
    }
    if inertia.negative == 0 {
        return Ok(Prepared::Definite(a.gram().clone()));
    }
    if inertia.positive == 0 {
        return Ok(Prepared::Definite(a.neg().gram().clone()));
    }
    binary_isotropic_automorphisms(a).map(Prepared::Listed).ok_or(FormError::IndefiniteForm)
}

/// A binary form with `-det` a nonzero square has exactly two isotropic
/// lines; every isometry permutes their primitive generators up to signs
/// whose product is one, which leaves at most four candidates.
fn binary_isotropic_automorphisms(a: &SymFormZ) -> Option<Vec<Vec<i64>>> {
    if a.rank() != 2 {
        return None;
    }
    let g = a.gram().to_i64_vec()?;
    let (p, b, c) = (g[0], g[1], g[3]);
    let disc = b * b - p * c;
    let s = disc.sqrt();
    if disc <= 0 || s * s != disc {
        return None;
    }
    let primitive = |x: i64, y: i64| {
        let d = num_integer::gcd(x, y);
        [x / d, y / d]
    };
    let (v1, v2) =
        if p == 0 { (primitive(1, 0), primitive(c, -2 * b)) } else { (primitive(-b + s, p), primitive(-b - s, p)) };
    let basis = IntMatrix::from_rows(&[[v1[0], v2[0]], [v1[1], v2[1]]]);
    let basis_inv: RatMatrix = rational_inverse(&basis).ok()?;
    let mut out = Vec::new();
    for swap in [false, true] {
        for eps in [1i64, -1] {
            let (w1, w2) = if swap { (v2, v1) } else { (v1, v2) };
            let images = IntMatrix::from_rows(&[[eps * w1[0], eps * w2[0]], [eps * w1[1], eps * w2[1]]]);
            let m = RatMatrix::from(&images).checked_mul(&basis_inv).ok()?;
            let Some(m) = m.to_integer() else { continue };
            if &a.gram().congruence(&m).ok()? == a.gram() {
                out.push(m.to_i64_vec()?);
            }
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn to_matrix(n: usize, m: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(n, n, m)
}

/// Every integral isometry of a definite form, sorted by entries, as
/// row-major `i64` matrices. Binary forms with two rational isotropic lines
/// are also accepted; other indefinite forms have infinite groups.
pub fn automorphisms_i64(a: &SymFormZ, exec: Exec) -> Result<Vec<Vec<i64>>> {
    let mut all = match prepare(a)? {
        Prepared::Listed(list) => list,
        Prepared::Definite(g) => Search::new(&g, &g)?.collect_all(exec),
    };
    all.sort();
    Ok(all)
}

pub fn aut_group_with(a: &SymFormZ, exec: Exec) -> Result<Vec<IntMatrix>> {
    let n = a.rank();
    Ok(automorphisms_i64(a, exec)?.iter().map(|m| to_matrix(n, m)).collect())
}

/// The automorphism group `{M : MᵀAM = A}` of a definite form.
pub fn aut_group(a: &SymFormZ) -> Result<Vec<IntMatrix>> {
    aut_group_with(a, Exec::default())
}

/// Streams the automorphisms (row-major) without materialising the group.
/// Returns how many were visited.
pub fn for_each_automorphism(a: &SymFormZ, mut f: impl FnMut(&[i64])) -> Result<usize> {
    let mut count = 0;
    match prepare(a)? {
        Prepared::Listed(list) => {
            for m in &list {
                f(m);
                count += 1;
            }
        }
        Prepared::Definite(g) => {
            let search = Search::new(&g, &g)?;
            let mut chosen = Vec::new();
            search.walk(&mut chosen, &mut |m| {
                f(m);
                count += 1;
                true
            });
        }
    }
    Ok(count)
}

/// Some `M` with `MᵀAM = B`, for definite `A` and `B`.
pub fn is_isometric(a: &SymFormZ, b: &SymFormZ) -> Result<Option<IntMatrix>> {
    if !a.is_definite() || !b.is_definite() {
        return Err(FormError::IndefiniteForm);
    }
    if a.rank() != b.rank() || a.det() != b.det() || a.signature()? != b.signature()? {
        return Ok(None);
    }
    let (ga, gb) = if a.is_positive_definite() {
        (a.gram().clone(), b.gram().clone())
    } else {
        (a.neg().gram().clone(), b.neg().gram().clone())
    };
    let n = a.rank();
    let search = Search::new(&ga, &gb)?;
    let mut found = None;
    let mut chosen = Vec::new();
    search.walk(&mut chosen, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    // Equal determinants force the witness to be unimodular.
    Ok(found.map(|m| to_matrix(n, &m)))
}
