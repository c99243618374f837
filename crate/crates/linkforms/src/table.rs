//! Index arithmetic on `T = ⊕ Z/dᵢ` without allocating coordinate vectors.
//!
//! Elements are numbered in mixed radix, first coordinate fastest. A
//! homomorphism is stored compactly as the indices of the generator images.

use crate::{FinQuadLinkForm, LinkAut};

/// Generator images of a homomorphism `T → T`, as element indices.
pub(crate) type Code = Box<[u32]>;

pub(crate) struct ElementTable {
    factors: Vec<u64>,
    order: usize,
}

impl ElementTable {
    pub(crate) fn new(form: &FinQuadLinkForm) -> Self {
        Self { factors: form.factors().to_vec(), order: form.order() }
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn add(&self, mut x: usize, mut y: usize) -> usize {
        let (mut out, mut stride) = (0, 1);
        for &d in &self.factors {
            let d = d as usize;
            out += ((x % d + y % d) % d) * stride;
            x /= d;
            y /= d;
            stride *= d;
        }
        out
    }

    pub(crate) fn scale(&self, k: u64, mut x: usize) -> usize {
        let (mut out, mut stride) = (0, 1);
        for &d in &self.factors {
            let du = d as usize;
            out += (((x % du) as u64 * (k % d)) % d) as usize * stride;
            x /= du;
            stride *= du;
        }
        out
    }

    /// `f(x)` for the homomorphism with generator images `code`.
    pub(crate) fn apply(&self, code: &[u32], mut x: usize) -> usize {
        let mut out = 0;
        for (&d, &img) in self.factors.iter().zip(code) {
            let c = (x % d as usize) as u64;
            x /= d as usize;
            if c != 0 {
                out = self.add(out, self.scale(c, img as usize));
            }
        }
        out
    }

    /// `f ∘ g`.
    pub(crate) fn compose(&self, f: &[u32], g: &[u32]) -> Code {
        g.iter().map(|&y| self.apply(f, y as usize) as u32).collect()
    }

    pub(crate) fn identity(&self) -> Code {
        let mut stride = 1usize;
        self.factors
            .iter()
            .map(|&d| {
                let s = stride as u32;
                stride *= d as usize;
                s
            })
            .collect()
    }

    pub(crate) fn encode(&self, form: &FinQuadLinkForm, a: &LinkAut) -> Code {
        a.images().iter().map(|x| form.index(x) as u32).collect()
    }

    pub(crate) fn decode(&self, form: &FinQuadLinkForm, code: &[u32]) -> LinkAut {
        LinkAut::from_images(code.iter().map(|&y| form.coords(y as usize)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::{BigRational, RatMatrix};

    #[test]
    fn matches_coordinate_arithmetic() {
        let r = RatMatrix::from_vec(
            2,
            2,
            vec![
                BigRational::new(1.into(), 4.into()),
                BigRational::new(0.into(), 1.into()),
                BigRational::new(0.into(), 1.into()),
                BigRational::new(1.into(), 8.into()),
            ],
        )
        .unwrap();
        let form = FinQuadLinkForm::new(vec![2, 4], &r).unwrap();
        let t = ElementTable::new(&form);
        for x in 0..form.order() {
            for y in 0..form.order() {
                let s = form.add(&form.coords(x), &form.coords(y));
                assert_eq!(t.add(x, y), form.index(&s));
            }
            assert_eq!(t.scale(3, x), form.index(&form.scale(3, &form.coords(x))));
        }
        let f = LinkAut::from_images(vec![vec![1, 2], vec![1, 1]]);
        let code = t.encode(&form, &f);
        for x in 0..form.order() {
            assert_eq!(t.apply(&code, x), form.index(&f.apply(&form, &form.coords(x))));
        }
        assert_eq!(t.decode(&form, &t.compose(&code, &code)), f.compose(&form, &f));
        assert_eq!(t.decode(&form, &t.identity()), LinkAut::identity(&form));
    }
}
