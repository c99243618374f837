use exactmat::{BigInt, IntMatrix};
use num_integer::Integer;

use crate::table::{Code, ElementTable};
use crate::{Exec, FinQuadLinkForm, LinkError, Result, DEFAULT_GROUP_CAP};

/// An isometry of linking forms, recorded by the images of the generators.
///
/// As a matrix, column `j` holds the coordinates of the image of generator
/// `j`; row `i` is read mod `dᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkAut {
    images: Vec<Vec<u64>>,
}

impl LinkAut {
    pub fn from_images(images: Vec<Vec<u64>>) -> Self {
        Self { images }
    }

    pub fn identity(form: &FinQuadLinkForm) -> Self {
        Self { images: (0..form.rank()).map(|i| form.unit(i)).collect() }
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn matrix(&self) -> IntMatrix {
        let k = self.images.len();
        let mut m = IntMatrix::zeros(k, k);
        for (j, img) in self.images.iter().enumerate() {
            for (i, &c) in img.iter().enumerate() {
                m.set(i, j, BigInt::from(c));
            }
        }
        m
    }

    pub fn apply(&self, form: &FinQuadLinkForm, x: &[u64]) -> Vec<u64> {
        let factors = form.factors();
        (0..factors.len())
            .map(|i| {
                let d = factors[i] as u128;
                let s: u128 = x.iter().zip(&self.images).map(|(&c, img)| c as u128 * img[i] as u128).sum();
                (s % d) as u64
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, form: &FinQuadLinkForm, other: &Self) -> Self {
        Self { images: other.images.iter().map(|img| self.apply(form, img)).collect() }
    }

    /// Whether this is a bijection preserving `ν` on every element.
    pub fn preserves(&self, form: &FinQuadLinkForm) -> bool {
        let mut seen = vec![false; form.order()];
        for x in form.elements() {
            let y = self.apply(form, &x);
            if form.nu_num(&y) != form.nu_num(&x) {
                return false;
            }
            let idx = form.index(&y);
            if std::mem::replace(&mut seen[idx], true) {
                return false;
            }
        }
        true
    }
}

/// Controls for isometry enumeration between linking forms.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest `|T|` accepted.
    pub cap: usize,
    /// Prune with `b` on generator pairs and check `ν` on every element at
    /// the end. With this off, only generator orders, `ν` on generators and
    /// bijectivity are imposed.
    pub check_b: bool,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_GROUP_CAP, check_b: true, exec: Exec::default() }
    }
}

/// Precomputed tables for searching maps from `src` generators into `dst`.
struct Search<'a> {
    src: &'a FinQuadLinkForm,
    table: ElementTable,
    den: u64,
    /// `ν` on every element of `dst`, over `den`.
    dst_nu: Vec<u64>,
    /// `ν` on every element of `src`, over `den`.
    src_nu: Vec<u64>,
    /// `b` on pairs of `src` generators, over `den`.
    src_b: Vec<u64>,
    orders: Vec<u64>,
    slots: Vec<Vec<usize>>,
    check_b: bool,
}

impl<'a> Search<'a> {
    fn new(src: &'a FinQuadLinkForm, dst: &'a FinQuadLinkForm, check_b: bool) -> Self {
        let den = src.denominator().lcm(&dst.denominator());
        let dst_nu = dst.nu_table(den);
        let orders: Vec<u64> = dst.elements().map(|x| dst.element_order(&x)).collect();
        let src_scale = den / src.denominator();
        let k = src.rank();
        let src_b = (0..k * k).map(|ij| src.b_num(&src.unit(ij / k), &src.unit(ij % k)) * src_scale % den).collect();
        let slots = (0..k)
            .map(|i| {
                let target = src.nu_num(&src.unit(i)) * src_scale;
                (0..dst.order()).filter(|&y| orders[y] == src.factors()[i] && dst_nu[y] == target).collect()
            })
            .collect();
        let src_nu = if check_b { src.nu_table(den) } else { Vec::new() };
        Self { src, table: ElementTable::new(dst), den, dst_nu, src_nu, src_b, orders, slots, check_b }
    }

    /// `b(x, y)` in `dst` via `b(x, y) = ν(x + y) - ν(x) - ν(y)`.
    fn dst_b(&self, x: usize, y: usize) -> u64 {
        let s = self.dst_nu[self.table.add(x, y)] + 2 * self.den - self.dst_nu[x] - self.dst_nu[y];
        s % self.den
    }

    fn pair_ok(&self, chosen: &[usize], y: usize) -> bool {
        if !self.check_b {
            return true;
        }
        let i = chosen.len();
        let k = self.src.rank();
        chosen.iter().enumerate().all(|(j, &img)| self.src_b[i * k + j] == self.dst_b(y, img))
    }

    /// `ν` is preserved on every element of `src`, not only on generators.
    fn leaf_ok(&self, chosen: &[usize]) -> bool {
        if !self.check_b {
            return true;
        }
        let factors = self.src.factors();
        let mut x = vec![0u64; factors.len()];
        let mut image = 0usize;
        for want in &self.src_nu {
            if self.dst_nu[image] != *want {
                return false;
            }
            // Mixed-radix increment; wrapping coordinate j adds dⱼ·gⱼ = 0.
            for j in 0..factors.len() {
                image = self.table.add(image, chosen[j]);
                x[j] += 1;
                if x[j] < factors[j] {
                    break;
                }
                x[j] = 0;
            }
        }
        true
    }

    /// Depth-first search over generator images keeping them independent.
    /// `member` marks the subgroup spanned so far, listed in `members`.
    fn walk(
        &self,
        chosen: &mut Vec<usize>,
        member: &mut [bool],
        members: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == self.src.rank() {
            return !self.leaf_ok(chosen) || f(chosen);
        }
        self.slots[chosen.len()].iter().all(|&y| self.try_image(y, chosen, member, members, f))
    }

    /// Tries `y` as the image of the next generator and recurses.
    fn try_image(
        &self,
        y: usize,
        chosen: &mut Vec<usize>,
        member: &mut [bool],
        members: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if member[y] || !self.pair_ok(chosen, y) {
            return true;
        }
        // ⟨y⟩ must meet the current span only in zero.
        let ord = self.orders[y];
        let mut multiples = Vec::with_capacity(ord as usize);
        let mut m = y;
        for _ in 1..ord {
            if member[m] {
                return true;
            }
            multiples.push(m);
            m = self.table.add(m, y);
        }
        let base = members.len();
        for s in 0..base {
            for &t in &multiples {
                let z = self.table.add(members[s], t);
                member[z] = true;
                members.push(z);
            }
        }
        chosen.push(y);
        let go_on = self.walk(chosen, member, members, f);
        chosen.pop();
        for &z in &members[base..] {
            member[z] = false;
        }
        members.truncate(base);
        go_on
    }

    fn start(&self) -> (Vec<bool>, Vec<usize>) {
        let mut member = vec![false; self.table.order()];
        member[0] = true;
        (member, vec![0])
    }

    /// Every complete assignment, as codes, in parallel over the first slot.
    fn all_codes(&self, exec: Exec) -> Vec<Code> {
        let mut out = exec.flat_map(&self.slots[0], |&first| {
            let (mut member, mut members) = self.start();
            let mut found = Vec::new();
            self.try_image(first, &mut Vec::new(), &mut member, &mut members, &mut |c| {
                found.push(c.iter().map(|&y| y as u32).collect());
                true
            });
            found
        });
        out.sort();
        out
    }
}

fn check_size(form: &FinQuadLinkForm, cap: usize) -> Result<()> {
    if form.order() > cap {
        return Err(LinkError::GroupTooLarge { order: form.order(), cap });
    }
    Ok(())
}

/// All isometries `src → dst`, sorted.
pub fn isometries(src: &FinQuadLinkForm, dst: &FinQuadLinkForm, opts: SearchOptions) -> Result<Vec<LinkAut>> {
    check_size(src, opts.cap)?;
    check_size(dst, opts.cap)?;
    if src.factors() != dst.factors() {
        return Ok(Vec::new());
    }
    if src.rank() == 0 {
        return Ok(vec![LinkAut::from_images(Vec::new())]);
    }
    let search = Search::new(src, dst, opts.check_b);
    let table = ElementTable::new(dst);
    let mut out: Vec<LinkAut> = search.all_codes(opts.exec).iter().map(|c| table.decode(dst, c)).collect();
    out.sort();
    Ok(out)
}

/// Automorphisms as sorted codes, for callers that keep many of them.
pub(crate) fn automorphism_codes(form: &FinQuadLinkForm, opts: SearchOptions) -> Result<Vec<Code>> {
    check_size(form, opts.cap)?;
    if form.rank() == 0 {
        return Ok(vec![Code::default()]);
    }
    Ok(Search::new(form, form, opts.check_b).all_codes(opts.exec))
}

/// The automorphism group of a linking form, sorted.
pub fn automorphisms(form: &FinQuadLinkForm, opts: SearchOptions) -> Result<Vec<LinkAut>> {
    isometries(form, form, opts)
}

/// Some isometry `src → dst`, if one exists.
pub fn find_isometry(src: &FinQuadLinkForm, dst: &FinQuadLinkForm, cap: usize) -> Result<Option<LinkAut>> {
    check_size(src, cap)?;
    check_size(dst, cap)?;
    if src.factors() != dst.factors() {
        return Ok(None);
    }
    if src.rank() == 0 {
        return Ok(Some(LinkAut::from_images(Vec::new())));
    }
    let search = Search::new(src, dst, true);
    let (mut member, mut members) = search.start();
    let mut found = None;
    search.walk(&mut Vec::new(), &mut member, &mut members, &mut |c| {
        found = Some(LinkAut::from_images(c.iter().map(|&y| dst.coords(y)).collect()));
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::{BigRational, RatMatrix};

    fn cyclic(d: u64, num: i64, den: i64) -> FinQuadLinkForm {
        let m = RatMatrix::from_vec(1, 1, vec![BigRational::new(num.into(), den.into())]).unwrap();
        FinQuadLinkForm::new(vec![d], &m).unwrap()
    }

    fn units(auts: &[LinkAut]) -> Vec<u64> {
        auts.iter().map(|a| a.images()[0][0]).collect()
    }

    #[test]
    fn rank_one_examples() {
        let f = cyclic(8, 1, 16);
        assert_eq!(units(&automorphisms(&f, SearchOptions::default()).unwrap()), vec![1, 7]);
        let f = cyclic(12, 1, 24);
        assert_eq!(units(&automorphisms(&f, SearchOptions::default()).unwrap()), vec![1, 5, 7, 11]);
    }

    #[test]
    fn every_result_is_an_isometry() {
        let f = cyclic(12, 1, 24);
        for a in automorphisms(&f, SearchOptions::default()).unwrap() {
            assert!(a.preserves(&f));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = cyclic(12, 1, 24);
        let opts = SearchOptions { cap: 10, ..SearchOptions::default() };
        assert_eq!(automorphisms(&f, opts), Err(LinkError::GroupTooLarge { order: 12, cap: 10 }));
    }

    #[test]
    fn isometry_between_presentations() {
        // x²/16 and 9x²/16 on Z/8 are isometric via x ↦ 3x.
        let f = cyclic(8, 1, 16);
        let g = cyclic(8, 9, 16);
        let iso = find_isometry(&f, &g, DEFAULT_GROUP_CAP).unwrap().unwrap();
        assert_eq!(g.nu(&iso.apply(&f, &[1])), f.nu(&[1]));
        let h = cyclic(8, 3, 16);
        assert_eq!(find_isometry(&f, &h, DEFAULT_GROUP_CAP).unwrap(), None);
    }

    #[test]
    fn composition_and_matrix_model() {
        let f = cyclic(12, 1, 24);
        let auts = automorphisms(&f, SearchOptions::default()).unwrap();
        let five = &auts[1];
        assert_eq!(five.compose(&f, five), LinkAut::identity(&f));
        assert_eq!(five.matrix(), IntMatrix::from_rows(&[[5]]));
    }
}
