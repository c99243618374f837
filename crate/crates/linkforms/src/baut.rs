use std::collections::{BTreeSet, HashSet};

use zforms::{for_each_automorphism, QuadFormZ};

use crate::aut::automorphism_codes;
use crate::table::{Code, ElementTable};
use crate::{boundary_form, BoundaryForm, Exec, LinkAut, LinkError, Result, SearchOptions, DEFAULT_GROUP_CAP};

#[derive(Clone, Copy, Debug)]
pub struct BautOptions {
    pub cap: usize,
    pub exec: Exec,
}

impl Default for BautOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_GROUP_CAP, exec: Exec::default() }
    }
}

/// The two-sided orbit set `Im(∂) \ Aut(∂θ) / Im(∂)`.
#[derive(Clone, Debug)]
pub struct BautReport {
    pub boundary: BoundaryForm,
    pub aut_theta_order: usize,
    image_order: usize,
    aut_link_order: usize,
    /// Generators of the image of `Aut(θ)`.
    pub image_generators: Vec<LinkAut>,
    pub orbit_count: usize,
    /// The smallest element of each orbit, sorted.
    pub representatives: Vec<LinkAut>,
}

impl BautReport {
    pub fn image_order(&self) -> usize {
        self.image_order
    }

    pub fn aut_link_order(&self) -> usize {
        self.aut_link_order
    }

    /// True iff every automorphism of the boundary is induced.
    pub fn trivial(&self) -> bool {
        self.orbit_count == 1
    }
}

/// The order of `Aut(θ)` and the sorted distinct images `∂h`.
pub fn boundary_image(boundary: &BoundaryForm) -> Result<(usize, Vec<LinkAut>)> {
    let mut image = BTreeSet::new();
    let count = for_each_automorphism(boundary.gram(), |h| {
        image.insert(boundary.boundary_map_unchecked(h));
    })?;
    Ok((count, image.into_iter().collect()))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A subgroup grown one generator at a time. Elements are kept as a union
/// of right cosets of the previous subgroup, so each new element costs one
/// composition.
struct Subgroup<'t> {
    table: &'t ElementTable,
    elements: Vec<Code>,
    members: HashSet<Code>,
    generators: Vec<Code>,
}

impl<'t> Subgroup<'t> {
    fn trivial(table: &'t ElementTable) -> Self {
        let id = table.identity();
        Self { table, elements: vec![id.clone()], members: HashSet::from([id]), generators: Vec::new() }
    }

    fn add_generator(&mut self, g: Code) {
        if self.members.contains(&g) {
            return;
        }
        self.generators.push(g.clone());
        let old = self.elements.len();
        let mut reps = vec![self.table.identity()];
        self.add_coset(old, &g);
        reps.push(g);
        let mut i = 0;
        while i < reps.len() {
            for s in 0..self.generators.len() {
                let rs = self.table.compose(&reps[i], &self.generators[s]);
                if !self.members.contains(&rs) {
                    self.add_coset(old, &rs);
                    reps.push(rs);
                }
            }
            i += 1;
        }
    }

    /// Adds `H·r` where `H` is the first `old` elements.
    fn add_coset(&mut self, old: usize, r: &[u32]) {
        for k in 0..old {
            let e = self.table.compose(&self.elements[k], r);
            self.members.insert(e.clone());
            self.elements.push(e);
        }
    }
}

/// Computes `bAut` for a form whose automorphism group is finite.
pub fn baut(theta: &QuadFormZ, opts: BautOptions) -> Result<BautReport> {
    let boundary = boundary_form(theta)?;
    let form = boundary.form().clone();
    if form.order() > opts.cap {
        return Err(LinkError::GroupTooLarge { order: form.order(), cap: opts.cap });
    }
    let table = ElementTable::new(&form);
    let aut_link = automorphism_codes(&form, SearchOptions { cap: opts.cap, check_b: true, exec: opts.exec })?;
    let mut image = Subgroup::trivial(&table);
    let mut stray = false;
    let aut_theta_order = for_each_automorphism(boundary.gram(), |h| {
        let code = table.encode(&form, &boundary.boundary_map_unchecked(h));
        stray |= aut_link.binary_search(&code).is_err();
        image.add_generator(code);
    })?;
    if stray {
        return Err(LinkError::Internal("boundary of an isometry is not a linking-form automorphism".into()));
    }
    let locate = |c: &Code| {
        aut_link
            .binary_search(c)
            .map_err(|_| LinkError::Internal("automorphisms are not closed under composition".into()))
    };
    let mut uf = UnionFind::new(aut_link.len());
    for (i, g) in aut_link.iter().enumerate() {
        for s in &image.generators {
            uf.union(i, locate(&table.compose(s, g))?);
            uf.union(i, locate(&table.compose(g, s))?);
        }
    }
    let mut seen = BTreeSet::new();
    let mut representatives = Vec::new();
    for (i, g) in aut_link.iter().enumerate() {
        if seen.insert(uf.find(i)) {
            representatives.push(table.decode(&form, g));
        }
    }
    representatives.sort();
    Ok(BautReport {
        aut_theta_order,
        image_order: image.elements.len(),
        aut_link_order: aut_link.len(),
        image_generators: image.generators.iter().map(|c| table.decode(&form, c)).collect(),
        orbit_count: representatives.len(),
        representatives,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::IntMatrix;
    use zforms::hyperbolic;

    fn rank_one(theta: i64) -> QuadFormZ {
        QuadFormZ::new(IntMatrix::from_rows(&[[theta]])).unwrap()
    }

    #[test]
    fn rank_one_four_is_trivial() {
        let r = baut(&rank_one(4), BautOptions::default()).unwrap();
        assert!(r.trivial());
        assert_eq!(r.aut_link_order(), 2);
    }

    #[test]
    fn rank_one_six_has_two_orbits() {
        let r = baut(&rank_one(6), BautOptions::default()).unwrap();
        assert_eq!(r.orbit_count, 2);
        let reps: Vec<u64> = r.representatives.iter().map(|a| a.images()[0][0]).collect();
        assert_eq!(reps, vec![1, 5]);
    }

    #[test]
    fn doubled_hyperbolic_pair_is_surjective() {
        let r = baut(&hyperbolic(1).scale(4), BautOptions::default()).unwrap();
        assert_eq!(r.aut_theta_order, 4);
        assert_eq!(r.aut_link_order(), 4);
        assert_eq!(r.image_order(), 4);
        assert!(r.trivial());
    }
}
