use std::fmt;

use num_integer::Integer;

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `d₁ | d₂ | … | d_k` and every `dᵢ > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FinAbGroup {
    /// Accepts any cyclic orders and brings them into invariant-factor form.
    /// Orders 0 count as free summands and orders 1 are dropped.
    pub fn new(free_rank: usize, cyclic: &[u64]) -> Self {
        let zeros = cyclic.iter().filter(|&&d| d == 0).count();
        let mut t: Vec<u64> = cyclic.iter().copied().filter(|&d| d > 1).collect();
        // Replacing (a, b) by (gcd, lcm) keeps the group and sorts into a chain.
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let (g, l) = (t[i].gcd(&t[j]), t[i].lcm(&t[j]));
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|&d| d > 1);
        Self { free_rank: free_rank + zeros, torsion: t }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, &[])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let cyclic: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::new(self.free_rank + other.free_rank, &cyclic)
    }
}

impl fmt::Display for FinAbGroup {
    /// Written like `Z/2 + Z/2 + Z^3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A module over `Z[Z₂]` of the form `Z₊^p ⊕ Z₋^m ⊕ Z[Z₂]^k`, where `T`
/// acts on `Z₊` by `+1` and on `Z₋` by `−1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecoratedModule {
    pub plus: usize,
    pub minus: usize,
    pub free: usize,
}

impl DecoratedModule {
    /// The underlying abelian group.
    pub fn underlying(&self) -> FinAbGroup {
        FinAbGroup::free(self.plus + self.minus + 2 * self.free)
    }

    /// Rank of the `T = ±1` eigenspaces over Q, as `(plus, minus)`.
    pub fn eigenranks(&self) -> (usize, usize) {
        (self.plus + self.free, self.minus + self.free)
    }
}

impl fmt::Display for DecoratedModule {
    /// Written like `Z- + Z[Z2]^3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |name: &str, k: usize| match k {
            0 => None,
            1 => Some(name.to_string()),
            k => Some(format!("{name}^{k}")),
        };
        let parts: Vec<String> = [power("Z+", self.plus), power("Z-", self.minus), power("Z[Z2]", self.free)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_form() {
        let g = FinAbGroup::new(1, &[4, 6, 1]);
        assert_eq!(g.torsion(), &[2, 12]);
        assert_eq!(g.to_string(), "Z/2 + Z/12 + Z");
        assert_eq!(FinAbGroup::new(0, &[2, 3]).torsion(), &[6]);
        assert_eq!(FinAbGroup::new(0, &[0, 1]), FinAbGroup::free(1));
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn decorated() {
        let m = DecoratedModule { plus: 0, minus: 1, free: 3 };
        assert_eq!(m.to_string(), "Z- + Z[Z2]^3");
        assert_eq!(m.underlying(), FinAbGroup::free(7));
        assert_eq!(m.eigenranks(), (3, 4));
    }
}
