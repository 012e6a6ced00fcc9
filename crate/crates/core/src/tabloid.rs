//! Tabloids: row assignments encoding left cosets of a Young subgroup.
//!
//! A λ-tabloid assigns each point of `{1, …, l}` to a row, with row sizes λ.
//! The tabloid of a permutation `g` puts point `p` in the row that `g(p)`
//! occupies in the identity filling, so tabloids are constant on the left
//! cosets `g·Σ_λ` and the left action of `Σ_l` is `(h·t)(p) = t(h(p))`.

use crate::error::{Error, Result};
use crate::perm::{Composition, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tabloid {
    row_of: Vec<u32>,
}

impl Tabloid {
    /// The identity filling: the first λ₁ points in row 0, the next λ₂ in
    /// row 1, and so on.
    pub fn identity(lambda: &Composition) -> Self {
        let mut row_of = Vec::with_capacity(lambda.sum());
        for (row, block) in lambda.blocks().into_iter().enumerate() {
            row_of.extend(std::iter::repeat_n(row as u32, block.len()));
        }
        Tabloid { row_of }
    }

    pub fn row_of(&self) -> &[u32] {
        &self.row_of
    }

    pub fn from_rows(row_of: Vec<u32>, lambda: &Composition) -> Result<Self> {
        let mut counts = vec![0usize; lambda.parts().len()];
        if row_of.len() != lambda.sum() {
            return Err(Error::Invalid("tabloid length does not match λ".into()));
        }
        for &r in &row_of {
            if r as usize >= counts.len() {
                return Err(Error::Invalid("tabloid row index out of range".into()));
            }
            counts[r as usize] += 1;
        }
        if counts != lambda.parts() {
            return Err(Error::Invalid("tabloid row sizes do not match λ".into()));
        }
        Ok(Tabloid { row_of })
    }

    /// Left action: `(h·t)(p) = t(h(p))`.
    pub fn act(&self, h: &Permutation) -> Self {
        Tabloid {
            row_of: (0..self.row_of.len())
                .map(|p| self.row_of[h.apply(p)])
                .collect(),
        }
    }

    /// Is this tabloid fixed by the permutation?
    pub fn is_fixed_by(&self, h: &Permutation) -> bool {
        (0..self.row_of.len()).all(|p| self.row_of[h.apply(p)] == self.row_of[p])
    }

    /// The pinned witness: the permutation mapping the identity tabloid to
    /// this one, rows filled in increasing order.
    pub fn witness(&self, lambda: &Composition) -> Permutation {
        let blocks = lambda.blocks();
        let mut next: Vec<usize> = blocks.iter().map(|b| b.start).collect();
        let mut images = vec![0usize; self.row_of.len()];
        for (p, &row) in self.row_of.iter().enumerate() {
            images[p] = next[row as usize];
            next[row as usize] += 1;
        }
        Permutation::from_images(images).expect("witness is a bijection")
    }
}

/// Multinomial coefficient l! / ∏ λᵢ!, saturating.
pub fn coset_count(lambda: &Composition) -> u128 {
    let mut acc = 1u128;
    let mut placed = 0usize;
    for &part in lambda.parts() {
        for k in 1..=part {
            acc = acc.saturating_mul((placed + k) as u128) / k as u128;
        }
        placed += part;
    }
    acc
}

/// All λ-tabloids in lexicographic order of their row vectors; one per left
/// coset of Σ_λ.
pub fn cosets(lambda: &Composition, cap: u64) -> Result<Vec<Tabloid>> {
    let count = coset_count(lambda);
    if count > cap as u128 {
        return Err(Error::SizeLimit {
            what: "tabloid coset space",
            needed: count,
            cap: cap as u128,
        });
    }
    let l = lambda.sum();
    let mut remaining: Vec<usize> = lambda.parts().to_vec();
    let mut current = Vec::with_capacity(l);
    let mut out = Vec::with_capacity(count as usize);
    fn rec(
        l: usize,
        remaining: &mut Vec<usize>,
        current: &mut Vec<u32>,
        out: &mut Vec<Tabloid>,
    ) {
        if current.len() == l {
            out.push(Tabloid { row_of: current.clone() });
            return;
        }
        for row in 0..remaining.len() {
            if remaining[row] > 0 {
                remaining[row] -= 1;
                current.push(row as u32);
                rec(l, remaining, current, out);
                current.pop();
                remaining[row] += 1;
            }
        }
    }
    rec(l, &mut remaining, &mut current, &mut out);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_counts() {
        assert_eq!(cosets(&Composition::parse("5").unwrap(), 100).unwrap().len(), 1);
        assert_eq!(
            cosets(&Composition::parse("7,2").unwrap(), 100).unwrap().len(),
            36
        );
        assert_eq!(
            cosets(&Composition::parse("1,1,1,1").unwrap(), 100).unwrap().len(),
            24
        );
        // the empty composition has exactly one (empty) tabloid
        assert_eq!(cosets(&Composition::empty(), 100).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(cosets(&Composition::parse("7,2").unwrap(), 10).is_err());
    }

    #[test]
    fn tabloids_are_coset_invariants() {
        // t_g = t_{g·θ} for θ in Σ_λ, and distinct cosets give distinct
        // tabloids.
        use crate::perm::{all_permutations, young_subgroup_elements};
        let lambda = Composition::parse("2,2").unwrap();
        let subgroup = young_subgroup_elements(&lambda, 100).unwrap();
        let id = Tabloid::identity(&lambda);
        let mut by_tabloid: std::collections::BTreeMap<Tabloid, Vec<Permutation>> =
            Default::default();
        for g in all_permutations(4, 100).unwrap() {
            // tabloid of g: apply g to the identity tabloid
            by_tabloid.entry(id.act(&g)).or_default().push(g);
        }
        assert_eq!(by_tabloid.len(), 6);
        for members in by_tabloid.values() {
            assert_eq!(members.len(), subgroup.len());
        }
    }

    #[test]
    fn witness_maps_identity_to_target() {
        let lambda = Composition::parse("3,2").unwrap();
        for t in cosets(&lambda, 100).unwrap() {
            let w = t.witness(&lambda);
            assert_eq!(Tabloid::identity(&lambda).act(&w), t);
        }
    }
}
