//! The labelled-set-partition stabilizer inside Σ_l, the epimorphism onto
//! the group permuting the labelled parts, and double-coset enumeration.
//!
//! Conventions (pinned by the worked nine-dot example and its table):
//! permutations compose left-to-right, a double coset is the set
//! `H·π·Σ_λ` in that product, and the subgroup attached to a representative
//! π is `H ∩ π·Σ_λ·π⁻¹` — equivalently the stabilizer in H of the coset
//! tabloid of π. Membership in H is always decided structurally, by acting
//! on the labelled row, never by enumerating H.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::diagram::{multiply_diagrams, perm_to_diagram};
use crate::error::{Error, Result};
use crate::partial::{act, build_dv, pi_of, signature, PartialDiagram, Part};
use crate::perm::{factorial, young_subgroup_elements, Composition, Permutation};
use crate::stratify::Algebra;
use crate::tabloid::{coset_count, cosets, Tabloid};

/// The stabilizer in Σ_l of the labelled row `v`, presented by generators:
/// adjacent transpositions inside every part and swap involutions between
/// consecutive parts of equal effective size and equal flag.
#[derive(Debug, Clone)]
pub struct StabilizerProduct {
    /// The contracted row (l effective dots).
    contracted: PartialDiagram,
    l: usize,
    n: usize,
    generators: Vec<Permutation>,
    order: u128,
}

impl StabilizerProduct {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn contracted(&self) -> &PartialDiagram {
        &self.contracted
    }

    /// Structural membership: ζ stabilizes the labelled row.
    pub fn contains(&self, zeta: &Permutation) -> bool {
        zeta.degree() == self.l
            && act(&self.contracted, zeta)
                .map(|w| w == self.contracted)
                .unwrap_or(false)
    }
}

/// Build the stabilizer of `v ∈ V_n^l`.
pub fn stabilizer_product(v: &PartialDiagram, l: usize) -> Result<StabilizerProduct> {
    if l == 0 {
        if !v.in_vnl(0) {
            return Err(Error::Invalid(format!("{v} is not in V_n^0")));
        }
        return Ok(StabilizerProduct {
            contracted: v.clone(),
            l: 0,
            n: 0,
            generators: Vec::new(),
            order: 1,
        });
    }
    let contracted = v.contract(l)?;
    let parts: Vec<Part> = contracted.parts().to_vec();
    let n = contracted.labelled_count();

    let mut generators = Vec::new();
    for part in &parts {
        for w in part.dots.windows(2) {
            generators.push(Permutation::transposition(l, w[0] as usize, w[1] as usize));
        }
    }
    // Link consecutive members of each (size, flag) class by a block swap.
    let mut by_class: BTreeMap<(usize, bool), Vec<&Part>> = BTreeMap::new();
    for part in &parts {
        by_class
            .entry((part.dots.len(), part.labelled))
            .or_default()
            .push(part);
    }
    let mut order: u128 = 1;
    for ((size, _), members) in &by_class {
        order = order
            .checked_mul(num::pow::pow(factorial(*size), members.len()))
            .and_then(|o| o.checked_mul(factorial(members.len())))
            .ok_or(Error::SizeLimit {
                what: "stabilizer order",
                needed: u128::MAX,
                cap: u128::MAX,
            })?;
        for pair in members.windows(2) {
            let mut swap = Permutation::identity(l);
            for (a, b) in pair[0].dots.iter().zip(pair[1].dots.iter()) {
                swap = swap.mul(&Permutation::transposition(l, *a as usize, *b as usize));
            }
            generators.push(swap);
        }
    }
    Ok(StabilizerProduct { contracted, l, n, generators, order })
}

/// The image of a stabilizer element under the epimorphism onto Σ_n: the
/// permutation of the labelled parts in leftmost order, computed as the
/// propagating permutation of `d_v · ζ̂` by diagram multiplication.
pub fn rho(sp: &StabilizerProduct, zeta: &Permutation) -> Result<Permutation> {
    if !sp.contains(zeta) {
        return Err(Error::NotInSubgroup(format!(
            "{zeta} does not stabilize {}",
            sp.contracted
        )));
    }
    if sp.l == 0 {
        return Ok(Permutation::identity(0));
    }
    let dv = build_dv(Algebra::Partition, &sp.contracted, sp.n, sp.l)?;
    let (product, loops) = multiply_diagrams(&dv, &perm_to_diagram(zeta))?;
    if loops != 0 || product.propagating_number() != sp.n {
        return Err(Error::Invalid(
            "stabilizer action dropped out of the layer".into(),
        ));
    }
    Ok(pi_of(&product))
}

/// One H-orbit on the coset tabloids.
#[derive(Debug, Clone)]
pub struct DoubleCoset {
    /// The permutation mapping the identity tabloid to the orbit's
    /// lexicographically least tabloid, rows filled in increasing order.
    pub witness: Permutation,
    pub orbit_size: u64,
    pub least_tabloid: Tabloid,
}

/// Double cosets H\Σ_l/Σ_λ as H-orbits on the λ-tabloids, one pinned
/// witness per orbit, orbits sorted by their least tabloid.
pub fn double_coset_reps(
    sp: &StabilizerProduct,
    lambda: &Composition,
    cap: u64,
) -> Result<Vec<DoubleCoset>> {
    if lambda.sum() != sp.l {
        return Err(Error::Invalid(format!(
            "λ = {lambda} is not a composition of l = {}",
            sp.l
        )));
    }
    let all = cosets(lambda, cap)?;
    let mut unseen: BTreeSet<Tabloid> = all.into_iter().collect();
    let total = unseen.len() as u64;
    let mut out = Vec::new();
    while let Some(start) = unseen.iter().next().cloned() {
        let mut orbit: HashSet<Tabloid> = HashSet::new();
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            if !orbit.insert(t.clone()) {
                continue;
            }
            for g in sp.generators() {
                let next = t.act(g);
                if !orbit.contains(&next) {
                    queue.push(next);
                }
            }
        }
        let least = orbit.iter().min().cloned().expect("orbit is nonempty");
        for t in &orbit {
            unseen.remove(t);
        }
        out.push(DoubleCoset {
            witness: least.witness(lambda),
            orbit_size: orbit.len() as u64,
            least_tabloid: least,
        });
    }
    out.sort_by(|a, b| a.least_tabloid.cmp(&b.least_tabloid));
    debug_assert_eq!(out.iter().map(|c| c.orbit_size).sum::<u64>(), total);
    Ok(out)
}

/// The subgroup attached to a double-coset representative: enumerate Σ_λ,
/// conjugate by π, and keep the elements that stabilize the labelled row.
pub fn intersection_with_conjugate(
    sp: &StabilizerProduct,
    pi: &Permutation,
    lambda: &Composition,
    cap: u64,
) -> Result<Vec<Permutation>> {
    if lambda.sum() != sp.l || pi.degree() != sp.l {
        return Err(Error::Invalid("degree mismatch in conjugate intersection".into()));
    }
    let pi_inv = pi.inv();
    let mut out: Vec<Permutation> = young_subgroup_elements(lambda, cap)?
        .into_iter()
        .map(|theta| pi.mul(&theta).mul(&pi_inv))
        .filter(|zeta| sp.contains(zeta))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Push a subgroup of the stabilizer through ρ, verify the image is the full
/// product of symmetric groups on its orbits, and return the orbit sizes
/// ordered by minimal orbit element.
pub fn image_young(sp: &StabilizerProduct, elements: &[Permutation]) -> Result<Composition> {
    let mut image: BTreeSet<Permutation> = BTreeSet::new();
    for zeta in elements {
        image.insert(rho(sp, zeta)?);
    }
    let n = sp.n;
    if n == 0 {
        return Ok(Composition::empty());
    }
    // Orbits of the image on the labelled-part indices.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &image {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        *sizes.entry(find(&mut parent, i)).or_insert(0) += 1;
    }
    let nu: Vec<usize> = sizes.values().copied().collect();
    let expected: u128 = nu.iter().map(|&s| factorial(s)).product();
    if image.len() as u128 != expected {
        return Err(Error::NotYoung(format!(
            "image has order {} but the orbit sizes {:?} demand {}",
            image.len(),
            nu,
            expected
        )));
    }
    Composition::new(nu)
}

/// Class data of `v ∈ V_n^l`: signature plus the canonically least member.
pub fn class_representatives(
    algebra: Algebra,
    r: usize,
    n: usize,
    l: usize,
    cap: u64,
) -> Result<Vec<(crate::partial::ClassSignature, PartialDiagram, u64)>> {
    let mut classes: BTreeMap<crate::partial::ClassSignature, (PartialDiagram, u64)> =
        BTreeMap::new();
    for v in crate::partial::enumerate_vnl(algebra, r, n, l, cap)? {
        let sig = signature(&v, l)?;
        match classes.entry(sig) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert((v, 1));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let (rep, count) = e.get_mut();
                if v < *rep {
                    *rep = v;
                }
                *count += 1;
            }
        }
    }
    let mut out: Vec<_> = classes
        .into_iter()
        .map(|(sig, (rep, count))| (sig, rep, count))
        .collect();
    // Deterministic order: by representative.
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// The multinomial number of λ-tabloids, re-exported for report bookkeeping.
pub fn tabloid_count(lambda: &Composition) -> u128 {
    coset_count(lambda)
}
