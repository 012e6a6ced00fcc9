//! Partial diagrams: one row of `r` dots with labelled and unlabelled parts.
//!
//! Labelled parts are the ones that become propagating when the row is
//! completed to a two-row diagram. `V_n` is spanned by the partial diagrams
//! with exactly `n` labelled parts; `V_n^l` is the subspace where the last
//! `r−l+1` dots (that is, dots `l, …, r`) share a part. All size and
//! signature bookkeeping counts those merged dots as a single effective dot,
//! which also covers `l = r` (merging one dot changes nothing).

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::SetPartitionDiagram;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stratify::Algebra;

/// One part of a partial diagram: sorted 0-based dots plus the label flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub dots: Vec<u32>,
    pub labelled: bool,
}

/// A partial diagram in canonical form (parts ordered by minimal dot).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialDiagram {
    r: usize,
    parts: Vec<Part>,
}

impl PartialDiagram {
    pub fn new(r: usize, raw: Vec<(Vec<u32>, bool)>) -> Result<Self> {
        if r == 0 {
            return Err(Error::MalformedPartition("row size r must be positive".into()));
        }
        let mut seen = vec![false; r];
        let mut parts = Vec::with_capacity(raw.len());
        for (mut dots, labelled) in raw {
            if dots.is_empty() {
                return Err(Error::MalformedPartition("empty part".into()));
            }
            dots.sort_unstable();
            for &d in &dots {
                if d as usize >= r {
                    return Err(Error::MalformedPartition(format!(
                        "dot {} outside 1..{r}",
                        d + 1
                    )));
                }
                if seen[d as usize] {
                    return Err(Error::MalformedPartition(format!(
                        "dot {} appears twice",
                        d + 1
                    )));
                }
                seen[d as usize] = true;
            }
            parts.push(Part { dots, labelled });
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!(
                "dot {} is not covered",
                missing + 1
            )));
        }
        parts.sort_unstable_by(|a, b| a.dots[0].cmp(&b.dots[0]));
        Ok(PartialDiagram { r, parts })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Number of labelled parts.
    pub fn labelled_count(&self) -> usize {
        self.parts.iter().filter(|p| p.labelled).count()
    }

    /// The labelled parts in leftmost order.
    pub fn labelled_parts(&self) -> Vec<&Part> {
        self.parts.iter().filter(|p| p.labelled).collect()
    }

    /// Does this diagram lie in `V_n^l`, i.e. do dots `l, …, r` share a part?
    pub fn in_vnl(&self, l: usize) -> bool {
        if l > self.r {
            return false;
        }
        if l == 0 {
            // The compression to layer 0 kills propagation: a single
            // unlabelled part covering everything.
            return self.parts.len() == 1 && !self.parts[0].labelled;
        }
        let tail: Vec<u32> = ((l - 1) as u32..self.r as u32).collect();
        self.parts
            .iter()
            .any(|p| tail.iter().all(|d| p.dots.contains(d)))
    }

    /// Contract dots `l, …, r` to the single effective dot `l`, producing a
    /// partial diagram on `l` dots. Requires membership in `V_n^l` (l ≥ 1).
    pub fn contract(&self, l: usize) -> Result<PartialDiagram> {
        if l == 0 || l > self.r {
            return Err(Error::Invalid(format!("cannot contract to l={l}")));
        }
        if !self.in_vnl(l) {
            return Err(Error::Invalid(format!(
                "partial diagram {self} has dots {l}..{} in different parts",
                self.r
            )));
        }
        let raw = self
            .parts
            .iter()
            .map(|p| {
                let dots: Vec<u32> = p
                    .dots
                    .iter()
                    .copied()
                    .filter(|&d| (d as usize) < l)
                    .collect();
                (dots, p.labelled)
            })
            .filter(|(dots, _)| !dots.is_empty())
            .collect();
        PartialDiagram::new(l, raw)
    }

    /// Undo [`contract`]: expand effective dot `l` back to dots `l, …, r`.
    pub fn expand(&self, r: usize) -> Result<PartialDiagram> {
        let l = self.r;
        if r < l {
            return Err(Error::Invalid(format!("cannot expand to smaller r={r}")));
        }
        let raw = self
            .parts
            .iter()
            .map(|p| {
                let mut dots = p.dots.clone();
                if dots.contains(&((l - 1) as u32)) {
                    dots.extend(l as u32..r as u32);
                }
                (dots, p.labelled)
            })
            .collect();
        PartialDiagram::new(r, raw)
    }
}

/// The invariant separating the orbits of the row action: for each effective
/// part size, how many labelled and unlabelled parts have that size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSignature {
    /// (effective size, labelled flag) → multiplicity, sorted.
    pub entries: Vec<(usize, bool, usize)>,
}

impl ClassSignature {
    pub fn total_size(&self) -> usize {
        self.entries.iter().map(|(s, _, c)| s * c).sum()
    }

    pub fn labelled_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, lab, _)| *lab)
            .map(|(_, _, c)| c)
            .sum()
    }
}

impl fmt::Display for ClassSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (size, labelled, count) in &self.entries {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}{}x{}", if *labelled { "L" } else { "U" }, size, count)?;
        }
        if first {
            write!(f, "-")?;
        }
        Ok(())
    }
}

/// Signature of `v ∈ V_n^l` with the merged dots counted as one.
pub fn signature(v: &PartialDiagram, l: usize) -> Result<ClassSignature> {
    if l == 0 {
        if !v.in_vnl(0) {
            return Err(Error::Invalid("not in V_n^0".into()));
        }
        return Ok(ClassSignature { entries: Vec::new() });
    }
    let contracted = v.contract(l)?;
    let mut counts: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for part in contracted.parts() {
        *counts.entry((part.dots.len(), part.labelled)).or_insert(0) += 1;
    }
    Ok(ClassSignature {
        entries: counts.into_iter().map(|((s, lab), c)| (s, lab, c)).collect(),
    })
}

/// The row action of `π ∈ Σ_l` on `v ∈ V_n^l`: stack the permutation diagram
/// below the row and read off the bottom; a part stays labelled iff it
/// contains a labelled dot. Implemented on the contracted picture.
pub fn act(v: &PartialDiagram, pi: &Permutation) -> Result<PartialDiagram> {
    let l = pi.degree();
    if l == 0 {
        if !v.in_vnl(0) {
            return Err(Error::Invalid("not in V_n^0".into()));
        }
        return Ok(v.clone());
    }
    let contracted = v.contract(l)?;
    let raw = contracted
        .parts()
        .iter()
        .map(|p| {
            let dots = p.dots.iter().map(|&d| pi.apply(d as usize) as u32).collect();
            (dots, p.labelled)
        })
        .collect();
    PartialDiagram::new(l, raw)?.expand(v.r())
}

/// Enumerate the basis of `V_n` on `r` dots. For the Brauer algebra the
/// partial diagrams are the arc type ones: labelled singletons (the free
/// dots) and unlabelled pairs.
pub fn enumerate_vn(algebra: Algebra, r: usize, n: usize, cap: u64) -> Result<Vec<PartialDiagram>> {
    let mut out = Vec::new();
    match algebra {
        Algebra::Partition => {
            for blocks in crate::diagram::enumerate_set_partitions(r) {
                let k = blocks.len();
                if n > k {
                    continue;
                }
                for labelled_set in subsets_of_size(k, n) {
                    let raw = blocks
                        .iter()
                        .enumerate()
                        .map(|(i, b)| (b.clone(), labelled_set.contains(&i)))
                        .collect();
                    out.push(PartialDiagram::new(r, raw)?);
                    if out.len() as u64 > cap {
                        return Err(Error::SizeLimit {
                            what: "partial diagram basis",
                            needed: out.len() as u128,
                            cap: cap as u128,
                        });
                    }
                }
            }
        }
        Algebra::Brauer => {
            if n > r || !(r - n).is_multiple_of(2) {
                return Ok(Vec::new());
            }
            for free in subsets_of_size(r, n) {
                let rest: Vec<u32> = (0..r as u32)
                    .filter(|d| !free.contains(&(*d as usize)))
                    .collect();
                for matching in matchings_of(&rest) {
                    let mut raw: Vec<(Vec<u32>, bool)> =
                        free.iter().map(|&d| (vec![d as u32], true)).collect();
                    raw.extend(matching.into_iter().map(|pair| (pair, false)));
                    out.push(PartialDiagram::new(r, raw)?);
                    if out.len() as u64 > cap {
                        return Err(Error::SizeLimit {
                            what: "partial diagram basis",
                            needed: out.len() as u128,
                            cap: cap as u128,
                        });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Enumerate the basis of `V_n^l`. For the partition algebra this is the
/// `V_n` of the contracted row, expanded back; for the Brauer algebra the
/// tail dots `l+1, …, r` carry the fixed side-by-side arcs and the genuine
/// structure lives on dots `1, …, l`.
pub fn enumerate_vnl(
    algebra: Algebra,
    r: usize,
    n: usize,
    l: usize,
    cap: u64,
) -> Result<Vec<PartialDiagram>> {
    if l > r {
        return Err(Error::Invalid(format!("l={l} exceeds r={r}")));
    }
    if n > l {
        return Ok(Vec::new());
    }
    match algebra {
        Algebra::Partition => {
            if l == 0 {
                return Ok(if n == 0 {
                    vec![PartialDiagram::new(r, vec![((0..r as u32).collect(), false)])?]
                } else {
                    Vec::new()
                });
            }
            let mut out = Vec::new();
            for small in enumerate_vn(Algebra::Partition, l, n, cap)? {
                out.push(small.expand(r)?);
            }
            out.sort_unstable();
            Ok(out)
        }
        Algebra::Brauer => {
            if (r as i64 - l as i64) % 2 != 0 {
                return Err(Error::InvalidLayer(format!(
                    "Brauer layer l={l} has wrong parity for r={r}"
                )));
            }
            if !(l - n).is_multiple_of(2) {
                return Ok(Vec::new());
            }
            let tail: Vec<(Vec<u32>, bool)> = (0..(r - l) / 2)
                .map(|k| (vec![(l + 2 * k) as u32, (l + 2 * k + 1) as u32], false))
                .collect();
            let mut out = Vec::new();
            if l == 0 {
                if n == 0 {
                    out.push(PartialDiagram::new(r, tail)?);
                }
                return Ok(out);
            }
            for head in enumerate_vn(Algebra::Brauer, l, n, cap)? {
                let mut raw: Vec<(Vec<u32>, bool)> = head
                    .parts()
                    .iter()
                    .map(|p| (p.dots.clone(), p.labelled))
                    .collect();
                raw.extend(tail.iter().cloned());
                out.push(PartialDiagram::new(r, raw)?);
            }
            out.sort_unstable();
            Ok(out)
        }
    }
}

/// Membership test for `V_n^l` under the given algebra's conventions.
pub fn in_vnl_for(algebra: Algebra, v: &PartialDiagram, n: usize, l: usize) -> bool {
    if v.labelled_count() != n {
        return false;
    }
    match algebra {
        Algebra::Partition => v.in_vnl(l),
        Algebra::Brauer => {
            let arcs_ok = v.parts().iter().all(|p| {
                (p.labelled && p.dots.len() == 1) || (!p.labelled && p.dots.len() == 2)
            });
            let tail_ok = (0..(v.r().saturating_sub(l)) / 2).all(|k| {
                v.parts().iter().any(|p| {
                    !p.labelled && p.dots == vec![(l + 2 * k) as u32, (l + 2 * k + 1) as u32]
                })
            });
            arcs_ok && tail_ok && (v.r() - l).is_multiple_of(2)
        }
    }
}

/// The completion `d_v`: the unique diagram with top row `top(e_n)`, bottom
/// row `v`, labelled parts propagating, and identity propagating permutation
/// (leftmost top part to leftmost labelled part, and so on).
pub fn build_dv(algebra: Algebra, v: &PartialDiagram, n: usize, l: usize) -> Result<SetPartitionDiagram> {
    if !in_vnl_for(algebra, v, n, l) {
        return Err(Error::Invalid(format!(
            "partial diagram {v} is not in V_{n}^{l}"
        )));
    }
    let r = v.r();
    let top = top_of_en(algebra, r, n)?;
    let labelled: Vec<&Part> = v.labelled_parts();
    // The first n top parts (leftmost order) are the propagating ones; the
    // rest (the n = 0 partition block, Brauer arcs) stay in the top row.
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for (i, top_part) in top.iter().enumerate() {
        let mut block = top_part.clone();
        if i < n {
            block.extend(labelled[i].dots.iter().map(|&d| d + r as u32));
        }
        raw.push(block);
    }
    for part in v.parts().iter().filter(|p| !p.labelled) {
        raw.push(part.dots.iter().map(|&d| d + r as u32).collect());
    }
    SetPartitionDiagram::from_codes(r, raw)
}

/// Top-row structure of the layer idempotent `e_n`, as sorted parts in
/// leftmost order. Partition algebra: singletons `1, …, n−1` and the block
/// `{n, …, r}` (for n = 0 the whole row is one non-propagating block).
/// Brauer algebra: free dots `1, …, n` and side-by-side arcs.
pub fn top_of_en(algebra: Algebra, r: usize, n: usize) -> Result<Vec<Vec<u32>>> {
    if n > r {
        return Err(Error::InvalidLayer(format!("layer n={n} exceeds r={r}")));
    }
    match algebra {
        Algebra::Partition => {
            if n == 0 {
                // top(e_0) is one block but it does not propagate; callers
                // treating these as propagating parts must use n ≥ 1.
                return Ok(vec![(0..r as u32).collect()]);
            }
            let mut parts: Vec<Vec<u32>> = (0..n as u32 - 1).map(|i| vec![i]).collect();
            parts.push((n as u32 - 1..r as u32).collect());
            Ok(parts)
        }
        Algebra::Brauer => {
            if !(r - n).is_multiple_of(2) {
                return Err(Error::InvalidLayer(format!(
                    "Brauer layer n={n} has wrong parity for r={r}"
                )));
            }
            let mut parts: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
            parts.extend((0..(r - n) / 2).map(|k| vec![(n + 2 * k) as u32, (n + 2 * k + 1) as u32]));
            Ok(parts)
        }
    }
}

/// The propagating permutation Π(d): the j-th propagating part of the top
/// row (ordered by leftmost dot) is connected to the Π(j)-th propagating
/// part of the bottom row (same ordering). For permutation diagrams this
/// recovers the permutation itself.
pub fn pi_of(d: &SetPartitionDiagram) -> Permutation {
    let r = d.r();
    let mut top_parts: Vec<(u32, usize)> = Vec::new(); // (leftmost top dot, block idx)
    let mut bottom_parts: Vec<(u32, usize)> = Vec::new();
    for (idx, block) in d.blocks().iter().enumerate() {
        let has_top = (block[0] as usize) < r;
        let has_bottom = (*block.last().unwrap() as usize) >= r;
        if has_top && has_bottom {
            top_parts.push((block[0], idx));
            let leftmost_bottom = *block.iter().find(|&&c| c as usize >= r).unwrap();
            bottom_parts.push((leftmost_bottom, idx));
        }
    }
    top_parts.sort_unstable();
    bottom_parts.sort_unstable();
    let mut bottom_ordinal = std::collections::HashMap::new();
    for (ordinal, (_, idx)) in bottom_parts.iter().enumerate() {
        bottom_ordinal.insert(*idx, ordinal);
    }
    let images = top_parts
        .iter()
        .map(|(_, idx)| bottom_ordinal[idx])
        .collect();
    Permutation::from_images(images).expect("propagating parts biject")
}

/// The partial diagram carried by the top row of `d`, with a part labelled
/// iff its block propagates.
pub fn top_partial(d: &SetPartitionDiagram) -> PartialDiagram {
    let raw = d
        .top_structure()
        .into_iter()
        .collect();
    PartialDiagram::new(d.r(), raw).expect("top structure is a partition of the row")
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

fn matchings_of(dots: &[u32]) -> Vec<Vec<Vec<u32>>> {
    if !dots.len().is_multiple_of(2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(dots: &[u32], used: &mut Vec<bool>, current: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let first = match used.iter().position(|u| !u) {
            None => {
                out.push(current.clone());
                return;
            }
            Some(f) => f,
        };
        used[first] = true;
        for second in first + 1..dots.len() {
            if !used[second] {
                used[second] = true;
                current.push(vec![dots[first], dots[second]]);
                rec(dots, used, current, out);
                current.pop();
                used[second] = false;
            }
        }
        used[first] = false;
    }
    rec(dots, &mut vec![false; dots.len()], &mut Vec::new(), &mut out);
    out
}

// --- text grammar ----------------------------------------------------------

impl fmt::Display for PartialDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            write!(f, "{}{{", if part.labelled { "L" } else { "U" })?;
            for (i, &d) in part.dots.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", d + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Parse `L{1}L{2}U{3,4}`-style partial diagrams for row size `r`.
pub fn parse_partial(r: usize, s: &str) -> Result<PartialDiagram> {
    let mut raw = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let labelled = match rest.chars().next() {
            Some('L') => true,
            Some('U') => false,
            other => return Err(Error::Parse(format!("expected `L` or `U`, found {other:?}"))),
        };
        rest = &rest[1..];
        let close = rest
            .find('}')
            .ok_or_else(|| Error::Parse("unterminated part".into()))?;
        if !rest.starts_with('{') {
            return Err(Error::Parse("expected `{` after part flag".into()));
        }
        let body = &rest[1..close];
        let dots = body
            .split(',')
            .map(|t| {
                let v: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dot `{t}`")))?;
                if v == 0 || v > r {
                    return Err(Error::Parse(format!("dot {v} outside 1..{r}")));
                }
                Ok((v - 1) as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        raw.push((dots, labelled));
        rest = &rest[close + 1..];
    }
    PartialDiagram::new(r, raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::perm::all_permutations;

    fn pd(r: usize, s: &str) -> PartialDiagram {
        parse_partial(r, s).unwrap()
    }

    #[test]
    fn vn_counts_by_hand() {
        let cap = 10_000;
        assert_eq!(enumerate_vn(Algebra::Partition, 1, 0, cap).unwrap().len(), 1);
        assert_eq!(enumerate_vn(Algebra::Partition, 1, 1, cap).unwrap().len(), 1);
        // r=2: {12}L; {1}L{2}U; {1}U{2}L — fixed by exhaustive enumeration.
        assert_eq!(enumerate_vn(Algebra::Partition, 2, 1, cap).unwrap().len(), 3);
        assert_eq!(enumerate_vn(Algebra::Partition, 2, 2, cap).unwrap().len(), 1);
    }

    #[test]
    fn membership_example_on_seven_dots() {
        let v = pd(7, "U{1,3,4}L{2}L{5,6}U{7}");
        let all = enumerate_vn(Algebra::Partition, 7, 2, 1_000_000).unwrap();
        assert!(all.contains(&v));
        let labelled = v.labelled_parts();
        assert_eq!(labelled[0].dots, vec![1]);
        assert_eq!(labelled[1].dots, vec![4, 5]);
    }

    #[test]
    fn inflation_grading_sums_to_bell() {
        use crate::diagram::bell_number;
        use crate::perm::factorial;
        for r in 1..=3 {
            let total: u128 = (0..=r)
                .map(|n| {
                    let v = enumerate_vn(Algebra::Partition, r, n, 100_000).unwrap().len() as u128;
                    factorial(n) * v * v
                })
                .sum();
            assert_eq!(total, bell_number(2 * r));
        }
    }

    #[test]
    fn brauer_grading_sums_to_double_factorial() {
        use crate::diagram::double_factorial_odd;
        use crate::perm::factorial;
        for r in 1..=4 {
            let total: u128 = (r % 2..=r)
                .step_by(2)
                .map(|l| {
                    let v = enumerate_vn(Algebra::Brauer, r, l, 100_000).unwrap().len() as u128;
                    factorial(l) * v * v
                })
                .sum();
            assert_eq!(total, double_factorial_odd(r));
        }
    }

    #[test]
    fn vnl_respects_the_merged_tail() {
        // r=4, l=2: effective dots {1, [2,3,4]}.
        let vs = enumerate_vnl(Algebra::Partition, 4, 1, 2, 1000).unwrap();
        assert_eq!(vs.len(), 3);
        assert!(vs.contains(&pd(4, "L{1,2,3,4}")));
        assert!(vs.contains(&pd(4, "L{1}U{2,3,4}")));
        assert!(vs.contains(&pd(4, "U{1}L{2,3,4}")));
        // l = r puts no constraint at all
        assert_eq!(
            enumerate_vnl(Algebra::Partition, 2, 1, 2, 1000).unwrap(),
            enumerate_vn(Algebra::Partition, 2, 1, 1000).unwrap()
        );
    }

    #[test]
    fn signature_of_flagship_example() {
        let v = pd(9, "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}");
        let sig = signature(&v, 9).unwrap();
        assert_eq!(sig.entries, vec![(1, true, 3), (2, false, 1), (2, true, 2)]);
        assert_eq!(sig.total_size(), 9);
        assert_eq!(sig.labelled_count(), 5);
    }

    #[test]
    fn signature_is_permutation_invariant() {
        let v = pd(5, "L{1,4}U{2}L{3,5}");
        let sig = signature(&v, 5).unwrap();
        for p in all_permutations(5, 1000).unwrap() {
            let w = act(&v, &p).unwrap();
            assert_eq!(signature(&w, 5).unwrap(), sig);
        }
    }

    #[test]
    fn act_is_a_right_action() {
        let v = pd(4, "L{1,2}U{3}L{4}");
        for p in all_permutations(4, 1000).unwrap() {
            assert_eq!(act(&v, &Permutation::identity(4)).unwrap(), v);
            for q in all_permutations(4, 1000).unwrap() {
                let lhs = act(&act(&v, &p).unwrap(), &q).unwrap();
                let rhs = act(&v, &p.mul(&q)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn act_preserves_label_count_and_vnl() {
        let vs = enumerate_vnl(Algebra::Partition, 5, 2, 3, 10_000).unwrap();
        for v in &vs {
            for p in all_permutations(3, 1000).unwrap() {
                let w = act(v, &p).unwrap();
                assert_eq!(w.labelled_count(), 2);
                assert!(w.in_vnl(3));
            }
        }
    }

    #[test]
    fn nine_dot_row_action() {
        // v acted by (7 8): {6,7} becomes {6,8} and {8,9} becomes {7,9}.
        let v = pd(9, "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}");
        let p = Permutation::parse_cycles(9, "(7 8)").unwrap();
        let w = act(&v, &p).unwrap();
        assert_eq!(w, pd(9, "L{1}L{2}L{3}L{4,5}L{6,8}U{7,9}"));
    }

    #[test]
    fn orbits_match_signature_classes() {
        // Exhaustive at l ≤ 5 (with r = l): v ∼ w (same signature) iff some
        // π moves v to w. The orbit side is brute force over Σ_l.
        for l in 1..=5usize {
            let perms = all_permutations(l, 1000).unwrap();
            for n in 0..=l {
                let vs = enumerate_vnl(Algebra::Partition, l, n, l, 100_000).unwrap();
                let sigs: Vec<_> = vs.iter().map(|v| signature(v, l).unwrap()).collect();
                for (v, sig) in vs.iter().zip(&sigs) {
                    let orbit: std::collections::BTreeSet<PartialDiagram> =
                        perms.iter().map(|p| act(v, p).unwrap()).collect();
                    for (w, wsig) in vs.iter().zip(&sigs) {
                        assert_eq!(orbit.contains(w), wsig == sig);
                    }
                }
            }
        }
    }

    #[test]
    fn dv_has_identity_propagating_permutation() {
        for (n, l) in [(0usize, 2usize), (1, 2), (2, 3), (3, 5), (2, 5)] {
            for v in enumerate_vnl(Algebra::Partition, 5, n, l, 10_000).unwrap() {
                let d = build_dv(Algebra::Partition, &v, n, l).unwrap();
                assert_eq!(d.propagating_number(), n);
                assert!(pi_of(&d).is_identity());
            }
        }
    }

    #[test]
    fn dv_at_top_layer_is_identity_diagram() {
        let v = pd(3, "L{1}L{2}L{3}");
        let d = build_dv(Algebra::Partition, &v, 3, 3).unwrap();
        assert_eq!(d, SetPartitionDiagram::identity(3));
    }

    #[test]
    fn pi_of_permutation_diagram_is_the_permutation() {
        use crate::diagram::perm_to_diagram;
        for p in all_permutations(4, 1000).unwrap() {
            assert_eq!(pi_of(&perm_to_diagram(&p)), p);
        }
    }

    #[test]
    fn pi_of_skips_non_propagating_parts() {
        // top {1}{2}, bottom has a non-propagating singleton in between
        let d = parse_diagram(3, "{1,3'}{2,1'}{3}{2'}").unwrap();
        // propagating bottom parts by leftmost dot: {1'} (#1), {3'} (#2)
        // top parts: {1} (#1) -> {3'} = #2; {2} (#2) -> {1'} = #1
        assert_eq!(pi_of(&d), Permutation::parse_cycles(2, "(1 2)").unwrap());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let v = pd(9, "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}");
        assert_eq!(v.to_string(), "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}");
        assert_eq!(pd(3, "U{3}L{1,2}").to_string(), "L{1,2}U{3}");
        assert!(parse_partial(3, "L{1}L{1,2}U{3}").is_err());
        assert!(parse_partial(3, "L{1}").is_err());
    }
}
