//! Permutations of `{1, …, m}`, compositions, and Young subgroups.
//!
//! Composition is left-to-right: `(a * b)(i) = b(a(i))`, matching the way
//! diagrams concatenate (the product of two permutation diagrams is the
//! diagram of the left-to-right product). Internally points are 0-based;
//! cycle notation I/O is 1-based.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Invalid(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// The transposition (i, i+1) on 0-based point `i`.
    pub fn adjacent_transposition(degree: usize, i: usize) -> Self {
        let mut p = Self::identity(degree);
        p.images.swap(i, i + 1);
        p
    }

    /// Transposition of two 0-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        p
    }

    /// A word `[i1, i2, …]` of adjacent transpositions with
    /// `self = s_{i1} * s_{i2} * …` (left-to-right). Obtained by sorting the
    /// one-line form with adjacent swaps.
    pub fn coxeter_word(&self) -> Vec<usize> {
        let mut arr = self.images.clone();
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..arr.len().saturating_sub(1) {
                if arr[i] > arr[i + 1] {
                    arr.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        debug_assert!({
            let mut acc = Permutation::identity(self.degree());
            for &i in &word {
                acc = acc.mul(&Permutation::adjacent_transposition(self.degree(), i));
            }
            acc == *self
        });
        word
    }

    /// Parse 1-based cycle notation like `(1 2 3)(7 9)`; `()` is the
    /// identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut chars = s.chars().peekable();
        if s.is_empty() {
            return Ok(Permutation { images });
        }
        let mut touched = vec![false; degree];
        while chars.peek().is_some() {
            if chars.next() != Some('(') {
                return Err(Error::Parse(format!("expected `(` in `{s}`")));
            }
            let mut cycle: Vec<usize> = Vec::new();
            let mut digits = String::new();
            loop {
                match chars.next() {
                    Some(c) if c.is_ascii_digit() => digits.push(c),
                    Some(' ') | Some(',') => {
                        if !digits.is_empty() {
                            cycle.push(parse_point(&digits, degree)?);
                            digits.clear();
                        }
                    }
                    Some(')') => {
                        if !digits.is_empty() {
                            cycle.push(parse_point(&digits, degree)?);
                        }
                        break;
                    }
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected {other:?} in cycle notation `{s}`"
                        )))
                    }
                }
            }
            for &p in &cycle {
                if touched[p] {
                    return Err(Error::Parse(format!(
                        "point {} repeated in `{s}`",
                        p + 1
                    )));
                }
                touched[p] = true;
            }
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Cycle type as a partition (descending cycle lengths, fixed points
    /// included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 1;
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                len += 1;
                cur = self.apply(cur);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

fn parse_point(digits: &str, degree: usize) -> Result<usize> {
    let v: usize = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad point `{digits}`")))?;
    if v == 0 || v > degree {
        return Err(Error::Parse(format!("point {v} outside 1..{degree}")));
    }
    Ok(v - 1)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An ordered list of positive part sizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("composition parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The derived partition: parts sorted descending.
    pub fn partition(&self) -> Vec<usize> {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// Parse a comma list like `7,2`. An empty string is the composition of 0.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    /// Consecutive 0-based blocks `[offset, offset+part)`.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut off = 0;
        for &p in &self.parts {
            out.push(off..off + p);
            off += p;
        }
        out
    }

    /// Order of the Young subgroup, ∏ partᵢ!.
    pub fn young_order(&self) -> u128 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strings.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Adjacent transpositions within each consecutive block of λ; generates the
/// Young subgroup Σ_λ.
pub fn young_subgroup_generators(lambda: &Composition) -> Vec<Permutation> {
    let degree = lambda.sum();
    let mut gens = Vec::new();
    for block in lambda.blocks() {
        for i in block.start..block.end.saturating_sub(1) {
            gens.push(Permutation::adjacent_transposition(degree, i));
        }
    }
    gens
}

/// Every element of the Young subgroup Σ_λ, in a fixed order. Errors when
/// the group order exceeds `cap`.
pub fn young_subgroup_elements(lambda: &Composition, cap: u64) -> Result<Vec<Permutation>> {
    let order = lambda.young_order();
    if order > cap as u128 {
        return Err(Error::SizeLimit {
            what: "Young subgroup enumeration",
            needed: order,
            cap: cap as u128,
        });
    }
    let degree = lambda.sum();
    let mut elements = vec![Permutation::identity(degree)];
    for block in lambda.blocks() {
        let points: Vec<usize> = block.collect();
        let block_perms = permutations_of(&points);
        let mut next = Vec::with_capacity(elements.len() * block_perms.len());
        for base in &elements {
            for bp in &block_perms {
                let mut images: Vec<usize> = (0..degree).collect();
                for (src, dst) in points.iter().zip(bp.iter()) {
                    images[*src] = *dst;
                }
                next.push(base.mul(&Permutation::from_images(images).unwrap()));
            }
        }
        elements = next;
    }
    debug_assert_eq!(elements.len() as u128, order);
    Ok(elements)
}

/// All arrangements of the given points, in lexicographic order.
fn permutations_of(points: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; points.len()];
    fn rec(
        points: &[usize],
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == points.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..points.len() {
            if !used[i] {
                used[i] = true;
                current.push(points[i]);
                rec(points, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(points, &mut used, &mut current, &mut out);
    out
}

/// All of Σ_n in lexicographic one-line order.
pub fn all_permutations(n: usize, cap: u64) -> Result<Vec<Permutation>> {
    let lambda = if n == 0 {
        Composition::empty()
    } else {
        Composition::new(vec![n])?
    };
    let mut perms = young_subgroup_elements(&lambda, cap)?;
    perms.sort_unstable();
    Ok(perms)
}

/// Closure of a generating set under multiplication (breadth-first). Used by
/// verification code and tests; errors past `cap` elements.
pub fn generate_subgroup(gens: &[Permutation], degree: usize, cap: u64) -> Result<Vec<Permutation>> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(Permutation::identity(degree));
    let mut frontier: Vec<Permutation> = seen.iter().cloned().collect();
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                if seen.len() as u128 > cap as u128 {
                    return Err(Error::SizeLimit {
                        what: "subgroup closure",
                        needed: seen.len() as u128,
                        cap: cap as u128,
                    });
                }
                frontier.push(h);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// All partitions of `n` in descending lexicographic order, `(n)` first.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2 3)").unwrap();
        // apply a first: 1→2→3
        assert_eq!(a.mul(&b).apply(0), 2);
        assert_eq!(a.mul(&b), Permutation::parse_cycles(3, "(1 3 2)").unwrap());
    }

    #[test]
    fn cycle_notation_round_trips() {
        for s in ["()", "(1 2 3)(7 9)", "(2 5)(3 4)"] {
            let p = Permutation::parse_cycles(9, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(Permutation::parse_cycles(9, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn inverse_and_identity() {
        let p = Permutation::parse_cycles(5, "(1 4 2)(3 5)").unwrap();
        assert!(p.mul(&p.inv()).is_identity());
        assert!(p.inv().mul(&p).is_identity());
    }

    #[test]
    fn coxeter_word_recomposes() {
        for p in all_permutations(5, 1000).unwrap() {
            let word = p.coxeter_word();
            let mut acc = Permutation::identity(5);
            for i in word {
                acc = acc.mul(&Permutation::adjacent_transposition(5, i));
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn young_generator_edge_cases() {
        let full = Composition::new(vec![4]).unwrap();
        assert_eq!(young_subgroup_generators(&full).len(), 3);
        let fine = Composition::new(vec![1, 1, 1, 1]).unwrap();
        assert!(young_subgroup_generators(&fine).is_empty());
    }

    #[test]
    fn young_subgroup_order_by_enumeration() {
        let lambda = Composition::parse("7,2").unwrap();
        let gens = young_subgroup_generators(&lambda);
        let group = generate_subgroup(&gens, 9, 20_000).unwrap();
        assert_eq!(group.len(), 10_080);
        assert_eq!(lambda.young_order(), 10_080);
    }

    #[test]
    fn young_elements_match_closure() {
        let lambda = Composition::parse("2,2").unwrap();
        let elems = young_subgroup_elements(&lambda, 1000).unwrap();
        assert_eq!(elems.len(), 4);
        let closure = generate_subgroup(&young_subgroup_generators(&lambda), 4, 100).unwrap();
        let mut sorted = elems.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, closure);
    }

    #[test]
    fn partitions_of_small_n() {
        assert_eq!(partitions_of(0), vec![Vec::<usize>::new()]);
        assert_eq!(
            partitions_of(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions_of(5).len(), 7);
    }

    #[test]
    fn cycle_type_is_a_partition() {
        let p = Permutation::parse_cycles(6, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
    }
}
