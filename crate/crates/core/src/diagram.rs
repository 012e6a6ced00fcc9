//! Canonical set-partition diagrams and the concatenation product.
//!
//! A diagram on ambient size `r` is a set partition of the `2r` dots
//! `1, …, r, 1′, …, r′` (top row unprimed, bottom row primed). Internally a
//! dot is a code in `0..2r`: top dot `i` is `i-1` and bottom dot `i′` is
//! `r+i-1`, so the canonical total order top-1 < … < top-r < bottom-1 < … <
//! bottom-r is plain integer order. Blocks are stored sorted, and blocks are
//! ordered by their minimal code; two diagrams are equal exactly when these
//! canonical forms coincide.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which row a dot lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Top,
    Bottom,
}

/// A dot of a diagram, 1-based as in the text grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dot {
    pub row: Row,
    pub index: usize,
}

impl Dot {
    pub fn top(index: usize) -> Self {
        Dot { row: Row::Top, index }
    }

    pub fn bottom(index: usize) -> Self {
        Dot { row: Row::Bottom, index }
    }

    fn code(self, r: usize) -> Result<u32> {
        if self.index == 0 || self.index > r {
            return Err(Error::MalformedPartition(format!(
                "dot index {} outside 1..{r}",
                self.index
            )));
        }
        Ok(match self.row {
            Row::Top => (self.index - 1) as u32,
            Row::Bottom => (r + self.index - 1) as u32,
        })
    }
}

/// A set partition of the `2r` dots in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartitionDiagram {
    r: usize,
    blocks: Vec<Vec<u32>>,
}

impl SetPartitionDiagram {
    /// Normalize raw blocks of dot codes into a diagram. Fails unless the
    /// blocks partition `0..2r` exactly.
    pub fn from_codes(r: usize, raw: Vec<Vec<u32>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::MalformedPartition("ambient size r must be positive".into()));
        }
        let n = 2 * r;
        let mut seen = vec![false; n];
        let mut blocks = Vec::with_capacity(raw.len());
        for mut block in raw {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            block.sort_unstable();
            for &c in &block {
                if c as usize >= n {
                    return Err(Error::MalformedPartition(format!(
                        "dot code {c} outside the {n} dots of P({r})"
                    )));
                }
                if seen[c as usize] {
                    return Err(Error::MalformedPartition(format!(
                        "dot code {c} appears in two blocks"
                    )));
                }
                seen[c as usize] = true;
            }
            blocks.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!(
                "dot code {missing} is not covered"
            )));
        }
        blocks.sort_unstable();
        Ok(SetPartitionDiagram { r, blocks })
    }

    /// Normalize blocks given as [`Dot`]s (the public constructor of the
    /// text-grammar alphabet).
    pub fn new(r: usize, raw_blocks: &[Vec<Dot>]) -> Result<Self> {
        let mut raw = Vec::with_capacity(raw_blocks.len());
        for block in raw_blocks {
            let mut codes = Vec::with_capacity(block.len());
            for &dot in block {
                codes.push(dot.code(r)?);
            }
            raw.push(codes);
        }
        Self::from_codes(r, raw)
    }

    /// The identity diagram of P(r): blocks {i, i′}.
    pub fn identity(r: usize) -> Self {
        let blocks = (0..r as u32).map(|i| vec![i, i + r as u32]).collect();
        SetPartitionDiagram { r, blocks }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn is_top(&self, code: u32) -> bool {
        (code as usize) < self.r
    }

    /// Number of blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| self.is_top(b[0]) && !self.is_top(*b.last().unwrap()))
            .count()
    }

    /// True iff every block is a pair, i.e. the diagram lies in the Brauer
    /// subalgebra.
    pub fn is_brauer(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// Swap top and bottom rows.
    pub fn flip(&self) -> Self {
        let r = self.r as u32;
        let raw = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&c| if c < r { c + r } else { c - r })
                    .collect()
            })
            .collect();
        Self::from_codes(self.r, raw).expect("flip of a valid diagram is valid")
    }

    /// Restriction of the block structure to the top row, as a list of sorted
    /// blocks of codes `0..r`, ordered by minimal dot. The second component
    /// flags whether the originating block propagates.
    pub fn top_structure(&self) -> Vec<(Vec<u32>, bool)> {
        let mut parts: Vec<(Vec<u32>, bool)> = Vec::new();
        for b in &self.blocks {
            let top: Vec<u32> = b.iter().copied().filter(|&c| self.is_top(c)).collect();
            if !top.is_empty() {
                let propagates = b.len() > top.len();
                parts.push((top, propagates));
            }
        }
        parts.sort_unstable();
        parts
    }
}

/// Concatenation product: stack `x` above `y`, identify bottom(x) with
/// top(y), and return the induced partition on the outer dots together with
/// the number of components confined to the identified middle row.
pub fn multiply_diagrams(
    x: &SetPartitionDiagram,
    y: &SetPartitionDiagram,
) -> Result<(SetPartitionDiagram, usize)> {
    if x.r != y.r {
        return Err(Error::SizeMismatch { left: x.r, right: y.r });
    }
    let r = x.r;
    // Nodes 0..r outer top, r..2r middle, 2r..3r outer bottom.
    let mut uf = UnionFind::new(3 * r);
    for b in &x.blocks {
        let first = b[0] as usize;
        for &c in &b[1..] {
            uf.union(first, c as usize);
        }
    }
    for b in &y.blocks {
        let first = b[0] as usize + r;
        for &c in &b[1..] {
            uf.union(first, c as usize + r);
        }
    }
    // Group outer dots by root. Outer nodes come in increasing code order,
    // so each block stays sorted as it is filled.
    let mut slot_of_root = vec![usize::MAX; 3 * r];
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for node in (0..r).chain(2 * r..3 * r) {
        let root = uf.find(node);
        let code = if node < r { node } else { node - r } as u32;
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = blocks.len();
            blocks.push(vec![code]);
        } else {
            blocks[slot_of_root[root]].push(code);
        }
    }
    let mut loops = 0usize;
    for node in r..2 * r {
        let root = uf.find(node);
        if root == node && slot_of_root[root] == usize::MAX {
            loops += 1;
        }
    }
    blocks.sort_unstable();
    let product = SetPartitionDiagram { r, blocks };
    Ok((product, loops))
}

/// The diagram of a permutation: top dot `i` joined to bottom dot `π(i)′`.
pub fn perm_to_diagram(p: &Permutation) -> SetPartitionDiagram {
    let r = p.degree();
    let raw = (0..r)
        .map(|i| vec![i as u32, (r + p.apply(i)) as u32])
        .collect();
    SetPartitionDiagram::from_codes(r, raw).expect("permutation diagram is valid")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
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
            // Smaller root wins so middle-only components keep a middle root.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

// --- counting -------------------------------------------------------------

/// Bell number B(n), saturating at u128::MAX.
pub fn bell_number(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(v));
        }
        row = next;
    }
    row[0]
}

/// Double factorial (2m−1)!! = number of perfect matchings on 2m points,
/// saturating.
pub fn double_factorial_odd(m: usize) -> u128 {
    let mut acc = 1u128;
    for k in 0..m {
        acc = acc.saturating_mul((2 * k + 1) as u128);
    }
    acc
}

/// Enumerate the diagram basis of P(r) (all set partitions of the 2r dots)
/// or, with `brauer_only`, of the Brauer subalgebra (perfect matchings).
/// Deterministically ordered by canonical form.
pub fn enumerate_basis(
    r: usize,
    brauer_only: bool,
    cap: u64,
) -> Result<Vec<SetPartitionDiagram>> {
    if r == 0 {
        return Err(Error::MalformedPartition("ambient size r must be positive".into()));
    }
    let expected = if brauer_only {
        double_factorial_odd(r)
    } else {
        bell_number(2 * r)
    };
    if expected > cap as u128 {
        return Err(Error::SizeLimit {
            what: "diagram basis",
            needed: expected,
            cap: cap as u128,
        });
    }
    let mut out = if brauer_only {
        enumerate_matchings(2 * r)
            .into_iter()
            .map(|raw| SetPartitionDiagram::from_codes(r, raw).unwrap())
            .collect::<Vec<_>>()
    } else {
        enumerate_set_partitions(2 * r)
            .into_iter()
            .map(|raw| SetPartitionDiagram::from_codes(r, raw).unwrap())
            .collect::<Vec<_>>()
    };
    out.sort_unstable();
    debug_assert_eq!(out.len() as u128, expected);
    Ok(out)
}

/// All set partitions of `0..n` via restricted-growth strings.
pub(crate) fn enumerate_set_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().copied().max().unwrap() + 1;
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i as u32);
        }
        out.push(blocks);
        // Next restricted-growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// All perfect matchings of `0..n` (n even), as lists of pair blocks.
pub(crate) fn enumerate_matchings(n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut current = Vec::new();
    fn rec(
        n: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let first = match used.iter().position(|u| !u) {
            None => {
                out.push(current.clone());
                return;
            }
            Some(f) => f,
        };
        used[first] = true;
        for second in first + 1..n {
            if !used[second] {
                used[second] = true;
                current.push(vec![first as u32, second as u32]);
                rec(n, used, current, out);
                current.pop();
                used[second] = false;
            }
        }
        used[first] = false;
    }
    rec(n, &mut used, &mut current, &mut out);
    out
}

// --- text grammar ----------------------------------------------------------

impl fmt::Display for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            write!(f, "{{")?;
            for (i, &c) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                if self.is_top(c) {
                    write!(f, "{}", c + 1)?;
                } else {
                    write!(f, "{}'", c as usize - self.r + 1)?;
                }
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Parse the whitespace-free block grammar `{1,2'}{2,1',3'}…` for ambient
/// size `r`. Blocks and dots may appear in any order.
pub fn parse_diagram(r: usize, s: &str) -> Result<SetPartitionDiagram> {
    let blocks = parse_blocks(s)?;
    let raw = blocks
        .into_iter()
        .map(|dots| dots.into_iter().map(|d| d.code(r)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SetPartitionDiagram::from_codes(r, raw)
}

pub(crate) fn parse_blocks(s: &str) -> Result<Vec<Vec<Dot>>> {
    let mut blocks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c != '{' {
            return Err(Error::Parse(format!("expected `{{` at `{s}`")));
        }
        chars.next();
        let mut block = Vec::new();
        loop {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            if digits.is_empty() {
                return Err(Error::Parse("expected a dot index".into()));
            }
            let index: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad dot index `{digits}`")))?;
            let row = if chars.peek() == Some(&'\'') {
                chars.next();
                Row::Bottom
            } else {
                Row::Top
            };
            block.push(Dot { row, index });
            match chars.next() {
                Some(',') => continue,
                Some('}') => break,
                other => {
                    return Err(Error::Parse(format!(
                        "expected `,` or `}}`, found {other:?}"
                    )))
                }
            }
        }
        blocks.push(block);
    }
    Ok(blocks)
}
