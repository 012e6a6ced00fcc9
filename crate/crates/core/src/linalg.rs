//! Exact rational linear algebra: an incrementally maintained reduced row
//! echelon basis (pivoting by column position, fully deterministic) and a
//! dense matrix type for the induced actions on quotients.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigRational, One, Signed, Zero};

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, BigRational)>;

fn scale_add(target: &mut SparseRow, coeff: &BigRational, source: &SparseRow) {
    // target += coeff · source, merging sorted runs.
    let mut out: SparseRow = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        match (target.get(i), source.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi + coeff * vj;
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                let v = coeff * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                let v = coeff * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *target = out;
}

/// A reduced row echelon basis of a row space, built incrementally. Pivot
/// columns always carry a leading one and are eliminated from every other
/// stored row, so reduction against the basis is a single pass.
#[derive(Debug, Default)]
pub struct Echelon {
    /// pivot column → fully reduced row with leading one at that column.
    rows: BTreeMap<usize, SparseRow>,
    /// column → pivot rows whose tail touches that column.
    tails: HashMap<usize, BTreeSet<usize>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduce a row against the basis (leftmost pivot first).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < row.len() {
            let col = row[i].0;
            if let Some(pivot_row) = self.rows.get(&col) {
                let coeff = -row[i].1.clone();
                scale_add(&mut row, &coeff, pivot_row);
                // the pivot entry cancelled; continue from the same index
            } else {
                i += 1;
            }
        }
        row
    }

    /// Insert a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].1.clone();
        if !lead.is_one() {
            for (_, v) in row.iter_mut() {
                *v /= &lead;
            }
        }
        let pivot = row[0].0;
        // Eliminate the new pivot column from every stored row touching it.
        let touching: Vec<usize> = self
            .tails
            .get(&pivot)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for other in touching {
            let mut other_row = self.rows.remove(&other).expect("indexed row exists");
            let coeff = -other_row
                .iter()
                .find(|(c, _)| *c == pivot)
                .expect("tail index is accurate")
                .1
                .clone();
            self.unindex(other, &other_row);
            scale_add(&mut other_row, &coeff, &row);
            self.index(other, &other_row);
            self.rows.insert(other, other_row);
        }
        self.index(pivot, &row);
        self.rows.insert(pivot, row);
        true
    }

    fn index(&mut self, pivot: usize, row: &SparseRow) {
        for (c, _) in row.iter().skip(1) {
            self.tails.entry(*c).or_default().insert(pivot);
        }
    }

    fn unindex(&mut self, pivot: usize, row: &SparseRow) {
        for (c, _) in row.iter().skip(1) {
            if let Some(set) = self.tails.get_mut(c) {
                set.remove(&pivot);
            }
        }
    }

    /// The non-pivot columns below `cols`, in increasing order: a basis of
    /// the quotient space.
    pub fn free_columns(&self, cols: usize) -> Vec<usize> {
        (0..cols).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Express a unit vector modulo the row space over the free columns.
    /// For a free column this is the vector itself; for a pivot column the
    /// stored row gives `e_p = −(tail)`.
    pub fn express(&self, col: usize) -> SparseRow {
        match self.rows.get(&col) {
            None => vec![(col, BigRational::one())],
            Some(row) => row.iter().skip(1).map(|(c, v)| (*c, -v)).collect(),
        }
    }
}

/// A dense exact-rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    /// Matrix product, skipping zero entries (the action matrices here are
    /// extremely sparse).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Does every column hold exactly one entry, equal to one? (The
    /// structural sanity check for quotient actions of permutation type.)
    pub fn is_column_permutation_like(&self) -> bool {
        (0..self.cols).all(|j| {
            let mut ones = 0usize;
            for i in 0..self.rows {
                let v = self.at(i, j);
                if v.is_one() {
                    ones += 1;
                } else if !v.is_zero() {
                    return false;
                }
            }
            ones == 1
        })
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|v| v.denom().is_one())
    }
}

impl std::fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                let v = self.at(i, j);
                if v.is_negative() || !v.denom().is_one() {
                    write!(f, "{}/{}", v.numer(), v.denom())?;
                } else {
                    write!(f, "{}", v.numer())?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, rat(v))).collect()
    }

    #[test]
    fn rank_of_identifications() {
        // e0 = e1 = e2, e3 = e4 → rank 3, free columns {0, 3} (plus 5 alone)
        let mut ech = Echelon::new();
        assert!(ech.insert(row(&[(0, 1), (1, -1)])));
        assert!(ech.insert(row(&[(1, 1), (2, -1)])));
        assert!(ech.insert(row(&[(3, 1), (4, -1)])));
        assert!(!ech.insert(row(&[(0, 1), (2, -1)]))); // dependent
        assert_eq!(ech.rank(), 3);
        assert_eq!(ech.free_columns(6), vec![2, 4, 5]);
        // e0 reduces to e2, e3 to e4
        assert_eq!(ech.express(0), row(&[(2, 1)]));
        assert_eq!(ech.express(3), row(&[(4, 1)]));
        assert_eq!(ech.express(5), row(&[(5, 1)]));
    }

    #[test]
    fn general_rational_elimination() {
        // [2 4 0; 1 3 1; 0 1 1] has rank 2 (row3 = row2 − row1/2).
        let mut ech = Echelon::new();
        assert!(ech.insert(row(&[(0, 2), (1, 4)])));
        assert!(ech.insert(row(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!ech.insert(row(&[(1, 1), (2, 1)])));
        assert_eq!(ech.rank(), 2);
        assert_eq!(ech.free_columns(3), vec![2]);
        assert_eq!(ech.express(0), row(&[(2, 2)]));
        assert_eq!(ech.express(1), row(&[(2, -1)]));
    }

    #[test]
    fn reduced_echelon_is_fully_reduced() {
        let mut ech = Echelon::new();
        ech.insert(row(&[(1, 1), (2, -1)]));
        ech.insert(row(&[(0, 1), (1, -1)]));
        // after inserting the second row, the first must be rewritten to
        // eliminate nothing stale: expressing 0 uses only free columns.
        let e0 = ech.express(0);
        assert_eq!(e0, row(&[(2, 1)]));
    }

    #[test]
    fn matrix_product_and_trace() {
        let mut a = RationalMatrix::zero(2, 2);
        *a.at_mut(0, 1) = rat(1);
        *a.at_mut(1, 0) = rat(1);
        let p = a.mul(&a);
        assert_eq!(p, RationalMatrix::identity(2));
        assert_eq!(p.trace(), rat(2));
        assert!(a.is_column_permutation_like());
    }
}
