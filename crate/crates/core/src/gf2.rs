//! Dense bit-packed linear algebra over F₂.
//!
//! Vectors pack 64 coefficients per word. Addition is XOR. Matrices are
//! lists of row vectors of equal length; elimination works on a private
//! copy of the rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// A vector with 1-bits at `support`. Panics if an index is `>= len`.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// `self += other`. Both vectors must have the same length.
    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight, the size of the support.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the 1-bits in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn highest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                expected: ncols,
                got: bad.len(),
            });
        }
        Ok(Self { ncols, rows })
    }

    pub fn push_row(&mut self, row: Gf2Vector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// `M x` for a vector of length `ncols`.
    pub fn mul_vec(&self, x: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_support(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(i, _)| i),
        )
    }

    pub fn rank(&self) -> usize {
        self.reduced_row_echelon().1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        let (rows, pivots) = self.reduced_row_echelon();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = Gf2Vector::zeros(self.ncols);
            x.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    x.set(p, true);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Row-reduces a copy of the matrix. Returns the nonzero reduced rows
    /// and their pivot columns (leading 1s, increasing).
    fn reduced_row_echelon(&self) -> (Vec<Gf2Vector>, Vec<usize>) {
        let mut rows: Vec<Gf2Vector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.ncols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        (rows, pivots)
    }
}

/// Rank over F₂ by row elimination.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// An incrementally grown, fully reduced row basis.
///
/// Every stored row has a pivot column in which all other rows are zero.
/// Reducing a new vector therefore costs one XOR per pivot column present
/// in it, which is at most three for a face boundary.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    ncols: usize,
    rows: Vec<Gf2Vector>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<u32>,
    // Columns that have appeared in any inserted vector. Rows are only ever
    // combined with inserted vectors, so an untouched column is zero in
    // every row.
    touched: Vec<bool>,
}

const NO_ROW: u32 = u32::MAX;

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            row_of_col: vec![NO_ROW; ncols],
            touched: vec![false; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the span, in place.
    pub fn reduce(&self, v: &mut Gf2Vector) {
        debug_assert_eq!(v.len(), self.ncols);
        let hits: Vec<u32> = v
            .support()
            .map(|c| self.row_of_col[c])
            .filter(|&r| r != NO_ROW)
            .collect();
        for r in hits {
            v.xor_assign(&self.rows[r as usize]);
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns `true` iff the rank went up.
    pub fn insert(&mut self, mut v: Gf2Vector) -> bool {
        self.reduce(&mut v);
        // A column no stored row touches needs no back-substitution.
        let fresh = v.support().find(|&c| !self.touched[c]);
        let Some(pivot) = fresh.or_else(|| v.highest_set_bit()) else {
            return false;
        };
        if self.touched[pivot] {
            for row in self.rows.iter_mut() {
                if row.get(pivot) {
                    row.xor_assign(&v);
                }
            }
        }
        for c in v.support() {
            self.touched[c] = true;
        }
        self.row_of_col[pivot] = self.rows.len() as u32;
        self.pivot_cols.push(pivot);
        self.rows.push(v);
        true
    }

    /// Convenience for sparse rows such as face boundaries.
    pub fn insert_support(&mut self, cols: &[usize]) -> bool {
        self.insert(Gf2Vector::from_support(self.ncols, cols.iter().copied()))
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }
}
