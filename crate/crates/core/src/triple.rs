//! Vertex triples and their colexicographic ranking.
//!
//! The colex rank of `{a < b < c}` is `C(a-1,1) + C(b-1,2) + C(c-1,3)`.
//! It does not depend on `n`, so the triples of `[n]` are exactly the ranks
//! `0..C(n,3)` and extending `n` appends new ranks without moving old ones.

use core::fmt;

use crate::choose;
use crate::error::{Error, Result};

/// A 1-indexed vertex.
pub type Vertex = u32;

/// Three distinct vertices in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triple {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
}

impl Triple {
    /// Builds a triple from three distinct vertices given in any order.
    pub fn new(x: Vertex, y: Vertex, z: Vertex) -> Result<Self> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::invalid("triple vertices must be distinct"));
        }
        if v[0] == 0 {
            return Err(Error::VertexOutOfRange { vertex: 0, n: v[2] });
        }
        Ok(Triple {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        [self.a, self.b, self.c]
    }

    /// The three sub-pairs in the order `ab, ac, bc`.
    pub fn pairs(&self) -> [(Vertex, Vertex); 3] {
        [(self.a, self.b), (self.a, self.c), (self.b, self.c)]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// The two vertices other than `v`, in increasing order.
    pub fn others(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        match v {
            _ if v == self.a => Some((self.b, self.c)),
            _ if v == self.b => Some((self.a, self.c)),
            _ if v == self.c => Some((self.a, self.b)),
            _ => None,
        }
    }

    /// Colex rank, valid for any `n >= c`.
    pub fn rank(&self) -> u64 {
        let (a, b, c) = (u64::from(self.a), u64::from(self.b), u64::from(self.c));
        (a - 1) + choose(b - 1, 2) + choose(c - 1, 3)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

/// Rank of `{a < b < c}` among the triples of `[n]`.
pub fn triple_rank(a: Vertex, b: Vertex, c: Vertex, n: u32) -> Result<u64> {
    if !(1 <= a && a < b && b < c) {
        return Err(Error::invalid("triple must satisfy 1 <= a < b < c"));
    }
    if c > n {
        return Err(Error::VertexOutOfRange { vertex: c, n });
    }
    Ok(Triple { a, b, c }.rank())
}

/// Inverse of [`triple_rank`].
pub fn triple_unrank(index: u64, n: u32) -> Result<Triple> {
    if index >= choose(u64::from(n), 3) {
        return Err(Error::IndexOutOfRange { index, n });
    }
    // Greedy colex decoding: largest c-1 with C(c-1,3) <= index, and so on.
    let mut rest = index;
    let c = largest_with(rest, 3, u64::from(n));
    rest -= choose(c, 3);
    let b = largest_with(rest, 2, c);
    rest -= choose(b, 2);
    let a = rest;
    Ok(Triple {
        a: (a + 1) as u32,
        b: (b + 1) as u32,
        c: (c + 1) as u32,
    })
}

/// Largest `x < limit` with `C(x, k) <= value`.
fn largest_with(value: u64, k: u64, limit: u64) -> u64 {
    let (mut lo, mut hi) = (k - 1, limit - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if choose(mid, k) <= value {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
