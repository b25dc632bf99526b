//! Bitset adjacency of the shadow graph, shared by the static obstruction
//! queries and the incremental process engine.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::Complex;
use crate::triple::Vertex;

#[derive(Debug, Clone)]
pub(crate) struct AdjacencyBits {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl AdjacencyBits {
    pub(crate) fn new(n: u32) -> Self {
        let n = n as usize;
        let stride = n.div_ceil(64).max(1);
        Self {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub(crate) fn from_complex(c: &Complex) -> Self {
        let mut adj = Self::new(c.n());
        for e in c.edges() {
            adj.add_edge(e.u, e.v);
        }
        adj
    }

    fn row(&self, v: Vertex) -> &[u64] {
        let i = v as usize - 1;
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    fn set(&mut self, v: Vertex, w: Vertex) {
        let (i, j) = (v as usize - 1, w as usize - 1);
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.set(u, v);
        self.set(v, u);
    }

    pub(crate) fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let j = v as usize - 1;
        self.row(u)[j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn common_neighbors(&self, x: Vertex, y: Vertex) -> u32 {
        self.row(x)
            .iter()
            .zip(self.row(y))
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    /// Whether `a` reaches `b` without using the edges `ab` and `ac`.
    ///
    /// Since `bc` is an edge whenever this is asked, reaching either `b` or
    /// `c` suffices. Tries a two-step hop first, then a bitset BFS.
    pub(crate) fn apex_reaches(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        let (bi, ci) = (b as usize - 1, c as usize - 1);
        let mut frontier: Vec<u64> = self.row(a).to_vec();
        frontier[bi / 64] &= !(1 << (bi % 64));
        frontier[ci / 64] &= !(1 << (ci % 64));
        if frontier.iter().all(|&w| w == 0) {
            return false;
        }
        let (rb, rc) = (self.row(b), self.row(c));
        if frontier
            .iter()
            .zip(rb.iter().zip(rc))
            .any(|(f, (x, y))| f & (x | y) != 0)
        {
            return true;
        }
        let ai = a as usize - 1;
        let mut visited = frontier.clone();
        visited[ai / 64] |= 1 << (ai % 64);
        let mut next = vec![0u64; self.stride];
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for (wi, &word) in frontier.iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let x = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let row = &self.bits[x * self.stride..(x + 1) * self.stride];
                    for (nw, r) in next.iter_mut().zip(row) {
                        *nw |= r;
                    }
                }
            }
            for (nw, v) in next.iter_mut().zip(&visited) {
                *nw &= !v;
            }
            if next.iter().all(|&w| w == 0) {
                return false;
            }
            if next[bi / 64] >> (bi % 64) & 1 == 1 || next[ci / 64] >> (ci % 64) & 1 == 1 {
                return true;
            }
            for (v, nw) in visited.iter_mut().zip(&next) {
                *v |= nw;
            }
            core::mem::swap(&mut frontier, &mut next);
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }
}

/// Shortest path from `a` to `b` avoiding the edges `ab` and `ac`, by BFS
/// visiting neighbors in ascending order.
pub(crate) fn apex_witness_path(
    adj: &[Vec<Vertex>],
    a: Vertex,
    b: Vertex,
    c: Vertex,
) -> Option<Vec<Vertex>> {
    let mut parent = vec![0 as Vertex; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    seen[a as usize - 1] = true;
    queue.push_back(a);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x as usize - 1] {
            if x == a && (y == b || y == c) {
                continue;
            }
            if seen[y as usize - 1] {
                continue;
            }
            seen[y as usize - 1] = true;
            parent[y as usize - 1] = x;
            if y == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur as usize - 1];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}
