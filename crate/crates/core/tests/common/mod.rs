//! Test-only oracles that share no code path with the library routines
//! they check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use homconn_core::{Complex, Triple};

pub fn t(a: u32, b: u32, c: u32) -> Triple {
    Triple::new(a, b, c).unwrap()
}

/// Tiny deterministic generator for test inputs.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.0 >> 33
    }

    pub fn unit(&mut self) -> f64 {
        self.next() as f64 / (1u64 << 31) as f64
    }

    pub fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }
}

/// A random complex on `n` vertices, each triple a face with probability `p`,
/// faces listed in lexicographic order.
pub fn random_complex(rng: &mut Lcg, n: u32, p: f64) -> Complex {
    let mut faces = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if rng.unit() < p {
                    faces.push(t(a, b, c));
                }
            }
        }
    }
    Complex::downward_closure(faces, n).unwrap()
}

/// Exhaustive cohomology over all `2^E` edge functions.
///
/// Counts the cocycles (even on every face, tracked by a Gray-code walk
/// over face parities) and the coboundaries (distinct images of all `2^n`
/// vertex functions). `β₁ = log2(cocycles / coboundaries)`. Also returns
/// the minimum support size of a bad function, if any.
pub struct Exhaustive {
    pub cocycles: u64,
    pub coboundaries: u64,
    pub min_bad_weight: Option<u32>,
}

impl Exhaustive {
    pub fn betti1(&self) -> u32 {
        (self.cocycles / self.coboundaries).trailing_zeros()
    }
}

pub fn exhaustive(c: &Complex) -> Exhaustive {
    let e = c.num_edges();
    assert!(e <= 24, "exhaustive oracle is for tiny complexes");
    let pair_bit = |u: u32, v: u32| -> u32 {
        c.edges()
            .iter()
            .position(|ed| (ed.u, ed.v) == (u.min(v), u.max(v)))
            .unwrap() as u32
    };
    // face incidence of each edge, as a mask over faces
    let mut incidence = vec![0u64; e];
    for (fi, face) in c.faces().iter().enumerate() {
        for (u, v) in face.pairs() {
            incidence[pair_bit(u, v) as usize] ^= 1 << fi;
        }
    }
    assert!(c.num_faces() <= 64);
    let mut coboundaries = HashSet::new();
    for g in 0u64..(1 << c.n()) {
        let mut img = 0u32;
        for (i, ed) in c.edges().iter().enumerate() {
            if (g >> (ed.u - 1) & 1) != (g >> (ed.v - 1) & 1) {
                img |= 1 << i;
            }
        }
        coboundaries.insert(img);
    }
    let mut cocycles = 1u64; // the zero function
    let mut min_bad = None;
    let (mut f, mut parity) = (0u32, 0u64);
    for step in 1u64..(1u64 << e) {
        let bit = step.trailing_zeros();
        f ^= 1 << bit;
        parity ^= incidence[bit as usize];
        if parity == 0 {
            cocycles += 1;
            if !coboundaries.contains(&f) {
                let w = f.count_ones();
                min_bad = Some(min_bad.map_or(w, |m: u32| m.min(w)));
            }
        }
    }
    Exhaustive {
        cocycles,
        coboundaries: coboundaries.len() as u64,
        min_bad_weight: min_bad,
    }
}

/// All-pairs common-neighbor minimum from hash-set adjacency.
pub fn min_common_neighbors(c: &Complex) -> u32 {
    let n = c.n();
    let mut adj: Vec<HashSet<u32>> = vec![HashSet::new(); n as usize + 1];
    for e in c.edges() {
        adj[e.u as usize].insert(e.v);
        adj[e.v as usize].insert(e.u);
    }
    let mut best = u32::MAX;
    for x in 1..=n {
        for y in x + 1..=n {
            best = best.min(adj[x as usize].intersection(&adj[y as usize]).count() as u32);
        }
    }
    if best == u32::MAX {
        0
    } else {
        best
    }
}

/// `O(n³)` bad-triple count.
pub fn brute_bad_triples(n: u32, edges: &[(u32, u32)]) -> u64 {
    let set: BTreeSet<(u32, u32)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut odd = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let k = [(a, b), (a, c), (b, c)]
                    .iter()
                    .filter(|p| set.contains(p))
                    .count();
                if k % 2 == 1 {
                    odd += 1;
                }
            }
        }
    }
    odd
}
