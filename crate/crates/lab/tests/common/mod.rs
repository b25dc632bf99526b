//! Oracles for the acceptance run. None of them call into the library
//! routines they are compared against.
#![allow(dead_code)]

use std::collections::HashSet;

use homconn_core::{Complex, Triple};

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

pub fn random_complex(rng: &mut Lcg, n: u32, p: f64) -> Complex {
    let mut faces = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if rng.unit() < p {
                    faces.push(Triple::new(a, b, c).unwrap());
                }
            }
        }
    }
    Complex::downward_closure(faces, n).unwrap()
}

/// Edge functions as bit masks over `c.edges()`, with face boundaries and
/// every coboundary image precomputed.
pub struct Masks {
    pub edges: Vec<(u32, u32)>,
    pub faces: Vec<u32>,
    pub coboundaries: HashSet<u32>,
}

impl Masks {
    pub fn new(c: &Complex) -> Self {
        let edges: Vec<(u32, u32)> = c.edges().iter().map(|e| (e.u, e.v)).collect();
        assert!(edges.len() <= 32 && c.n() <= 16);
        let bit = |u: u32, v: u32| edges.iter().position(|&x| x == (u, v)).unwrap();
        let faces = c
            .faces()
            .iter()
            .map(|f| (1u32 << bit(f.a, f.b)) | (1 << bit(f.a, f.c)) | (1 << bit(f.b, f.c)))
            .collect();
        let coboundaries = (0u32..1 << c.n())
            .map(|g| {
                edges.iter().enumerate().fold(0u32, |img, (i, &(u, v))| {
                    if (g >> (u - 1) & 1) != (g >> (v - 1) & 1) {
                        img | 1 << i
                    } else {
                        img
                    }
                })
            })
            .collect();
        Self {
            edges,
            faces,
            coboundaries,
        }
    }

    pub fn is_cocycle(&self, f: u32) -> bool {
        self.faces.iter().all(|&m| (f & m).count_ones() % 2 == 0)
    }

    pub fn is_bad(&self, f: u32) -> bool {
        self.is_cocycle(f) && !self.coboundaries.contains(&f)
    }
}

/// β₁ by walking all `2^E` edge functions in Gray-code order:
/// `log2(#cocycles / #coboundaries)`.
pub fn exhaustive_betti1(c: &Complex) -> u32 {
    let m = Masks::new(c);
    let e = m.edges.len();
    assert!(e <= 24, "exhaustive oracle is for tiny complexes");
    let mut incidence = vec![0u64; e];
    for (fi, &fm) in m.faces.iter().enumerate() {
        for (i, inc) in incidence.iter_mut().enumerate() {
            if fm >> i & 1 == 1 {
                *inc ^= 1 << fi;
            }
        }
    }
    let mut cocycles = 1u64;
    let mut parity = 0u64;
    for step in 1u64..(1u64 << e) {
        parity ^= incidence[step.trailing_zeros() as usize];
        if parity == 0 {
            cocycles += 1;
        }
    }
    (cocycles / m.coboundaries.len() as u64).trailing_zeros()
}

/// Every bad function of minimum support size, by enumerating supports of
/// increasing size.
pub fn all_minimum_bad_supports(c: &Complex) -> Vec<Vec<(u32, u32)>> {
    let m = Masks::new(c);
    let e = m.edges.len() as u32;
    for k in 1..=e {
        let mut found = Vec::new();
        let mut s: u64 = (1u64 << k) - 1;
        while s < 1u64 << e {
            if m.is_bad(s as u32) {
                found.push(
                    m.edges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| s >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect(),
                );
            }
            // next subset of the same size
            let low = s & s.wrapping_neg();
            let ripple = s + low;
            s = (((ripple ^ s) >> 2) / low) | ripple;
        }
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

pub fn max_degree(n: u32, support: &[(u32, u32)]) -> u32 {
    let mut deg = vec![0u32; n as usize + 1];
    for &(u, v) in support {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}

/// Edges of `support` are linked when some face contains both; checks the
/// resulting graph is connected by repeated relabeling.
pub fn face_linked(c: &Complex, support: &[(u32, u32)]) -> bool {
    let mut label: Vec<usize> = (0..support.len()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for f in c.faces() {
            let pairs = [(f.a, f.b), (f.a, f.c), (f.b, f.c)];
            let inside: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(_, p)| pairs.contains(p))
                .map(|(i, _)| i)
                .collect();
            if let Some(low) = inside.iter().map(|&i| label[i]).min() {
                for &i in &inside {
                    if label[i] != low {
                        label[i] = low;
                        changed = true;
                    }
                }
            }
        }
    }
    label.iter().all(|&l| l == label[0])
}

/// Vertex triples spanning an odd number of `support` edges, by brute force.
pub fn brute_bad_triples(n: u32, support: &[(u32, u32)]) -> u64 {
    let has = |u: u32, v: u32| support.contains(&(u, v)) as u32;
    let mut odd = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if (has(a, b) + has(a, c) + has(b, c)) % 2 == 1 {
                    odd += 1;
                }
            }
        }
    }
    odd
}

pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len().div_ceil(2) - 1]
}
