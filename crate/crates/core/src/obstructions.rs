//! The minimal obstruction `M`, its path-free relaxation `M′`, and the
//! structural properties of smallest bad supports.
//!
//! A copy of `M` is a face `abc` whose edges `ab` and `ac` lie in no other
//! face, together with a path from `a` to `b` avoiding `ab` and `ac`. The
//! function equal to 1 on `ab` and `ac` is then bad. Copies are counted as
//! (face, apex) pairs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::choose;
use crate::complex::{Complex, EdgeId};
use crate::error::{Error, Result};
use crate::shadow::{apex_witness_path, AdjacencyBits};
use crate::triple::{Triple, Vertex};

/// Denominator of the bad-triple lower bound `B(F) >= |F| n / 120`.
pub const BAD_TRIPLE_BOUND_DENOMINATOR: u64 = 120;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MCopy {
    pub face: Triple,
    pub apex: Vertex,
    /// Shortest path from the apex to the lower of the other two face
    /// vertices that avoids both apex edges.
    pub witness_path: Vec<Vertex>,
}

impl MCopy {
    /// The two edges at the apex, each lying only in `face`.
    pub fn apex_edges(&self) -> [(Vertex, Vertex); 2] {
        let (x, y) = self.face.others(self.apex).expect("apex lies in face");
        [ordered(self.apex, x), ordered(self.apex, y)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootedTriple {
    pub triple: Triple,
    pub root: Vertex,
}

fn ordered(x: Vertex, y: Vertex) -> (Vertex, Vertex) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Edge positions (within `ab, ac, bc`) of the two edges at each apex.
const APEX_EDGES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Number of faces containing the edge `uv`.
pub fn edge_face_degree(c: &Complex, u: Vertex, v: Vertex) -> Result<usize> {
    let id = c.edge_id(u, v).ok_or(Error::UnknownEdge {
        u: u.min(v),
        v: u.max(v),
    })?;
    Ok(c.edge_faces(id).len())
}

/// Apexes of face `f` whose two edges lie in no other face.
fn m_prime_roots(c: &Complex, f: usize) -> impl Iterator<Item = Vertex> + '_ {
    let ids = c.face_edges(f);
    let single: [bool; 3] = ids.map(|e| c.edge_faces(e).len() == 1);
    let verts = c.faces()[f].vertices();
    (0..3)
        .filter(move |&k| single[APEX_EDGES[k].0] && single[APEX_EDGES[k].1])
        .map(move |k| verts[k])
}

/// Every (face, apex) copy of `M`, each with a BFS witness path.
pub fn find_m_copies(c: &Complex) -> Vec<MCopy> {
    let adj = c.adjacency();
    let mut copies = Vec::new();
    for (f, face) in c.faces().iter().enumerate() {
        for apex in m_prime_roots(c, f) {
            let (x, y) = face.others(apex).expect("root lies in face");
            if let Some(path) = apex_witness_path(&adj, apex, x, y) {
                copies.push(MCopy {
                    face: *face,
                    apex,
                    witness_path: path,
                });
            }
        }
    }
    copies
}

/// Whether face `f` forms an `M` for some apex.
pub fn face_forms_m(c: &Complex, f: usize) -> bool {
    let adj = AdjacencyBits::from_complex(c);
    let face = c.faces()[f];
    m_prime_roots(c, f).any(|a| {
        let (x, y) = face.others(a).expect("root lies in face");
        adj.apex_reaches(a, x, y)
    })
}

/// `M ⊂ c`, stopping at the first copy.
pub fn contains_m(c: &Complex) -> bool {
    let adj = AdjacencyBits::from_complex(c);
    c.faces().iter().enumerate().any(|(f, face)| {
        m_prime_roots(c, f).any(|a| {
            let (x, y) = face.others(a).expect("root lies in face");
            adj.apex_reaches(a, x, y)
        })
    })
}

/// Rooted triples forming `M′`: the triple is a face and both root edges
/// lie in no other face.
pub fn rooted_m_prime(c: &Complex) -> Vec<RootedTriple> {
    (0..c.num_faces())
        .flat_map(|f| {
            m_prime_roots(c, f).map(move |root| RootedTriple {
                triple: c.faces()[f],
                root,
            })
        })
        .collect()
}

pub fn count_rooted_m_prime(c: &Complex) -> usize {
    (0..c.num_faces())
        .map(|f| m_prime_roots(c, f).count())
        .sum()
}

/// Expected number of rooted `M′` copies in the binomial model,
/// `C(n,3) · 3p · (1−p)^(2(n−3))`.
///
/// A rooted triple `x; y, z` forms `M′` when `xyz` is a face and none of
/// the `2(n−3)` other triples through `xy` or `xz` is.
pub fn expected_rooted_m_prime(n: u32, p: f64) -> f64 {
    first_moment(n, p, 3)
}

/// `C(n,3) · 3p · (1−p)^(2(n−2))`, the commonly quoted simplification of
/// [`expected_rooted_m_prime`]. It asks for two more non-faces than
/// necessary, so it is a lower bound, asymptotically equal for `p = o(1)`.
pub fn expected_rooted_m_prime_lower(n: u32, p: f64) -> f64 {
    first_moment(n, p, 2)
}

fn first_moment(n: u32, p: f64, offset: u32) -> f64 {
    if n < 3 {
        return 0.0;
    }
    let triples = choose(u64::from(n), 3) as f64;
    triples * 3.0 * p * libm::pow(1.0 - p, 2.0 * f64::from(n - offset))
}

/// An edge set of a complex, for super-connectivity queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    edges: Vec<EdgeId>,
}

impl SupportGraph {
    pub fn new<I>(c: &Complex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            edges.push(c.edge_id(u, v).ok_or(Error::UnknownEdge {
                u: u.min(v),
                v: u.max(v),
            })?);
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { edges })
    }

    pub fn from_ids(c: &Complex, ids: &[EdgeId]) -> Result<Self> {
        let pairs: Vec<_> = ids
            .iter()
            .map(|&id| c.edges().get(id as usize).map(|e| e.endpoints()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::invalid("edge id out of range"))?;
        Self::new(c, pairs)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Discovers the part of `support` reachable from `start` by repeatedly
/// querying the faces through a known support edge and adding the other
/// support edges found in them. Returned ids are in discovery order.
pub fn discover_support(c: &Complex, support: &SupportGraph, start: EdgeId) -> Vec<EdgeId> {
    let mut in_support = vec![false; c.num_edges()];
    for &e in support.edges() {
        in_support[e as usize] = true;
    }
    let mut found = vec![false; c.num_edges()];
    let mut order = Vec::new();
    if !in_support[start as usize] {
        return order;
    }
    let mut queue = VecDeque::from([start]);
    found[start as usize] = true;
    while let Some(e) = queue.pop_front() {
        order.push(e);
        for &f in c.edge_faces(e) {
            for other in c.face_edges(f as usize) {
                if in_support[other as usize] && !found[other as usize] {
                    found[other as usize] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    order
}

/// Whether `support` cannot be split into two non-empty parts with every
/// face meeting at most one part; equivalently, the graph on `support`
/// joining edges that share a face is connected.
pub fn is_super_connected(c: &Complex, support: &SupportGraph) -> Result<bool> {
    let Some(&start) = support.edges().first() else {
        return Err(Error::invalid(
            "super-connectivity needs a non-empty edge set",
        ));
    };
    Ok(discover_support(c, support, start).len() == support.len())
}

/// Number of triples of `[n]` containing an odd number of edges of `edges`.
///
/// Triples with two vertices in `V(F)` and one outside contain an odd
/// number of `F`-edges exactly when the inside pair is an edge, so they
/// contribute `|F| · (n − |V(F)|)`; triples with at most one vertex in
/// `V(F)` contain none. Only triples inside `V(F)` are enumerated.
pub fn count_bad_triples(n: u32, edges: &[(Vertex, Vertex)]) -> u64 {
    let mut adj = AdjacencyBits::new(n);
    let mut touched = vec![false; n as usize];
    let mut m = 0u64;
    for &(u, v) in edges {
        if u == v || adj.has_edge(u, v) {
            continue;
        }
        adj.add_edge(u, v);
        touched[u as usize - 1] = true;
        touched[v as usize - 1] = true;
        m += 1;
    }
    let inside: Vec<Vertex> = (1..=n).filter(|&v| touched[v as usize - 1]).collect();
    let outside = u64::from(n) - inside.len() as u64;
    let mut odd = 0u64;
    for (i, &x) in inside.iter().enumerate() {
        for (j, &y) in inside.iter().enumerate().skip(i + 1) {
            let xy = adj.has_edge(x, y) as u8;
            for &z in &inside[j + 1..] {
                if (xy + adj.has_edge(x, z) as u8 + adj.has_edge(y, z) as u8) % 2 == 1 {
                    odd += 1;
                }
            }
        }
    }
    odd + m * outside
}

/// Structural checks expected of a smallest bad support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SupportReport {
    pub max_support_degree: u32,
    /// `max_support_degree < n/2`.
    pub degree_ok: bool,
    pub super_connected: bool,
    pub bad_triple_count: u64,
    /// `B(F) >= |F| n / 120`.
    pub bad_triple_bound_ok: bool,
}

pub fn check_minimal_support_properties(
    c: &Complex,
    pairs: &[(Vertex, Vertex)],
) -> Result<SupportReport> {
    let support = SupportGraph::new(c, pairs.iter().copied())?;
    let n = c.n();
    let mut degree = vec![0u32; n as usize];
    for &id in support.edges() {
        let e = c.edge(id);
        degree[e.u as usize - 1] += 1;
        degree[e.v as usize - 1] += 1;
    }
    let max_support_degree = degree.iter().copied().max().unwrap_or(0);
    let canonical: Vec<_> = support
        .edges()
        .iter()
        .map(|&id| c.edge(id).endpoints())
        .collect();
    let bad = count_bad_triples(n, &canonical);
    Ok(SupportReport {
        max_support_degree,
        degree_ok: 2 * max_support_degree < n,
        super_connected: support.is_empty() || is_super_connected(c, &support)?,
        bad_triple_count: bad,
        bad_triple_bound_ok: bad * BAD_TRIPLE_BOUND_DENOMINATOR
            >= support.len() as u64 * u64::from(n),
    })
}

/// Minimum over vertex pairs of the number of common shadow-graph
/// neighbors (paths of length two). Zero when `n < 2`.
pub fn min_two_paths(c: &Complex) -> u32 {
    let adj = AdjacencyBits::from_complex(c);
    let n = adj.n() as Vertex;
    let mut best: Option<u32> = None;
    for x in 1..=n {
        for y in x + 1..=n {
            let k = adj.common_neighbors(x, y);
            best = Some(best.map_or(k, |b| b.min(k)));
            if best == Some(0) {
                return 0;
            }
        }
    }
    best.unwrap_or(0)
}
