//! Homology over F₂ of a 2-complex and its bad 0-1 edge functions.
//!
//! `β₀` is reported as (number of components) − 1, so a complex is
//! hom-connected exactly when both Betti numbers are zero. Isolated
//! vertices count as components.
//!
//! A 0-1 edge function is *bad* when it is even on the boundary of every
//! face (a 1-cocycle) but not induced by any 0-1 vertex function (not a
//! coboundary). Bad functions exist iff `β₁ > 0`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Complex, Edge, EdgeId};
use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, Gf2Matrix, Gf2Vector};
use crate::triple::Vertex;

/// Largest `β₁` for which [`minimal_bad_support`] will enumerate cosets.
pub const MAX_COSET_DIMENSION: usize = 24;
/// Largest total cocycle-space dimension [`minimal_bad_support`] will walk.
pub const MAX_ENUMERATION_DIMENSION: usize = 32;

/// A 0-1 function on the edges of a particular complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeFunction(Gf2Vector);

impl EdgeFunction {
    pub fn zero(c: &Complex) -> Self {
        Self(Gf2Vector::zeros(c.num_edges()))
    }

    pub fn from_vector(c: &Complex, v: Gf2Vector) -> Result<Self> {
        if v.len() != c.num_edges() {
            return Err(Error::LengthMismatch {
                expected: c.num_edges(),
                got: v.len(),
            });
        }
        Ok(Self(v))
    }

    /// The function equal to 1 exactly on the given edges.
    pub fn from_edges<I>(c: &Complex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut v = Gf2Vector::zeros(c.num_edges());
        for (x, y) in pairs {
            let id = c.edge_id(x, y).ok_or(Error::UnknownEdge {
                u: x.min(y),
                v: x.max(y),
            })?;
            v.set(id as usize, true);
        }
        Ok(Self(v))
    }

    pub fn value(&self, e: EdgeId) -> bool {
        self.0.get(e as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Size of the support.
    pub fn weight(&self) -> usize {
        self.0.weight()
    }

    pub fn support_ids(&self) -> Vec<EdgeId> {
        self.0.support().map(|i| i as EdgeId).collect()
    }

    pub fn support(&self, c: &Complex) -> Vec<Edge> {
        self.0.support().map(|i| c.edge(i as EdgeId)).collect()
    }

    pub fn as_vector(&self) -> &Gf2Vector {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti0: usize,
    pub betti1: usize,
    pub hom_connected: bool,
    /// A bad function and an odd cycle certifying it, present iff `β₁ > 0`.
    pub witness: Option<(EdgeFunction, Vec<Edge>)>,
}

/// `∂₂` as a faces × edges matrix: row `f` has 1s at the three edges of `f`.
pub fn boundary_matrix_d2(c: &Complex) -> Gf2Matrix {
    let rows = (0..c.num_faces())
        .map(|f| Gf2Vector::from_support(c.num_edges(), c.face_edges(f).map(|e| e as usize)))
        .collect();
    Gf2Matrix::from_rows(c.num_edges(), rows).expect("rows sized to edge count")
}

/// `δ₀` as an edges × vertices matrix: `(δ₀ g)(uv) = g(u) + g(v)`.
pub fn coboundary_d0(c: &Complex) -> Gf2Matrix {
    let n = c.n() as usize;
    let rows = c
        .edges()
        .iter()
        .map(|e| Gf2Vector::from_support(n, [e.u as usize - 1, e.v as usize - 1]))
        .collect();
    Gf2Matrix::from_rows(n, rows).expect("rows sized to vertex count")
}

/// `δ₁` as a faces × edges matrix: `(δ₁ f)(σ)` sums `f` over the boundary of `σ`.
pub fn coboundary_d1(c: &Complex) -> Gf2Matrix {
    let e = c.num_edges();
    let mut m = Gf2Matrix::new(e);
    for f in 0..c.num_faces() {
        let mut row = Gf2Vector::zeros(e);
        for id in c.face_edges(f) {
            row.flip(id as usize);
        }
        m.push_row(row).expect("row sized to edge count");
    }
    m
}

/// `(β₀, β₁)` via the rank identity `β₁ = E − n + components − rank ∂₂`.
pub fn betti_numbers(c: &Complex) -> (usize, usize) {
    let (components, _) = c.connected_components();
    let rank = boundary_matrix_d2(c).rank();
    let betti1 = c.num_edges() + components - c.n() as usize - rank;
    (components.saturating_sub(1), betti1)
}

/// `β₁` computed on the cochain side as `dim ker δ₁ − rank δ₀`, from an
/// explicit kernel basis. Independent of the component count and of `∂₂`.
pub fn betti1_cochain(c: &Complex) -> usize {
    let kernel = coboundary_d1(c).kernel_basis().len();
    kernel - coboundary_d0(c).rank()
}

pub fn is_hom_connected(c: &Complex) -> bool {
    betti_numbers(c) == (0, 0)
}

pub fn homology_report(c: &Complex) -> HomologyReport {
    let (betti0, betti1) = betti_numbers(c);
    let witness = find_bad_function(c).map(|f| {
        let (ok, cycle) = verify_bad_function(c, &f).expect("length matches");
        debug_assert!(ok);
        (f, cycle.unwrap_or_default())
    });
    HomologyReport {
        betti0,
        betti1,
        hom_connected: betti0 == 0 && betti1 == 0,
        witness,
    }
}

/// Some bad function, or `None` iff `β₁ = 0`.
///
/// Scans a kernel basis of `δ₁` for a vector that is not a coboundary.
/// If every basis vector were a coboundary the kernel would equal the
/// image of `δ₀`, so one is found whenever `β₁ > 0`.
pub fn find_bad_function(c: &Complex) -> Option<EdgeFunction> {
    coboundary_d1(c)
        .kernel_basis()
        .into_iter()
        .map(EdgeFunction)
        .find(|f| odd_cycle(c, f).is_some())
}

/// Checks that `f` is bad. Returns `(true, Some(cycle))` with a concrete
/// cycle of odd `f`-sum when it is, `(false, None)` otherwise.
pub fn verify_bad_function(c: &Complex, f: &EdgeFunction) -> Result<(bool, Option<Vec<Edge>>)> {
    if f.len() != c.num_edges() {
        return Err(Error::LengthMismatch {
            expected: c.num_edges(),
            got: f.len(),
        });
    }
    let even = (0..c.num_faces())
        .all(|i| c.face_edges(i).iter().filter(|&&e| f.value(e)).count() % 2 == 0);
    if !even {
        return Ok((false, None));
    }
    match odd_cycle(c, f) {
        Some(cycle) => Ok((true, Some(cycle))),
        None => Ok((false, None)),
    }
}

struct SpanningForest {
    parent: Vec<Option<(Vertex, EdgeId)>>,
    depth: Vec<u32>,
    tree_edge: Vec<bool>,
}

/// BFS forest rooted at the lowest vertex of each component, neighbors
/// visited in ascending order.
fn spanning_forest(c: &Complex) -> SpanningForest {
    let n = c.n() as usize;
    let mut incident: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n];
    for e in c.edges() {
        incident[e.u as usize - 1].push((e.v, e.id));
        incident[e.v as usize - 1].push((e.u, e.id));
    }
    for list in incident.iter_mut() {
        list.sort_unstable();
    }
    let mut parent = vec![None; n];
    let mut depth = vec![0u32; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; c.num_edges()];
    let mut queue = VecDeque::new();
    for root in 1..=n as Vertex {
        if seen[root as usize - 1] {
            continue;
        }
        seen[root as usize - 1] = true;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &(y, id) in &incident[x as usize - 1] {
                if !seen[y as usize - 1] {
                    seen[y as usize - 1] = true;
                    parent[y as usize - 1] = Some((x, id));
                    depth[y as usize - 1] = depth[x as usize - 1] + 1;
                    tree_edge[id as usize] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    SpanningForest {
        parent,
        depth,
        tree_edge,
    }
}

/// A cycle of odd `f`-sum, found through vertex potentials on a spanning
/// forest: a non-tree edge whose endpoint potentials disagree with `f`
/// closes such a cycle with the tree paths to the common ancestor.
fn odd_cycle(c: &Complex, f: &EdgeFunction) -> Option<Vec<Edge>> {
    let forest = spanning_forest(c);
    let n = c.n() as usize;
    let mut potential = vec![false; n];
    // BFS order guarantees parents are resolved first when sorted by depth.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| forest.depth[i]);
    for i in order {
        if let Some((p, id)) = forest.parent[i] {
            potential[i] = potential[p as usize - 1] ^ f.value(id);
        }
    }
    let bad = c.edges().iter().find(|e| {
        !forest.tree_edge[e.id as usize]
            && potential[e.u as usize - 1] ^ potential[e.v as usize - 1] != f.value(e.id)
    })?;
    let (mut x, mut y) = (bad.v, bad.u);
    let mut up_from_v = Vec::new();
    let mut up_from_u = Vec::new();
    while x != y {
        let (dx, dy) = (forest.depth[x as usize - 1], forest.depth[y as usize - 1]);
        if dx >= dy {
            let (p, id) = forest.parent[x as usize - 1].expect("non-root above ancestor");
            up_from_v.push(c.edge(id));
            x = p;
        } else {
            let (p, id) = forest.parent[y as usize - 1].expect("non-root above ancestor");
            up_from_u.push(c.edge(id));
            y = p;
        }
    }
    let mut cycle = vec![*bad];
    cycle.extend(up_from_v);
    cycle.extend(up_from_u.into_iter().rev());
    Some(cycle)
}

/// A bad function of minimum support size, if that minimum is at most
/// `k_max`.
///
/// The cocycle space is spanned by vertex stars (coboundaries, one per
/// non-root vertex of each component) plus `β₁` complementary cocycles.
/// A Gray-code walk visits every cocycle once; those with a nonzero
/// complementary part are exactly the bad functions.
pub fn minimal_bad_support(c: &Complex, k_max: usize) -> Result<Option<(EdgeFunction, usize)>> {
    let e = c.num_edges();
    if e == 0 {
        return Ok(None);
    }
    let (_, labels) = c.connected_components();
    let mut root_seen = vec![false; labels.len()];
    let mut stars = EchelonBasis::new(e);
    let mut generators: Vec<Gf2Vector> = Vec::new();
    let incident = {
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); c.n() as usize];
        for edge in c.edges() {
            inc[edge.u as usize - 1].push(edge.id as usize);
            inc[edge.v as usize - 1].push(edge.id as usize);
        }
        inc
    };
    for (v, &label) in labels.iter().enumerate() {
        if !root_seen[label as usize] {
            root_seen[label as usize] = true;
            continue;
        }
        let star = Gf2Vector::from_support(e, incident[v].iter().copied());
        let grew = stars.insert(star.clone());
        debug_assert!(grew, "stars of non-root vertices are independent");
        generators.push(star);
    }
    let coboundary_dim = generators.len();
    let mut span = stars;
    for z in coboundary_d1(c).kernel_basis() {
        if span.insert(z.clone()) {
            generators.push(z);
        }
    }
    let betti1 = generators.len() - coboundary_dim;
    if betti1 == 0 {
        return Ok(None);
    }
    if betti1 > MAX_COSET_DIMENSION {
        return Err(Error::CapacityExceeded {
            dimension: betti1,
            budget: MAX_COSET_DIMENSION,
        });
    }
    if generators.len() > MAX_ENUMERATION_DIMENSION {
        return Err(Error::CapacityExceeded {
            dimension: generators.len(),
            budget: MAX_ENUMERATION_DIMENSION,
        });
    }
    let floor = if c.edges().iter().any(|ed| c.edge_faces(ed.id).is_empty()) {
        1
    } else {
        2
    };
    let mut current = Gf2Vector::zeros(e);
    let mut class: u64 = 0;
    let mut best: Option<Gf2Vector> = None;
    let mut best_weight = usize::MAX;
    for step in 1u64..(1u64 << generators.len()) {
        let g = step.trailing_zeros() as usize;
        current.xor_assign(&generators[g]);
        if g >= coboundary_dim {
            class ^= 1 << (g - coboundary_dim);
        }
        if class == 0 {
            continue;
        }
        let w = current.weight();
        if w < best_weight {
            best_weight = w;
            best = Some(current.clone());
            if w <= floor {
                break;
            }
        }
    }
    let best = best.expect("betti1 > 0 yields a nonzero class");
    if best_weight > k_max {
        return Ok(None);
    }
    Ok(Some((EdgeFunction(best), best_weight)))
}
