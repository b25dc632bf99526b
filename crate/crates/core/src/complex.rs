//! 2-complexes generated by 3-uniform hypergraphs.
//!
//! A [`Complex`] stores `n` vertices (all kept, isolated or not), a list of
//! faces, and the edges induced by them. Edge ids are dense and assigned in
//! order of first appearance while scanning faces in order, each face
//! contributing its pairs as `ab, ac, bc`. The Linial–Meshulam variants
//! additionally carry every pair of `[n]`; those extra edges get ids after
//! the face-induced ones, in colex pair order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::choose;
use crate::error::{Error, Result};
use crate::process::BirthTimeTable;
use crate::triple::{Triple, Vertex};
use crate::union_find::UnionFind;

pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub id: EdgeId,
}

impl Edge {
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Which random model to sample.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ModelKind {
    /// Each triple is a face independently with probability `p`.
    Binomial(f64),
    /// Exactly `m` faces, uniformly among all `m`-sets of triples.
    Uniform(u64),
    /// `Binomial(p)` plus every pair of `[n]` as an edge.
    LinialMeshulam(f64),
    /// `Uniform(m)` plus every pair of `[n]` as an edge.
    LinialMeshulamUniform(u64),
}

impl ModelKind {
    pub fn validate(&self, n: u32) -> Result<()> {
        match *self {
            ModelKind::Binomial(p) | ModelKind::LinialMeshulam(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::invalid("p must lie in [0, 1]"));
                }
            }
            ModelKind::Uniform(m) | ModelKind::LinialMeshulamUniform(m) => {
                if m > choose(u64::from(n), 3) {
                    return Err(Error::invalid("m exceeds the number of triples C(n, 3)"));
                }
            }
        }
        Ok(())
    }

    pub fn full_skeleton(&self) -> bool {
        matches!(
            self,
            ModelKind::LinialMeshulam(_) | ModelKind::LinialMeshulamUniform(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    n: u32,
    faces: Vec<Triple>,
    edges: Vec<Edge>,
    face_edges: Vec<[EdgeId; 3]>,
    edge_faces: Vec<Vec<u32>>,
    edge_index: BTreeMap<(Vertex, Vertex), EdgeId>,
    full_skeleton: bool,
}

impl Complex {
    /// Downward closure of a list of distinct faces on `[n]`.
    pub fn downward_closure(faces: Vec<Triple>, n: u32) -> Result<Self> {
        Self::build(faces, n, false)
    }

    /// Downward closure plus every pair of `[n]`.
    pub fn with_full_skeleton(faces: Vec<Triple>, n: u32) -> Result<Self> {
        Self::build(faces, n, true)
    }

    fn build(faces: Vec<Triple>, n: u32, full_skeleton: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for t in &faces {
            if t.a == 0 || !(t.a < t.b && t.b < t.c) {
                return Err(Error::invalid("face vertices must satisfy 1 <= a < b < c"));
            }
            if t.c > n {
                return Err(Error::VertexOutOfRange { vertex: t.c, n });
            }
            if !seen.insert(*t) {
                return Err(Error::DuplicateFace(*t));
            }
        }
        let mut c = Complex {
            n,
            faces: Vec::with_capacity(faces.len()),
            edges: Vec::new(),
            face_edges: Vec::with_capacity(faces.len()),
            edge_faces: Vec::new(),
            edge_index: BTreeMap::new(),
            full_skeleton,
        };
        for t in faces {
            c.push_face(t);
        }
        if full_skeleton {
            for v in 2..=n {
                for u in 1..v {
                    c.intern_edge(u, v);
                }
            }
        }
        Ok(c)
    }

    fn intern_edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        if let Some(&id) = self.edge_index.get(&(u, v)) {
            return id;
        }
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { u, v, id });
        self.edge_faces.push(Vec::new());
        self.edge_index.insert((u, v), id);
        id
    }

    fn push_face(&mut self, t: Triple) {
        let fi = self.faces.len() as u32;
        let ids = t.pairs().map(|(u, v)| self.intern_edge(u, v));
        for &e in &ids {
            self.edge_faces[e as usize].push(fi);
        }
        self.faces.push(t);
        self.face_edges.push(ids);
    }

    /// Sample a complex from `model`. A deterministic function of its
    /// arguments: the faces are read off the seeded birth-time table.
    pub fn generate(n: u32, model: ModelKind, seed: u64) -> Result<Self> {
        model.validate(n)?;
        let table = BirthTimeTable::new(n, seed);
        let faces = match model {
            ModelKind::Binomial(p) | ModelKind::LinialMeshulam(p) => table.faces_at_p(p),
            ModelKind::Uniform(m) | ModelKind::LinialMeshulamUniform(m) => {
                table.faces_at_m(m as usize)
            }
        };
        Self::build(faces, n, model.full_skeleton())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn faces(&self) -> &[Triple] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_full_skeleton(&self) -> bool {
        self.full_skeleton
    }

    /// Edge ids of face `f`, in the order `ab, ac, bc`.
    pub fn face_edges(&self, f: usize) -> [EdgeId; 3] {
        self.face_edges[f]
    }

    /// Indices of the faces containing edge `e`.
    pub fn edge_faces(&self, e: EdgeId) -> &[u32] {
        &self.edge_faces[e as usize]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index.get(&key).copied()
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id as usize]
    }

    /// Shadow-graph degree of every vertex, indexed by `v - 1`.
    pub fn vertex_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize];
        for e in &self.edges {
            deg[e.u as usize - 1] += 1;
            deg[e.v as usize - 1] += 1;
        }
        deg
    }

    /// Ascending neighbor lists, indexed by `v - 1`.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for e in &self.edges {
            adj[e.u as usize - 1].push(e.v);
            adj[e.v as usize - 1].push(e.u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Components of the shadow graph on all `n` vertices. Isolated vertices
    /// count as their own components. Labels are indexed by `v - 1` and
    /// numbered in order of each component's lowest vertex.
    pub fn connected_components(&self) -> (usize, Vec<u32>) {
        let mut uf = UnionFind::new(self.n as usize);
        for e in &self.edges {
            uf.union(e.u as usize - 1, e.v as usize - 1);
        }
        let mut label_of_root = vec![u32::MAX; self.n as usize];
        let mut labels = vec![0u32; self.n as usize];
        let mut next = 0u32;
        for (v, label) in labels.iter_mut().enumerate() {
            let r = uf.find(v);
            if label_of_root[r] == u32::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            *label = label_of_root[r];
        }
        (next as usize, labels)
    }

    /// Vertices lying in no edge.
    pub fn count_isolated_vertices(&self) -> usize {
        self.vertex_degrees().iter().filter(|&&d| d == 0).count()
    }
}
