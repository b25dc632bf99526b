//! The face-addition process and its hitting times.
//!
//! Every triple of `[n]` gets an independent uniform birth time. The faces
//! with birth time at most `p` form the binomial model at `p`; the `m`
//! earliest-born faces form the uniform model with `m` faces; adding faces
//! in birth order is the random hypergraph process. All three share one
//! [`BirthTimeTable`].

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::choose;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::gf2::EchelonBasis;
use crate::shadow::AdjacencyBits;
use crate::triple::{triple_unrank, Triple, Vertex};
use crate::union_find::UnionFind;

/// Per-triple birth times, indexed by colex rank.
///
/// Times are drawn in rank order from a ChaCha8 stream, so the table for
/// `n` is a prefix of the table for any larger `n` under the same seed.
/// Values lie in the open interval `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BirthTimeTable {
    n: u32,
    seed: u64,
    times: Vec<f64>,
    order: Vec<u32>,
}

fn open_unit(x: u64) -> f64 {
    ((x >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

impl BirthTimeTable {
    pub fn new(n: u32, seed: u64) -> Self {
        let total = choose(u64::from(n), 3) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let times: Vec<f64> = (0..total).map(|_| open_unit(rng.next_u64())).collect();
        let mut order: Vec<u32> = (0..total as u32).collect();
        // ties broken by rank
        order.sort_by(|&x, &y| {
            times[x as usize]
                .total_cmp(&times[y as usize])
                .then(x.cmp(&y))
        });
        Self {
            n,
            seed,
            times,
            order,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn time(&self, rank: u64) -> f64 {
        self.times[rank as usize]
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Triple ranks sorted by increasing birth time.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// The `k`-th face to be born (0-based) and its birth time.
    pub fn nth_born(&self, k: usize) -> (Triple, f64) {
        let rank = self.order[k];
        (
            triple_unrank(u64::from(rank), self.n).expect("rank within table"),
            self.times[rank as usize],
        )
    }

    /// Faces born at or before `p`, in birth order.
    pub fn faces_at_p(&self, p: f64) -> Vec<Triple> {
        let m = self.order.partition_point(|&r| self.times[r as usize] <= p);
        self.faces_at_m(m)
    }

    /// The `m` earliest-born faces, in birth order.
    pub fn faces_at_m(&self, m: usize) -> Vec<Triple> {
        (0..m.min(self.len())).map(|k| self.nth_born(k).0).collect()
    }

    pub fn complex_at_p(&self, p: f64) -> Complex {
        Complex::downward_closure(self.faces_at_p(p), self.n).expect("table faces are distinct")
    }

    pub fn complex_at_m(&self, m: usize) -> Complex {
        Complex::downward_closure(self.faces_at_m(m), self.n).expect("table faces are distinct")
    }
}

pub fn birth_times(n: u32, seed: u64) -> BirthTimeTable {
    BirthTimeTable::new(n, seed)
}

pub fn complex_at_p(table: &BirthTimeTable, p: f64) -> Complex {
    table.complex_at_p(p)
}

pub fn complex_at_m(table: &BirthTimeTable, m: usize) -> Complex {
    table.complex_at_m(m)
}

/// State after one step of the process.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepRecord {
    pub step: u64,
    pub birth_time: f64,
    pub face: Triple,
    pub edges: u32,
    pub components: u32,
    pub isolated: u32,
    pub rank_d2: u32,
    pub beta1: u32,
    pub connected: bool,
    pub contains_m: bool,
    pub hom_connected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessTrace {
    pub n: u32,
    pub seed: u64,
    pub m_cap: u64,
    pub events: Vec<StepRecord>,
}

/// Incrementally maintained complex for the face-addition process.
///
/// Components and isolated vertices come from a union-find and vertex
/// degrees; `rank ∂₂` from a fully reduced row basis over edge columns
/// (allocated on first appearance); `M` presence from a scan of the faces
/// that still have two edges of face-degree one.
#[derive(Debug, Clone)]
pub struct ProcessState {
    n: u32,
    pair_ids: Vec<u32>,
    edge_degree: Vec<u32>,
    faces: Vec<Triple>,
    face_edges: Vec<[u32; 3]>,
    adj: AdjacencyBits,
    components: UnionFind,
    vertex_degree: Vec<u32>,
    isolated: u32,
    basis: EchelonBasis,
    candidates: Vec<u32>,
    last_m: Option<(u32, Vertex)>,
}

const NO_EDGE: u32 = u32::MAX;

fn pair_rank(u: Vertex, v: Vertex) -> usize {
    (u as usize - 1) + (v as usize - 1) * (v as usize - 2) / 2
}

impl ProcessState {
    pub fn new(n: u32) -> Self {
        let pairs = choose(u64::from(n), 2) as usize;
        Self {
            n,
            pair_ids: vec![NO_EDGE; pairs],
            edge_degree: Vec::new(),
            faces: Vec::new(),
            face_edges: Vec::new(),
            adj: AdjacencyBits::new(n),
            components: UnionFind::new(n as usize),
            vertex_degree: vec![0; n as usize],
            isolated: n,
            basis: EchelonBasis::new(pairs),
            candidates: Vec::new(),
            last_m: None,
        }
    }

    pub fn num_edges(&self) -> u32 {
        self.edge_degree.len() as u32
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn components(&self) -> u32 {
        self.components.count() as u32
    }

    pub fn isolated(&self) -> u32 {
        self.isolated
    }

    pub fn rank_d2(&self) -> u32 {
        self.basis.rank() as u32
    }

    pub fn beta1(&self) -> u32 {
        self.num_edges() + self.components() - self.n - self.rank_d2()
    }

    pub fn hom_connected(&self) -> bool {
        self.components() == 1 && self.beta1() == 0
    }

    fn edge(&mut self, u: Vertex, v: Vertex) -> u32 {
        let slot = pair_rank(u, v);
        if self.pair_ids[slot] == NO_EDGE {
            self.pair_ids[slot] = self.edge_degree.len() as u32;
            self.edge_degree.push(0);
            self.adj.add_edge(u, v);
            self.components.union(u as usize - 1, v as usize - 1);
            for w in [u, v] {
                let d = &mut self.vertex_degree[w as usize - 1];
                if *d == 0 {
                    self.isolated -= 1;
                }
                *d += 1;
            }
        }
        self.pair_ids[slot]
    }

    /// Adds a face. The caller guarantees it is new.
    pub fn add_face(&mut self, t: Triple) {
        let ids = t.pairs().map(|(u, v)| self.edge(u, v));
        for &e in &ids {
            self.edge_degree[e as usize] += 1;
        }
        // Column ids equal pair slots so the basis width is fixed up front.
        let cols = t.pairs().map(|(u, v)| pair_rank(u, v));
        self.basis.insert_support(&cols);
        let fi = self.faces.len() as u32;
        self.faces.push(t);
        self.face_edges.push(ids);
        if self.single_edges(fi) >= 2 {
            self.candidates.push(fi);
        }
    }

    fn single_edges(&self, f: u32) -> usize {
        self.face_edges[f as usize]
            .iter()
            .filter(|&&e| self.edge_degree[e as usize] == 1)
            .count()
    }

    fn apex_ok(&self, f: u32, apex_slot: usize) -> bool {
        const APEX_EDGES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
        let ids = self.face_edges[f as usize];
        let (i, j) = APEX_EDGES[apex_slot];
        if self.edge_degree[ids[i] as usize] != 1 || self.edge_degree[ids[j] as usize] != 1 {
            return false;
        }
        let verts = self.faces[f as usize].vertices();
        let a = verts[apex_slot];
        let (x, y) = self.faces[f as usize].others(a).expect("apex in face");
        self.adj.apex_reaches(a, x, y)
    }

    fn slot_of(&self, f: u32, apex: Vertex) -> usize {
        self.faces[f as usize]
            .vertices()
            .iter()
            .position(|&v| v == apex)
            .expect("apex in face")
    }

    /// Whether the current complex contains a copy of `M`.
    pub fn contains_m(&mut self) -> bool {
        if let Some((f, apex)) = self.last_m {
            if self.apex_ok(f, self.slot_of(f, apex)) {
                return true;
            }
            self.last_m = None;
        }
        let edge_degree = &self.edge_degree;
        let face_edges = &self.face_edges;
        self.candidates.retain(|&f| {
            face_edges[f as usize]
                .iter()
                .filter(|&&e| edge_degree[e as usize] == 1)
                .count()
                >= 2
        });
        for k in 0..self.candidates.len() {
            let f = self.candidates[k];
            for slot in 0..3 {
                if self.apex_ok(f, slot) {
                    self.last_m = Some((f, self.faces[f as usize].vertices()[slot]));
                    return true;
                }
            }
        }
        false
    }

    /// Snapshot of the current flags.
    pub fn record(&mut self, step: u64, birth_time: f64, face: Triple) -> StepRecord {
        let contains_m = self.contains_m();
        StepRecord {
            step,
            birth_time,
            face,
            edges: self.num_edges(),
            components: self.components(),
            isolated: self.isolated,
            rank_d2: self.rank_d2(),
            beta1: self.beta1(),
            connected: self.components() == 1,
            contains_m,
            hom_connected: self.hom_connected(),
        }
    }
}

/// Runs the first `m_cap` steps of the process driven by a fresh table.
pub fn run_process(n: u32, seed: u64, m_cap: u64) -> Result<ProcessTrace> {
    run_process_with_table(&BirthTimeTable::new(n, seed), m_cap)
}

pub fn run_process_with_table(table: &BirthTimeTable, m_cap: u64) -> Result<ProcessTrace> {
    if m_cap > table.len() as u64 {
        return Err(Error::invalid(
            "m_cap exceeds the number of triples C(n, 3)",
        ));
    }
    let mut state = ProcessState::new(table.n());
    let mut events = Vec::with_capacity(m_cap as usize);
    for k in 0..m_cap as usize {
        let (face, time) = table.nth_born(k);
        state.add_face(face);
        events.push(state.record(k as u64 + 1, time, face));
    }
    Ok(ProcessTrace {
        n: table.n(),
        seed: table.seed(),
        m_cap,
        events,
    })
}

/// `ceil(C(n,3) · 2(ln n + ln ln n) / n)`, clipped to `C(n,3)`; zero when
/// `n < 3`.
pub fn default_m_cap(n: u32) -> u64 {
    if n < 3 {
        return 0;
    }
    let total = choose(u64::from(n), 3);
    let nf = f64::from(n);
    let ln = libm::log(nf);
    let cap = libm::ceil(total as f64 * 2.0 * (ln + libm::log(ln)) / nf);
    (cap as u64).min(total)
}

/// Hitting times of a process trace. Steps are 1-based; step 0 is the
/// empty complex.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HittingTimes {
    pub n: u32,
    pub seed: u64,
    pub m_cap: u64,
    /// First step with no isolated vertex.
    pub m_iso: Option<u64>,
    /// First step with a connected shadow graph.
    pub m_t: Option<u64>,
    /// Last step at or before `m_cap` containing a copy of `M`.
    pub m_last_m: Option<u64>,
    /// `m_last_m + 1`, the step whose face kills the last copy. Undefined
    /// when no copy was ever seen or a copy survives at `m_cap`.
    pub m_m: Option<u64>,
    /// Least step from which hom-connectivity holds through `m_cap`.
    pub m_h: Option<u64>,
    pub p_iso: Option<f64>,
    pub p_t: Option<f64>,
    pub p_m: Option<f64>,
    pub p_h: Option<f64>,
    /// Hom-connected at `m_cap`, so `m_h` is defined.
    pub stabilized: bool,
    /// A copy of `M` is present at `m_cap`.
    pub m_at_cap: bool,
}

pub fn hitting_times(trace: &ProcessTrace) -> HittingTimes {
    let ev = &trace.events;
    let time_at = |m: Option<u64>| m.map(|m| ev[m as usize - 1].birth_time);
    let m_iso = ev.iter().find(|r| r.isolated == 0).map(|r| r.step);
    let m_t = ev.iter().find(|r| r.connected).map(|r| r.step);
    let m_last_m = ev.iter().rev().find(|r| r.contains_m).map(|r| r.step);
    let m_at_cap = ev.last().is_some_and(|r| r.contains_m);
    let m_m = match m_last_m {
        Some(last) if last < trace.m_cap => Some(last + 1),
        _ => None,
    };
    let stabilized = match ev.last() {
        Some(r) => r.hom_connected,
        None => trace.n <= 1,
    };
    let m_h = if !stabilized {
        None
    } else if ev.is_empty() {
        Some(0)
    } else {
        let broken = ev
            .iter()
            .rev()
            .find(|r| !r.hom_connected)
            .map_or(0, |r| r.step);
        Some(broken + 1)
    };
    let p_h = match m_h {
        Some(m) if m >= 1 => time_at(Some(m)),
        _ => None,
    };
    HittingTimes {
        n: trace.n,
        seed: trace.seed,
        m_cap: trace.m_cap,
        m_iso,
        m_t,
        m_last_m,
        m_m,
        m_h,
        p_iso: time_at(m_iso),
        p_t: time_at(m_t),
        p_m: time_at(m_m),
        p_h,
        stabilized,
        m_at_cap,
    }
}

/// The step (and birth time) at which the Linial–Meshulam complex driven
/// by `table` becomes hom-connected: the full 1-skeleton plus the faces
/// born so far. Hom-connectivity is monotone there, so the first such step
/// is the threshold. `None` if `n < 3`.
pub fn lm_threshold(table: &BirthTimeTable) -> Option<(u64, f64)> {
    let n = table.n();
    if n < 3 {
        return None;
    }
    let pairs = choose(u64::from(n), 2) as usize;
    let target = pairs - n as usize + 1;
    let mut basis = EchelonBasis::new(pairs);
    for k in 0..table.len() {
        let (face, time) = table.nth_born(k);
        basis.insert_support(&face.pairs().map(|(u, v)| pair_rank(u, v)));
        if basis.rank() == target {
            return Some((k as u64 + 1, time));
        }
    }
    unreachable!("the full complex on n >= 3 vertices is hom-connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;

    #[test]
    fn table_is_deterministic_and_prefix_stable() {
        let a = BirthTimeTable::new(12, 9);
        assert_eq!(a, BirthTimeTable::new(12, 9));
        assert_ne!(a.times(), BirthTimeTable::new(12, 10).times());
        let b = BirthTimeTable::new(15, 9);
        assert_eq!(a.times(), &b.times()[..a.len()]);
        assert!(a.times().iter().all(|&t| t > 0.0 && t < 1.0));
    }

    #[test]
    fn snapshots_at_extremes() {
        let t = BirthTimeTable::new(7, 1);
        assert_eq!(t.complex_at_p(0.0).num_faces(), 0);
        assert_eq!(t.complex_at_p(1.0).num_faces(), 35);
        assert_eq!(t.complex_at_m(35).num_faces(), 35);
    }

    #[test]
    fn fraction_below_q_concentrates() {
        // C(40,3) = 9880 triples; count <= 0.1 has sd sqrt(9880 * 0.09)
        let t = BirthTimeTable::new(40, 77);
        let below = t.times().iter().filter(|&&x| x <= 0.1).count() as f64;
        let sd = libm::sqrt(9880.0 * 0.1 * 0.9);
        assert!((below - 988.0).abs() <= 5.0 * sd, "{below}");
    }

    #[test]
    fn m_cap_examples() {
        assert_eq!(default_m_cap(3), 1);
        assert_eq!(default_m_cap(2), 0);
        let mut prev = 0;
        for n in 3..=300 {
            let cap = default_m_cap(n);
            assert!(cap >= prev);
            assert!(cap <= choose(n.into(), 3));
            prev = cap;
        }
    }

    #[test]
    fn empty_and_bad_caps() {
        let trace = run_process(8, 3, 0).unwrap();
        assert!(trace.events.is_empty());
        let h = hitting_times(&trace);
        assert_eq!(
            (h.m_iso, h.m_t, h.m_m, h.m_h, h.stabilized),
            (None, None, None, None, false)
        );
        assert!(run_process(5, 0, 11).is_err());
    }

    #[test]
    fn incremental_flags_match_from_scratch_small() {
        for seed in 0..5 {
            let n = 8;
            let table = BirthTimeTable::new(n, seed);
            let trace = run_process_with_table(&table, table.len() as u64).unwrap();
            for r in &trace.events {
                let c = table.complex_at_m(r.step as usize);
                let (b0, b1) = betti_numbers(&c);
                assert_eq!(r.beta1 as usize, b1);
                assert_eq!(r.components as usize, b0 + 1);
                assert_eq!(r.contains_m, crate::obstructions::contains_m(&c));
            }
            assert!(trace.events.last().unwrap().hom_connected);
        }
    }

    #[test]
    fn lm_threshold_is_first_connected_step() {
        for seed in 0..4 {
            let table = BirthTimeTable::new(7, seed);
            let (m, p) = lm_threshold(&table).unwrap();
            let at = Complex::with_full_skeleton(table.faces_at_m(m as usize), 7).unwrap();
            let before = Complex::with_full_skeleton(table.faces_at_m(m as usize - 1), 7).unwrap();
            assert_eq!(betti_numbers(&at), (0, 0));
            assert_ne!(betti_numbers(&before), (0, 0));
            assert_eq!(p, table.nth_born(m as usize - 1).1);
        }
    }
}
