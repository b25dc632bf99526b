//! JSON shapes for homology reports, `M` copies, hitting times and the
//! single-complex analysis.

use homconn_core::homology::{homology_report, minimal_bad_support};
use homconn_core::obstructions::{
    check_minimal_support_properties, count_rooted_m_prime, find_m_copies, min_two_paths,
};
use homconn_core::{Complex, Edge, HittingTimes, HomologyReport, MCopy, SupportReport};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::format::sig6;

fn pairs(edges: &[Edge]) -> Vec<[u32; 2]> {
    edges.iter().map(|e| [e.u, e.v]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyJson {
    pub beta0: usize,
    pub beta1: usize,
    pub hom_connected: bool,
    pub witness_support: Vec<[u32; 2]>,
    pub odd_cycle: Vec<[u32; 2]>,
}

impl HomologyJson {
    pub fn new(c: &Complex, r: &HomologyReport) -> Self {
        let (witness_support, odd_cycle) = match &r.witness {
            Some((f, cycle)) => (pairs(&f.support(c)), pairs(cycle)),
            None => (Vec::new(), Vec::new()),
        };
        Self {
            beta0: r.betti0,
            beta1: r.betti1,
            hom_connected: r.hom_connected,
            witness_support,
            odd_cycle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCopyJson {
    pub face: [u32; 3],
    pub apex: u32,
    pub path: Vec<u32>,
}

impl From<&MCopy> for MCopyJson {
    fn from(m: &MCopy) -> Self {
        Self {
            face: m.face.vertices(),
            apex: m.apex,
            path: m.witness_path.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingTimesJson {
    pub n: u32,
    pub seed: u64,
    pub m_cap: u64,
    pub m_iso: Option<u64>,
    #[serde(rename = "m_T")]
    pub m_t: Option<u64>,
    #[serde(rename = "m_lastM")]
    pub m_last_m: Option<u64>,
    #[serde(rename = "m_M")]
    pub m_m: Option<u64>,
    #[serde(rename = "m_H")]
    pub m_h: Option<u64>,
    pub p_iso: Option<f64>,
    #[serde(rename = "p_T")]
    pub p_t: Option<f64>,
    #[serde(rename = "p_M")]
    pub p_m: Option<f64>,
    pub stabilized: bool,
}

impl From<&HittingTimes> for HittingTimesJson {
    fn from(h: &HittingTimes) -> Self {
        Self {
            n: h.n,
            seed: h.seed,
            m_cap: h.m_cap,
            m_iso: h.m_iso,
            m_t: h.m_t,
            m_last_m: h.m_last_m,
            m_m: h.m_m,
            m_h: h.m_h,
            p_iso: h.p_iso.map(sig6),
            p_t: h.p_t.map(sig6),
            p_m: h.p_m.map(sig6),
            stabilized: h.stabilized,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalSupportJson {
    pub size: usize,
    pub support: Vec<[u32; 2]>,
    pub properties: SupportReport,
}

/// Everything `homconn analyze` reports about one complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: u32,
    pub faces: usize,
    pub edges: usize,
    pub components: usize,
    #[serde(flatten)]
    pub homology: HomologyJson,
    pub isolated: usize,
    #[serde(rename = "M_copies")]
    pub m_copies: usize,
    #[serde(rename = "M_copy_list")]
    pub m_copy_list: Vec<MCopyJson>,
    #[serde(rename = "rooted_M_prime")]
    pub rooted_m_prime: usize,
    pub min_two_paths: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimal_bad_support: Option<MinimalSupportJson>,
}

/// Analyzes `c`; with `min_support = Some(k_max)` also searches for a
/// smallest bad support of size at most `k_max`.
pub fn analyze(c: &Complex, min_support: Option<usize>) -> Result<AnalyzeReport> {
    let copies = find_m_copies(c);
    let minimal = match min_support {
        Some(k_max) => match minimal_bad_support(c, k_max)? {
            Some((f, size)) => {
                let support = f.support(c);
                let endpoints: Vec<_> = support.iter().map(Edge::endpoints).collect();
                Some(MinimalSupportJson {
                    size,
                    support: pairs(&support),
                    properties: check_minimal_support_properties(c, &endpoints)?,
                })
            }
            None => None,
        },
        None => None,
    };
    Ok(AnalyzeReport {
        n: c.n(),
        faces: c.num_faces(),
        edges: c.num_edges(),
        components: c.connected_components().0,
        homology: HomologyJson::new(c, &homology_report(c)),
        isolated: c.count_isolated_vertices(),
        m_copies: copies.len(),
        m_copy_list: copies.iter().map(MCopyJson::from).collect(),
        rooted_m_prime: count_rooted_m_prime(c),
        min_two_paths: min_two_paths(c),
        minimal_bad_support: minimal,
    })
}
