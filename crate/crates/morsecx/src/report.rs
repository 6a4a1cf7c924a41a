//! JSON report schema. Field order is declaration order; maps are sorted.
//! All numbers are integers except the timings.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use morsecx_core::bounds::{gloss, ConnectivityReport, ProbeReport};
use morsecx_core::homology::HomologicalConnectivity;
use morsecx_core::morse_theory::{Level, LemmaReport, MorseLemmaCheck};
use morsecx_core::{BettiVector, HasseDiagram, PrimitiveDvf, Simplex, VCycle};

pub const TOOL: &str = "morsecx";

pub const HOMOTOPY_NOTE: &str =
    "connectivity is checked through reduced homology over GF(2) and Q only; simple connectivity is never certified";

#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    pub result: T,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// Named stage timings.
#[derive(Debug)]
pub struct Stopwatch {
    last: Instant,
    stages: BTreeMap<String, f64>,
}

impl Default for Stopwatch {
    fn default() -> Self {
        Stopwatch {
            last: Instant::now(),
            stages: BTreeMap::new(),
        }
    }
}

impl Stopwatch {
    pub fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        let ms = (now - self.last).as_secs_f64() * 1000.0;
        *self.stages.entry(stage.to_string()).or_default() += ms;
        self.last = now;
    }

    pub fn into_map(self) -> BTreeMap<String, f64> {
        self.stages
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn simplex(s: &Simplex) -> Vec<u32> {
    s.vertices().to_vec()
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct PairView {
    pub sigma: Vec<u32>,
    pub tau: Vec<u32>,
}

impl From<&PrimitiveDvf> for PairView {
    fn from(p: &PrimitiveDvf) -> Self {
        PairView {
            sigma: simplex(p.sigma()),
            tau: simplex(p.tau()),
        }
    }
}

#[derive(Serialize)]
pub struct HasseView {
    pub nodes: Vec<Vec<u32>>,
    pub edges: Vec<[u32; 2]>,
    pub h: u64,
    pub d: u64,
    pub max_matching: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<String>,
}

impl HasseView {
    pub fn new(hasse: &HasseDiagram, adjacency: bool) -> Self {
        let m = hasse.metrics();
        HasseView {
            nodes: hasse.nodes().iter().map(simplex).collect(),
            edges: hasse.edges().iter().map(|&(a, b)| [a, b]).collect(),
            h: m.h,
            d: m.d,
            max_matching: hasse.max_matching_size(),
            adjacency: adjacency.then(|| hasse.adjacency_text()),
        }
    }
}

/// Sidecar for a matching complex written as text: what each vertex means.
#[derive(Serialize)]
pub struct Sidecar {
    pub complex: &'static str,
    pub f_vector: Vec<usize>,
    pub vertex_dictionary: Vec<PairView>,
}

#[derive(Serialize)]
pub struct MatchingComplexView {
    #[serde(flatten)]
    pub sidecar: Sidecar,
    pub maximal_simplices: Vec<Vec<u32>>,
}

#[derive(Serialize)]
pub struct CycleView {
    pub length: usize,
    pub dim: usize,
    pub sigmas: Vec<Vec<u32>>,
    pub taus: Vec<Vec<u32>>,
}

impl From<&VCycle> for CycleView {
    fn from(c: &VCycle) -> Self {
        CycleView {
            length: c.len(),
            dim: c.dim(),
            sigmas: c.sigmas().iter().map(simplex).collect(),
            taus: c.taus().iter().map(simplex).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CyclesView {
    pub pairs: usize,
    pub phi: usize,
    pub cycles: Vec<CycleView>,
}

/// `-2` for the empty complex; `null` with `acyclic` when everything vanishes.
#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectivityView {
    pub homological_connectivity: Option<i64>,
    pub acyclic: bool,
}

impl From<HomologicalConnectivity> for ConnectivityView {
    fn from(c: HomologicalConnectivity) -> Self {
        match c {
            HomologicalConnectivity::Empty => ConnectivityView {
                homological_connectivity: Some(-2),
                acyclic: false,
            },
            HomologicalConnectivity::Through(m) => ConnectivityView {
                homological_connectivity: Some(m),
                acyclic: false,
            },
            HomologicalConnectivity::Acyclic => ConnectivityView {
                homological_connectivity: None,
                acyclic: true,
            },
        }
    }
}

#[derive(Serialize)]
pub struct BettiView {
    pub field: &'static str,
    pub f_vector: Vec<usize>,
    pub reduced_betti: Vec<usize>,
    pub euler: i64,
    #[serde(flatten)]
    pub connectivity: ConnectivityView,
    pub note: &'static str,
}

impl BettiView {
    pub fn new(b: &BettiVector, f_vector: Vec<usize>, euler: i64) -> Self {
        BettiView {
            field: b.field.name(),
            f_vector,
            reduced_betti: b.reduced_betti.clone(),
            euler,
            connectivity: HomologicalConnectivity::from_betti(&[b]).into(),
            note: HOMOTOPY_NOTE,
        }
    }
}

#[derive(Serialize)]
pub struct BoundView {
    pub value: Option<i64>,
    pub reading: String,
}

impl From<Option<i64>> for BoundView {
    fn from(value: Option<i64>) -> Self {
        BoundView {
            value,
            reading: gloss(value),
        }
    }
}

#[derive(Serialize)]
pub struct BoundsView {
    pub dim: Option<usize>,
    pub omega_size: usize,
    pub h: u64,
    pub d: u64,
    pub edge_count: Option<u64>,
    pub max_matching: u64,
    pub guaranteed_simplex_dim: Option<i64>,
    pub bound_gm: BoundView,
    pub bound_gm_grounded: BoundView,
    pub bound_m_graph: BoundView,
    pub bound_m: BoundView,
    pub m_empty: bool,
    pub connected_claim: bool,
    pub simply_connected_claim: bool,
    pub m_equals_gm: bool,
    pub special_case: Option<&'static str>,
    pub grounding: Option<[u64; 2]>,
    pub note: &'static str,
}

impl From<&ConnectivityReport> for BoundsView {
    fn from(r: &ConnectivityReport) -> Self {
        BoundsView {
            dim: r.dim,
            omega_size: r.omega_size,
            h: r.h,
            d: r.d,
            edge_count: r.edge_count,
            max_matching: r.max_matching,
            guaranteed_simplex_dim: r.guaranteed_simplex_dim,
            bound_gm: r.bound_gm.into(),
            bound_gm_grounded: r.bound_gm_grounded.into(),
            bound_m_graph: r.bound_m_graph.into(),
            bound_m: r.bound_m.into(),
            m_empty: r.m_empty,
            connected_claim: r.connected_claim,
            simply_connected_claim: r.simply_connected_claim,
            m_equals_gm: r.m_equals_gm,
            special_case: r.special_case.map(|s| s.name()),
            grounding: r.grounding.map(|(k, r)| [k, r]),
            note: HOMOTOPY_NOTE,
        }
    }
}

#[derive(Serialize)]
pub struct LemmaView {
    pub gm_vertices: usize,
    pub passed: bool,
    pub vertices_swept: usize,
    pub case1_count: usize,
    pub case2_count: usize,
    pub cone_certificates: usize,
    pub sphere_checks: usize,
    pub iso_checks: usize,
    pub one_cycle_checks: usize,
    pub join_checks: usize,
    pub join_checks_skipped: usize,
    pub monotonicity_checks: usize,
    pub coface_nonempty_checks: usize,
    pub coface_witness_p0: usize,
    pub coface_witness_p_positive: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morse_lemma: Option<Vec<MorseLemmaView>>,
}

impl LemmaView {
    pub fn new(gm_vertices: usize, r: &LemmaReport, morse_lemma: Option<Vec<MorseLemmaView>>) -> Self {
        LemmaView {
            gm_vertices,
            passed: r.passed() && morse_lemma.iter().flatten().all(|m| m.holds),
            vertices_swept: r.vertices_swept,
            case1_count: r.case1_count,
            case2_count: r.case2_count,
            cone_certificates: r.cone_certificates,
            sphere_checks: r.sphere_checks,
            iso_checks: r.iso_checks,
            one_cycle_checks: r.one_cycle_checks,
            join_checks: r.join_checks,
            join_checks_skipped: r.join_checks_skipped,
            monotonicity_checks: r.monotonicity_checks,
            coface_nonempty_checks: r.coface_nonempty_checks,
            coface_witness_p0: r.coface_witness_p0,
            coface_witness_p_positive: r.coface_witness_p_positive,
            failures: r.failures.clone(),
            morse_lemma,
        }
    }
}

fn level(l: Level) -> Option<u64> {
    match l {
        Level::Finite(t) => Some(t),
        Level::Infinite => None,
    }
}

/// A sublevel step `t → s`; `null` stands for `∞`.
#[derive(Serialize)]
pub struct MorseLemmaView {
    pub from: Option<u64>,
    pub to: Option<u64>,
    pub links_crossed: usize,
    pub link_connectivity: Option<i64>,
    pub betti_from: Vec<usize>,
    pub betti_to: Vec<usize>,
    pub euler_holds: bool,
    pub prefix_equal: bool,
    pub surjective: bool,
    pub holds: bool,
}

impl From<&MorseLemmaCheck> for MorseLemmaView {
    fn from(c: &MorseLemmaCheck) -> Self {
        MorseLemmaView {
            from: level(c.t),
            to: level(c.s),
            links_crossed: c.links,
            link_connectivity: c.link_connectivity,
            betti_from: c.betti_t.reduced_betti.clone(),
            betti_to: c.betti_s.reduced_betti.clone(),
            euler_holds: c.euler_holds,
            prefix_equal: c.prefix_equal,
            surjective: c.surjective,
            holds: c.holds(),
        }
    }
}

#[derive(Serialize)]
pub struct ProbeView {
    pub m: u64,
    pub h: u64,
    pub d: u64,
    pub hypothesis: bool,
    pub measured: Option<ConnectivityView>,
    pub consistent: Option<bool>,
    pub note: &'static str,
}

impl From<&ProbeReport> for ProbeView {
    fn from(p: &ProbeReport) -> Self {
        ProbeView {
            m: p.m,
            h: p.h,
            d: p.d,
            hypothesis: p.hypothesis,
            measured: p.measured.map(Into::into),
            consistent: p.consistent,
            note: HOMOTOPY_NOTE,
        }
    }
}
