//! Closed-form connectivity bounds for `GM` and `M`, and an experimental
//! probe for the conjectured higher bound.

use alloc::format;
use alloc::string::String;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::hasse::{ExclusionSet, HasseDiagram};
use crate::homology::{homological_connectivity, HomologicalConnectivity};
use crate::morse_complex::m_of;

/// `⌊(h − 1) / 2d⌋ − 1`, or `None` when `h = 0` or `d = 0`.
pub fn gm_connectivity_bound(h: u64, d: u64) -> Option<i64> {
    if h == 0 || d == 0 {
        return None;
    }
    Some(((h - 1) / (2 * d)) as i64 - 1)
}

/// `⌊k / 2⌋ − 1`: the connectivity forced by a `k`-simplex in `GM`.
pub fn grounded_bound(k: u64) -> i64 {
    (k / 2) as i64 - 1
}

/// `⌊k / r⌋ − 1` for a `(k, r)`-grounded flag complex.
pub fn grounded_bound_r(k: u64, r: u64) -> Option<i64> {
    (r > 0).then(|| (k / r) as i64 - 1)
}

/// `⌊(|E| − 1) / d⌋ − 1` for the Morse complex of a graph, or `None` when
/// there are no edges or `d = 0`.
pub fn graph_bound(edge_count: u64, d: u64) -> Option<i64> {
    if edge_count == 0 || d == 0 {
        return None;
    }
    Some(((edge_count - 1) / d) as i64 - 1)
}

/// Bound for `M(Γ, Ω)` of a graph in terms of its relative Hasse diagram.
/// When `d = 1` no two pairs can meet, so `M(Γ, Ω) = GM(Γ, Ω)`.
pub fn relative_graph_bound(h: u64, d: u64) -> Option<i64> {
    gm_connectivity_bound(h, d)
}

/// Plain-language reading of an `m`-connectivity statement.
pub fn gloss(bound: Option<i64>) -> String {
    match bound {
        None => "none".into(),
        Some(m) if m < -1 => "no claim".into(),
        Some(-1) => "non-empty".into(),
        Some(0) => "connected".into(),
        Some(1) => "simply connected".into(),
        Some(m) => format!("{m}-connected"),
    }
}

/// The two complexes excluded from the simply-connected descending link
/// argument, detected up to isolated vertices and relabeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    Triangle,
    TriangleBoundary,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::Triangle => "2-simplex",
            SpecialCase::TriangleBoundary => "boundary of 2-simplex",
        }
    }
}

pub fn special_case(k: &SimplicialComplex) -> Option<SpecialCase> {
    let mut f = k.f_vector();
    if f.len() < 2 {
        return None;
    }
    let touched: alloc::collections::BTreeSet<u32> = k
        .level(1)
        .iter()
        .flat_map(|e| e.vertices().iter().copied())
        .collect();
    f[0] = touched.len();
    match f.as_slice() {
        [3, 3, 1] => Some(SpecialCase::Triangle),
        [3, 3] => Some(SpecialCase::TriangleBoundary),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub dim: Option<usize>,
    pub omega_size: usize,
    pub h: u64,
    pub d: u64,
    /// Number of edges when `K` is a graph.
    pub edge_count: Option<u64>,
    pub max_matching: u64,
    /// `⌊(h − 1) / d⌋`, the dimension of a simplex `GM` must contain.
    pub guaranteed_simplex_dim: Option<i64>,
    pub bound_gm: Option<i64>,
    /// Connectivity from the largest simplex of `GM` (`(k, 2)`-grounding).
    pub bound_gm_grounded: Option<i64>,
    pub bound_m_graph: Option<i64>,
    /// Strongest bound proved for `M(K, Ω)` under the present hypotheses.
    pub bound_m: Option<i64>,
    pub m_empty: bool,
    pub connected_claim: bool,
    pub simply_connected_claim: bool,
    /// `d = 1`, so `M = GM`.
    pub m_equals_gm: bool,
    pub special_case: Option<SpecialCase>,
    /// A `(k, r)` grounding of `GM` from a maximum matching.
    pub grounding: Option<(u64, u64)>,
}

pub fn connectivity_report(k: &SimplicialComplex, omega: &ExclusionSet) -> Result<ConnectivityReport> {
    let hasse = HasseDiagram::build(k, omega)?;
    let metrics = hasse.metrics();
    let (h, d) = (metrics.h, metrics.d);
    let mm = hasse.max_matching_size() as u64;
    let is_graph = k.dim() == Some(1);
    let edge_count = is_graph.then(|| k.level(1).len() as u64);
    let bound_gm = gm_connectivity_bound(h, d);
    let bound_gm_grounded = (mm > 0).then(|| grounded_bound(mm - 1));
    let bound_m_graph = if is_graph {
        if omega.is_empty() {
            graph_bound(edge_count.unwrap(), d)
        } else {
            relative_graph_bound(h, d)
        }
    } else {
        None
    };
    let m_empty = h == 0;
    let general = if omega.is_empty() && !m_empty {
        Some(if mm >= 5 {
            1
        } else if mm >= 3 {
            0
        } else {
            -1
        })
    } else {
        None
    };
    let nonempty = (!m_empty).then_some(-1);
    let bound_m = [bound_m_graph, general, nonempty, (d == 1).then_some(bound_gm).flatten()]
        .into_iter()
        .flatten()
        .max()
        .filter(|_| !m_empty);
    Ok(ConnectivityReport {
        dim: k.dim(),
        omega_size: omega.len(),
        h,
        d,
        edge_count,
        max_matching: mm,
        guaranteed_simplex_dim: (d > 0 && h > 0).then(|| ((h - 1) / d) as i64),
        bound_gm,
        bound_gm_grounded,
        bound_m_graph,
        bound_m,
        m_empty,
        connected_claim: bound_m.is_some_and(|b| b >= 0),
        simply_connected_claim: bound_m.is_some_and(|b| b >= 1),
        m_equals_gm: d == 1,
        special_case: special_case(k),
        grounding: (mm > 0).then(|| (mm - 1, 2)),
    })
}

/// Outcome of testing `h >= 2m·d + 1 ⇒ M(K) is (m − 1)-connected` on one
/// complex. Vanishing homology is necessary for the conclusion, not
/// sufficient, so the probe can refute but never confirm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub m: u64,
    pub h: u64,
    pub d: u64,
    pub hypothesis: bool,
    /// Vanishing range of reduced homology of `M(K)` over both fields,
    /// measured only when the hypothesis holds.
    pub measured: Option<HomologicalConnectivity>,
    /// `Some(false)` is a counterexample.
    pub consistent: Option<bool>,
}

pub fn conjecture_probe(
    k: &SimplicialComplex,
    m: u64,
    simplex_budget: usize,
    homology_budget: usize,
) -> Result<ProbeReport> {
    let hasse = HasseDiagram::build(k, &ExclusionSet::empty())?;
    let metrics = hasse.metrics();
    let hypothesis = metrics.h >= 2 * m * metrics.d + 1;
    let (measured, consistent) = if hypothesis {
        let mc = m_of(&hasse, simplex_budget)?;
        let c = homological_connectivity(&mc.complex, homology_budget)?;
        (Some(c), Some(c.vanishes_through(m as i64 - 1)))
    } else {
        (None, None)
    };
    Ok(ProbeReport {
        m,
        h: metrics.h,
        d: metrics.d,
        hypothesis,
        measured,
        consistent,
    })
}
