//! Matching complexes, generalized Morse complexes and Morse complexes.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{for_each_matching, AllMatchings, MatchingFilter, SimpleGraph};
use crate::hasse::{ExclusionSet, HasseDiagram};
use crate::vector_field::{HasseFlow, PrimitiveDvf};

/// A matching complex together with the meaning of its vertices.
///
/// Vertex `i` of `complex` is the graph edge `vertex_dictionary[i]`; the
/// dictionary covers every edge, so isolated vertices are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingComplexResult<L> {
    pub complex: SimplicialComplex,
    pub vertex_dictionary: Vec<L>,
    /// Simplex counts per dimension, as spent against the budget.
    pub budget_stats: Vec<usize>,
}

impl<L> MatchingComplexResult<L> {
    pub fn map_labels<M>(self, f: impl FnMut(L) -> M) -> MatchingComplexResult<M> {
        MatchingComplexResult {
            complex: self.complex,
            vertex_dictionary: self.vertex_dictionary.into_iter().map(f).collect(),
            budget_stats: self.budget_stats,
        }
    }
}

/// Rejects matchings that contain a V-cycle.
///
/// Adding a pair can only create cycles through its lower simplex, so each
/// admission runs one reachability search from that node.
pub struct AcyclicFilter<'a> {
    flow: HasseFlow<'a>,
}

impl<'a> AcyclicFilter<'a> {
    pub fn new(hasse: &'a HasseDiagram) -> Self {
        AcyclicFilter {
            flow: HasseFlow::new(hasse),
        }
    }
}

impl MatchingFilter for AcyclicFilter<'_> {
    fn admit(&mut self, edge: usize) -> bool {
        let e = edge as u32;
        self.flow.push(e);
        let lower = self.flow.hasse().edges()[edge].0;
        if self.flow.has_cycle_through(lower) {
            self.flow.pop(e);
            false
        } else {
            true
        }
    }

    fn retract(&mut self, edge: usize) {
        self.flow.pop(edge as u32);
    }
}

/// Matchings of `graph` accepted by `filter` whose smallest edge lies in
/// `first_edges`, as simplices on edge indices, in enumeration order.
pub fn collect_matchings<F: MatchingFilter + ?Sized>(
    graph: &SimpleGraph,
    first_edges: Range<usize>,
    filter: &mut F,
    budget: usize,
) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for_each_matching(graph, first_edges, filter, &mut |m: &[u32]| {
        if out.len() >= budget {
            return Err(Error::Budget {
                resource: "simplex",
                limit: budget,
                reached: out.len() + 1,
            });
        }
        out.push(Simplex::from_sorted(m.to_vec()));
        Ok(())
    })?;
    Ok(out)
}

/// Assembles a matching complex from its simplices (in any order).
pub fn assemble<L>(simplices: Vec<Simplex>, vertex_dictionary: Vec<L>) -> MatchingComplexResult<L> {
    let complex = SimplicialComplex::from_closed_unchecked(simplices);
    let budget_stats = complex.f_vector();
    MatchingComplexResult {
        complex,
        vertex_dictionary,
        budget_stats,
    }
}

/// The complex of all matchings of `graph`.
pub fn matching_complex(
    graph: &SimpleGraph,
    budget: usize,
) -> Result<MatchingComplexResult<(u32, u32)>> {
    let simplices = collect_matchings(graph, 0..graph.edges().len(), &mut AllMatchings, budget)?;
    Ok(assemble(simplices, graph.edges().to_vec()))
}

/// `GM(K, Ω)`: all discrete vector fields on `K` avoiding `Ω`.
pub fn generalized_morse_complex(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    budget: usize,
) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    let hasse = HasseDiagram::build(k, omega)?;
    gm_of(&hasse, budget)
}

pub fn gm_of(hasse: &HasseDiagram, budget: usize) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    let simplices = collect_matchings(hasse.graph(), 0..hasse.edges().len(), &mut AllMatchings, budget)?;
    Ok(assemble(simplices, dictionary(hasse)))
}

/// `M(K, Ω)`: the acyclic discrete vector fields on `K` avoiding `Ω`.
pub fn morse_complex(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    budget: usize,
) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    let hasse = HasseDiagram::build(k, omega)?;
    m_of(&hasse, budget)
}

pub fn m_of(hasse: &HasseDiagram, budget: usize) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    let mut filter = AcyclicFilter::new(hasse);
    let simplices = collect_matchings(hasse.graph(), 0..hasse.edges().len(), &mut filter, budget)?;
    Ok(assemble(simplices, dictionary(hasse)))
}

pub fn dictionary(hasse: &HasseDiagram) -> Vec<PrimitiveDvf> {
    (0..hasse.edges().len() as u32).map(|e| hasse.edge_pair(e)).collect()
}

/// The 1-skeleton of `GM`: primitive fields joined when compatible.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    pub nodes: Vec<PrimitiveDvf>,
    pub graph: SimpleGraph,
}

impl CompatibilityGraph {
    pub fn from_hasse(hasse: &HasseDiagram) -> Self {
        let es = hasse.edges();
        let mut edges = Vec::new();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                let (a, b) = es[i];
                let (c, d) = es[j];
                if a != c && a != d && b != c && b != d {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        CompatibilityGraph {
            nodes: dictionary(hasse),
            graph: SimpleGraph::new(es.len(), edges).expect("indices are in range"),
        }
    }

    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        let key = (i.min(j), i.max(j));
        self.graph.edges().binary_search(&key).is_ok()
    }
}

/// A hexagon with `n` pendant edges at each of its six vertices.
///
/// Nodes `0..6` form the hexagon; pendant leaves follow.
pub fn hexagon_with_pendants(n: u32) -> SimpleGraph {
    let mut edges: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let mut next = 6;
    for v in 0..6 {
        for _ in 0..n {
            edges.push((v, next));
            next += 1;
        }
    }
    SimpleGraph::new(next as usize, edges).expect("valid fixture")
}

/// Counted measurements of [`hexagon_with_pendants`] next to the values
/// `6n - 6` and `n + 2` one may find quoted for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonFixtureReport {
    pub n: u32,
    pub h_counted: u64,
    pub d_counted: u64,
    pub h_quoted: i64,
    pub d_quoted: u64,
    /// `h >= 4d + 1` with the counted values.
    pub simply_connected_hypothesis: bool,
    /// Number of 3-matchings using only hexagon edges.
    pub hexagon_matchings: usize,
    /// Every such matching covers all six hexagon nodes, so no edge can be
    /// added to it and its coface set in the matching complex is empty.
    pub hexagon_matchings_maximal: bool,
}

pub fn hexagon_fixture_report(n: u32) -> HexagonFixtureReport {
    let g = hexagon_with_pendants(n);
    let h = g.edges().len() as u64;
    let d = g.max_degree() as u64;
    let hex: Vec<usize> = (0..g.edges().len())
        .filter(|&i| {
            let (a, b) = g.edges()[i];
            a < 6 && b < 6
        })
        .collect();
    let mut matchings = Vec::new();
    for a in 0..hex.len() {
        for b in a + 1..hex.len() {
            for c in b + 1..hex.len() {
                let m = [hex[a], hex[b], hex[c]];
                let mut touched = vec![false; g.num_nodes()];
                let ok = m.iter().all(|&e| {
                    let (x, y) = g.edges()[e];
                    let fresh = !touched[x as usize] && !touched[y as usize];
                    touched[x as usize] = true;
                    touched[y as usize] = true;
                    fresh
                });
                if ok {
                    matchings.push(m);
                }
            }
        }
    }
    let maximal = matchings.iter().all(|m| {
        let mut covered = vec![false; g.num_nodes()];
        for &e in m {
            let (x, y) = g.edges()[e];
            covered[x as usize] = true;
            covered[y as usize] = true;
        }
        g.edges()
            .iter()
            .all(|&(x, y)| covered[x as usize] || covered[y as usize])
    });
    HexagonFixtureReport {
        n,
        h_counted: h,
        d_counted: d,
        h_quoted: 6 * n as i64 - 6,
        d_quoted: n as u64 + 2,
        simply_connected_hypothesis: h >= 4 * d + 1,
        hexagon_matchings: matchings.len(),
        hexagon_matchings_maximal: maximal,
    }
}
