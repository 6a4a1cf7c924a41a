//! Relative Hasse diagrams and the measurements `h` and `d`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{hopcroft_karp, SimpleGraph};
use crate::vector_field::PrimitiveDvf;

/// Simplices that may not be used by any vector field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExclusionSet {
    simplices: BTreeSet<Simplex>,
}

impl ExclusionSet {
    pub fn new(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        ExclusionSet {
            simplices: simplices.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn union(&self, more: impl IntoIterator<Item = Simplex>) -> ExclusionSet {
        let mut s = self.simplices.clone();
        s.extend(more);
        ExclusionSet { simplices: s }
    }

    /// Fails with every member that is not a simplex of `k`.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let offenders: Vec<Simplex> = self
            .simplices
            .iter()
            .filter(|s| !k.contains(s))
            .cloned()
            .collect();
        if offenders.is_empty() {
            Ok(())
        } else {
            Err(Error::NotInComplex(offenders))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HasseMetrics {
    /// Number of edges.
    pub h: u64,
    /// Maximum node degree, 0 when there are no edges.
    pub d: u64,
}

/// The codimension-1 incidence graph on the simplices of `K` outside `Ω`.
///
/// Nodes are numbered in canonical simplex order (dimension, then
/// lexicographic), so every edge is `(lower, upper)` with `lower < upper`.
/// Edge `i` is the primitive vector field `(nodes[lower], nodes[upper])`.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    nodes: Vec<Simplex>,
    graph: SimpleGraph,
    down: Vec<Vec<u32>>,
    up: Vec<Vec<u32>>,
    index: BTreeMap<Simplex, u32>,
    edge_index: BTreeMap<(u32, u32), u32>,
}

impl HasseDiagram {
    pub fn build(k: &SimplicialComplex, omega: &ExclusionSet) -> Result<Self> {
        omega.validate(k)?;
        let nodes: Vec<Simplex> = k.iter().filter(|s| !omega.contains(s)).cloned().collect();
        let index: BTreeMap<Simplex, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let mut edges = Vec::new();
        let mut down = vec![Vec::new(); nodes.len()];
        let mut up = vec![Vec::new(); nodes.len()];
        for (j, s) in nodes.iter().enumerate() {
            let mut faces: Vec<u32> = s.facets().filter_map(|f| index.get(&f).copied()).collect();
            faces.sort_unstable();
            for &i in &faces {
                edges.push((i, j as u32));
                up[i as usize].push(j as u32);
            }
            down[j] = faces;
        }
        let graph = SimpleGraph::new(nodes.len(), edges)?;
        let edge_index = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        for u in &mut up {
            u.sort_unstable();
        }
        Ok(HasseDiagram {
            nodes,
            graph,
            down,
            up,
            index,
            edge_index,
        })
    }

    pub fn nodes(&self) -> &[Simplex] {
        &self.nodes
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        self.graph.edges()
    }

    pub fn node_index(&self, s: &Simplex) -> Option<u32> {
        self.index.get(s).copied()
    }

    /// Codimension-1 faces of node `v` that are nodes of the diagram.
    pub fn faces_of(&self, v: u32) -> &[u32] {
        &self.down[v as usize]
    }

    pub fn cofaces_of(&self, v: u32) -> &[u32] {
        &self.up[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.down[v as usize].len() + self.up[v as usize].len()
    }

    pub fn edge_index(&self, lower: u32, upper: u32) -> Option<u32> {
        self.edge_index.get(&(lower, upper)).copied()
    }

    /// Index of the edge matching `pair`, if both simplices are nodes.
    pub fn edge_of(&self, pair: &PrimitiveDvf) -> Option<u32> {
        self.edge_index(self.node_index(pair.sigma())?, self.node_index(pair.tau())?)
    }

    pub fn edge_pair(&self, edge: u32) -> PrimitiveDvf {
        let (a, b) = self.edges()[edge as usize];
        PrimitiveDvf::new_unchecked(self.nodes[a as usize].clone(), self.nodes[b as usize].clone())
    }

    pub fn metrics(&self) -> HasseMetrics {
        HasseMetrics {
            h: self.edges().len() as u64,
            d: (0..self.nodes.len() as u32)
                .map(|v| self.degree(v))
                .max()
                .unwrap_or(0) as u64,
        }
    }

    /// `true` for nodes of even dimension; every edge crosses the partition.
    pub fn parity_bipartition(&self) -> Vec<bool> {
        self.nodes.iter().map(|s| s.dim() % 2 == 0).collect()
    }

    /// Size of a maximum matching, i.e. one more than the dimension of the
    /// generalized Morse complex.
    pub fn max_matching_size(&self) -> usize {
        hopcroft_karp(&self.graph, &self.parity_bipartition())
    }

    /// Adjacency-list dump, one node per line: `<simplex>: <neighbour> ...`.
    pub fn adjacency_text(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut out = alloc::string::String::new();
        for (v, s) in self.nodes.iter().enumerate() {
            let _ = write!(out, "{s}:");
            for &w in self.down[v].iter().chain(self.up[v].iter()) {
                let _ = write!(out, " {}", self.nodes[w as usize]);
            }
            out.push('\n');
        }
        out
    }
}

/// Hasse metrics recomputed two ways: edge count against
/// `sum_k c_k (k + 1)`, and maximum degree against the largest degree of a
/// vertex or edge of `K` (degrees taken in `H(K)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationReport {
    pub h_direct: u64,
    pub h_from_f_vector: u64,
    pub d_direct: u64,
    pub d_low_dim: u64,
    /// Maximum degree of the Hasse diagram of the 1-skeleton as a complex
    /// of its own. Edges lose their cofaces there, so this can be smaller.
    pub d_one_skeleton_hasse: u64,
}

impl ObservationReport {
    pub fn holds(&self) -> bool {
        self.h_direct == self.h_from_f_vector && self.d_direct == self.d_low_dim
    }
}

pub fn verify_h_d_observation(k: &SimplicialComplex) -> Result<ObservationReport> {
    if k.is_empty() {
        return Err(Error::Domain("observation check needs a non-empty complex".into()));
    }
    let hasse = HasseDiagram::build(k, &ExclusionSet::empty())?;
    let direct = hasse.metrics();
    let d_low_dim = (0..hasse.nodes().len() as u32)
        .filter(|&v| hasse.nodes()[v as usize].dim() <= 1)
        .map(|v| hasse.degree(v) as u64)
        .max()
        .unwrap_or(0);
    let h_from_f_vector = k
        .f_vector()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(dim, &c)| c as u64 * (dim as u64 + 1))
        .sum();
    let skeleton = HasseDiagram::build(&k.skeleton(1), &ExclusionSet::empty())?.metrics();
    Ok(ObservationReport {
        h_direct: direct.h,
        h_from_f_vector,
        d_direct: direct.d,
        d_low_dim,
        d_one_skeleton_hasse: skeleton.d,
    })
}
