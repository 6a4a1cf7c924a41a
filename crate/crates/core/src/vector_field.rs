//! Discrete vector fields, V-paths and V-cycles, and the correspondence
//! with Forman discrete Morse functions.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hasse::{ExclusionSet, HasseDiagram};

/// Default cap on the number of simple cycles reported for one field.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

/// A pair `(σ, τ)` with `σ` a codimension-1 face of `τ`; an edge of the
/// Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveDvf {
    sigma: Simplex,
    tau: Simplex,
}

impl PrimitiveDvf {
    pub fn new(sigma: Simplex, tau: Simplex) -> Result<Self> {
        if tau.len() != sigma.len() + 1 || !sigma.is_face_of(&tau) {
            return Err(Error::Malformed(format!(
                "{sigma} is not a codimension-1 face of {tau}"
            )));
        }
        Ok(PrimitiveDvf { sigma, tau })
    }

    pub(crate) fn new_unchecked(sigma: Simplex, tau: Simplex) -> Self {
        debug_assert!(tau.len() == sigma.len() + 1 && sigma.is_face_of(&tau));
        PrimitiveDvf { sigma, tau }
    }

    pub fn sigma(&self) -> &Simplex {
        &self.sigma
    }

    pub fn tau(&self) -> &Simplex {
        &self.tau
    }

    /// Dimension `p` of `σ`.
    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }
}

/// Two primitive fields are compatible when they share no simplex.
pub fn compatible(a: &PrimitiveDvf, b: &PrimitiveDvf) -> bool {
    a.sigma != b.sigma && a.sigma != b.tau && a.tau != b.sigma && a.tau != b.tau
}

/// A set of pairwise compatible primitive fields (a matching on the
/// Hasse diagram). Pairs are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct DiscreteVectorField {
    pairs: Vec<PrimitiveDvf>,
    used: BTreeMap<Simplex, usize>,
}

impl DiscreteVectorField {
    pub fn new(pairs: impl IntoIterator<Item = PrimitiveDvf>) -> Result<Self> {
        let mut pairs: Vec<PrimitiveDvf> = pairs.into_iter().collect();
        pairs.sort();
        let mut used = BTreeMap::new();
        for (i, p) in pairs.iter().enumerate() {
            for s in [&p.sigma, &p.tau] {
                if used.insert(s.clone(), i).is_some() {
                    return Err(Error::Malformed(format!("simplex {s} is used by two pairs")));
                }
            }
        }
        Ok(DiscreteVectorField { pairs, used })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[PrimitiveDvf] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The pair containing `s`, if any.
    pub fn pair_of(&self, s: &Simplex) -> Option<&PrimitiveDvf> {
        self.used.get(s).map(|&i| &self.pairs[i])
    }

    /// `V(σ)`: the coface `σ` is matched with, when `σ` is the lower end.
    pub fn image(&self, sigma: &Simplex) -> Option<&Simplex> {
        self.pair_of(sigma)
            .filter(|p| &p.sigma == sigma)
            .map(|p| &p.tau)
    }

    /// Every simplex used by some pair.
    pub fn used_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.used.keys()
    }

    /// Dimensions `p` that occur as `dim σ`.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pairs.iter().map(PrimitiveDvf::dim).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Sub-field consisting of the pairs selected by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize, &PrimitiveDvf) -> bool) -> Self {
        let pairs: Vec<PrimitiveDvf> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, p)| keep(*i, p))
            .map(|(_, p)| p.clone())
            .collect();
        DiscreteVectorField::new(pairs).expect("a subset of a matching is a matching")
    }

    /// Checks that every pair lives on `k` and avoids `omega`.
    pub fn check_on(&self, k: &SimplicialComplex, omega: &ExclusionSet) -> Result<()> {
        let missing: Vec<Simplex> = self
            .used
            .keys()
            .filter(|s| !k.contains(s))
            .cloned()
            .collect();
        if !missing.is_empty() {
            return Err(Error::NotInComplex(missing));
        }
        if let Some(s) = self.used.keys().find(|s| omega.contains(s)) {
            return Err(Error::Domain(format!("pair uses excluded simplex {s}")));
        }
        Ok(())
    }
}

/// Directed graph whose closed walks are the `p`-dimensional V-cycles.
///
/// Nodes are the `p`-simplices matched upward by `V`, sorted; there is an
/// arc `σ → σ'` when `σ' ≠ σ` is a face of `V(σ)` that is itself matched
/// upward. A V-path may additionally end at one unmatched face, which is
/// not represented here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowDigraph {
    pub p: usize,
    nodes: Vec<Simplex>,
    arcs: Vec<Vec<usize>>,
}

impl FlowDigraph {
    pub fn nodes(&self) -> &[Simplex] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    pub fn is_dag(&self) -> bool {
        digraph::is_acyclic(&self.arcs)
    }
}

pub fn flow_digraph(v: &DiscreteVectorField, p: usize) -> FlowDigraph {
    let nodes: Vec<Simplex> = v
        .pairs
        .iter()
        .filter(|q| q.dim() == p)
        .map(|q| q.sigma.clone())
        .collect();
    let mut sorted = nodes;
    sorted.sort();
    let arcs = sorted
        .iter()
        .map(|s| {
            let tau = v.image(s).expect("node is matched upward");
            let mut out: Vec<usize> = tau
                .facets()
                .filter(|f| f != s)
                .filter_map(|f| sorted.binary_search(&f).ok())
                .collect();
            out.sort_unstable();
            out
        })
        .collect();
    FlowDigraph {
        p,
        nodes: sorted,
        arcs,
    }
}

/// A simple V-cycle `σ_0, τ_0, σ_1, ..., τ_{m-1}, σ_0`, rotated so that
/// the lexicographically least `σ` comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VCycle {
    sigmas: Vec<Simplex>,
    taus: Vec<Simplex>,
}

impl VCycle {
    pub fn sigmas(&self) -> &[Simplex] {
        &self.sigmas
    }

    pub fn taus(&self) -> &[Simplex] {
        &self.taus
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.sigmas[0].dim()
    }

    pub fn uses(&self, pair: &PrimitiveDvf) -> bool {
        self.sigmas
            .iter()
            .zip(&self.taus)
            .any(|(s, t)| s == &pair.sigma && t == &pair.tau)
    }
}

/// All simple V-cycles, each once up to rotation, ordered by dimension and
/// then by their `σ` sequence.
pub fn simple_cycles(v: &DiscreteVectorField, budget: usize) -> Result<Vec<VCycle>> {
    let mut out = Vec::new();
    for p in v.dims() {
        let g = flow_digraph(v, p);
        digraph::simple_cycles(&g.arcs, &mut |cycle: &[usize]| {
            if out.len() >= budget {
                return Err(Error::Budget {
                    resource: "cycle",
                    limit: budget,
                    reached: out.len() + 1,
                });
            }
            let sigmas: Vec<Simplex> = cycle.iter().map(|&i| g.nodes[i].clone()).collect();
            let taus = sigmas.iter().map(|s| v.image(s).unwrap().clone()).collect();
            out.push(VCycle { sigmas, taus });
            Ok(())
        })?;
    }
    out.sort();
    Ok(out)
}

/// `φ(V)`: the number of simple V-cycles.
pub fn phi(v: &DiscreteVectorField, budget: usize) -> Result<usize> {
    Ok(simple_cycles(v, budget)?.len())
}

pub fn is_acyclic(v: &DiscreteVectorField) -> bool {
    v.dims().into_iter().all(|p| flow_digraph(v, p).is_dag())
}

/// Values of a real function on the simplices of a complex.
pub type SimplexFunction = BTreeMap<Simplex, f64>;

/// Gradient of a Forman discrete Morse function: all `(σ, τ)` with
/// `f(σ) >= f(τ)`. Both Forman conditions are checked first.
pub fn gradient_vector_field(
    k: &SimplicialComplex,
    f: &SimplexFunction,
) -> Result<DiscreteVectorField> {
    let extra: Vec<Simplex> = f.keys().filter(|s| !k.contains(s)).cloned().collect();
    if !extra.is_empty() {
        return Err(Error::NotInComplex(extra));
    }
    let value = |s: &Simplex| -> Result<f64> {
        match f.get(s) {
            Some(x) if x.is_nan() => Err(Error::NotForman {
                simplex: s.clone(),
                reason: "value is NaN".into(),
            }),
            Some(&x) => Ok(x),
            None => Err(Error::NotForman {
                simplex: s.clone(),
                reason: "no value assigned".into(),
            }),
        }
    };
    let mut descents_up: BTreeMap<&Simplex, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for tau in k.iter().filter(|s| s.dim() > 0) {
        let ft = value(tau)?;
        let mut down = 0;
        for sigma in tau.facets() {
            let fs = value(&sigma)?;
            if fs >= ft {
                down += 1;
                let slot = k.position(&sigma).unwrap();
                *descents_up.entry(&k.level(sigma.dim())[slot]).or_default() += 1;
                pairs.push(PrimitiveDvf::new_unchecked(sigma, tau.clone()));
            }
        }
        if down > 1 {
            return Err(Error::NotForman {
                simplex: tau.clone(),
                reason: format!("{down} faces with value >= f({tau})"),
            });
        }
    }
    for s in k.iter() {
        value(s)?;
    }
    if let Some((s, n)) = descents_up.iter().find(|(_, &n)| n > 1) {
        return Err(Error::NotForman {
            simplex: (*s).clone(),
            reason: format!("{n} cofaces with value <= f({s})"),
        });
    }
    DiscreteVectorField::new(pairs).map_err(|e| Error::NotForman {
        simplex: Simplex::vertex(0),
        reason: format!("gradient is not a matching: {e}"),
    })
}

/// A Forman function whose gradient is exactly `v`.
///
/// Values are positions in a topological order of the Hasse diagram of `k`
/// with every face relation pointing upward except the pairs of `v`, which
/// point downward. Ties are broken by canonical simplex order.
pub fn forman_function_from_acyclic(
    k: &SimplicialComplex,
    v: &DiscreteVectorField,
) -> Result<SimplexFunction> {
    v.check_on(k, &ExclusionSet::empty())?;
    if !is_acyclic(v) {
        return Err(Error::Domain("vector field has a V-cycle".into()));
    }
    let all: Vec<&Simplex> = k.iter().collect();
    let n = all.len();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (j, tau) in all.iter().enumerate() {
        for sigma in tau.facets() {
            let i = k.global_index(&sigma).unwrap();
            let (a, b) = if v.image(&sigma) == Some(*tau) { (j, i) } else { (i, j) };
            out_arcs[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut values = SimplexFunction::new();
    let mut pos = 0usize;
    while let Some(Reverse(i)) = ready.pop() {
        values.insert(all[i].clone(), pos as f64);
        pos += 1;
        for &j in &out_arcs[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    if pos != n {
        return Err(Error::Domain("modified Hasse diagram has a directed cycle".into()));
    }
    Ok(values)
}

/// Vector fields given as edge indices into a fixed Hasse diagram.
///
/// Keeps `V(σ)` for every lower node, so adding or removing a pair and
/// asking whether a cycle passes through a node are cheap.
#[derive(Clone, Debug)]
pub struct HasseFlow<'a> {
    hasse: &'a HasseDiagram,
    up: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

const NONE: u32 = u32::MAX;

impl<'a> HasseFlow<'a> {
    pub fn new(hasse: &'a HasseDiagram) -> Self {
        let n = hasse.nodes().len();
        HasseFlow {
            hasse,
            up: vec![NONE; n],
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    pub fn hasse(&self) -> &'a HasseDiagram {
        self.hasse
    }

    pub fn push(&mut self, edge: u32) {
        let (lo, hi) = self.hasse.edges()[edge as usize];
        debug_assert_eq!(self.up[lo as usize], NONE);
        self.up[lo as usize] = hi;
    }

    pub fn pop(&mut self, edge: u32) {
        let (lo, _) = self.hasse.edges()[edge as usize];
        self.up[lo as usize] = NONE;
    }

    pub fn load(&mut self, edges: &[u32]) {
        for &e in edges {
            self.push(e);
        }
    }

    pub fn unload(&mut self, edges: &[u32]) {
        for &e in edges {
            self.pop(e);
        }
    }

    fn successors(&self, lower: u32) -> impl Iterator<Item = u32> + '_ {
        let tau = self.up[lower as usize];
        self.hasse
            .faces_of(tau)
            .iter()
            .copied()
            .filter(move |&f| f != lower && self.up[f as usize] != NONE)
    }

    /// Whether some V-cycle passes through the lower node `start`.
    pub fn has_cycle_through(&mut self, start: u32) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let mut stack = vec![start];
        self.stamp[start as usize] = self.epoch;
        while let Some(x) = stack.pop() {
            let next: Vec<u32> = self.successors(x).collect();
            for y in next {
                if y == start {
                    return true;
                }
                if self.stamp[y as usize] != self.epoch {
                    self.stamp[y as usize] = self.epoch;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Simple cycles of the field `edges` (which must not already be
    /// loaded), each as edge indices in cycle order starting from the
    /// smallest lower node.
    pub fn cycles(&mut self, edges: &[u32], budget: usize) -> Result<Vec<Vec<u32>>> {
        self.load(edges);
        let mut lowers: Vec<u32> = edges
            .iter()
            .map(|&e| self.hasse.edges()[e as usize].0)
            .collect();
        lowers.sort_unstable();
        let adj: Vec<Vec<usize>> = lowers
            .iter()
            .map(|&l| {
                let mut a: Vec<usize> = self
                    .successors(l)
                    .map(|s| lowers.binary_search(&s).unwrap())
                    .collect();
                a.sort_unstable();
                a
            })
            .collect();
        let mut out = Vec::new();
        let r = digraph::simple_cycles(&adj, &mut |cyc: &[usize]| {
            if out.len() >= budget {
                return Err(Error::Budget {
                    resource: "cycle",
                    limit: budget,
                    reached: out.len() + 1,
                });
            }
            out.push(
                cyc.iter()
                    .map(|&i| {
                        let lo = lowers[i];
                        self.hasse.edge_index(lo, self.up[lo as usize]).unwrap()
                    })
                    .collect(),
            );
            Ok(())
        });
        self.unload(edges);
        r?;
        Ok(out)
    }

    /// `φ` of the field `edges`.
    pub fn phi(&mut self, edges: &[u32], budget: usize) -> Result<usize> {
        Ok(self.cycles(edges, budget)?.len())
    }
}

/// Plain directed-graph algorithms on adjacency lists.
pub mod digraph {
    use alloc::vec;
    use alloc::vec::Vec;

    use crate::error::Result;

    /// Kahn's algorithm.
    pub fn is_acyclic(adj: &[Vec<usize>]) -> bool {
        let n = adj.len();
        let mut indeg = vec![0usize; n];
        for out in adj {
            for &w in out {
                indeg[w] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        seen == n
    }

    /// Johnson's enumeration of elementary circuits. Each circuit is
    /// reported once, starting at its smallest node. Self-loops count as
    /// circuits of length one.
    pub fn simple_cycles(
        adj: &[Vec<usize>],
        report: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let n = adj.len();
        let mut blocked = vec![false; n];
        let mut b_lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut stack = Vec::new();

        fn unblock(u: usize, blocked: &mut [bool], b_lists: &mut [Vec<usize>]) {
            blocked[u] = false;
            let waiting = core::mem::take(&mut b_lists[u]);
            for w in waiting {
                if blocked[w] {
                    unblock(w, blocked, b_lists);
                }
            }
        }

        #[allow(clippy::too_many_arguments)]
        fn circuit(
            v: usize,
            s: usize,
            adj: &[Vec<usize>],
            blocked: &mut [bool],
            b_lists: &mut [Vec<usize>],
            stack: &mut Vec<usize>,
            report: &mut dyn FnMut(&[usize]) -> Result<()>,
        ) -> Result<bool> {
            let mut found = false;
            stack.push(v);
            blocked[v] = true;
            for &w in adj[v].iter().filter(|&&w| w >= s) {
                if w == s {
                    report(stack)?;
                    found = true;
                } else if !blocked[w] && circuit(w, s, adj, blocked, b_lists, stack, report)? {
                    found = true;
                }
            }
            if found {
                unblock(v, blocked, b_lists);
            } else {
                for &w in adj[v].iter().filter(|&&w| w >= s) {
                    if !b_lists[w].contains(&v) {
                        b_lists[w].push(v);
                    }
                }
            }
            stack.pop();
            Ok(found)
        }

        for s in 0..n {
            for v in s..n {
                blocked[v] = false;
                b_lists[v].clear();
            }
            circuit(s, s, adj, &mut blocked, &mut b_lists, &mut stack, report)?;
        }
        Ok(())
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        fn count(adj: &[Vec<usize>]) -> usize {
            let mut n = 0;
            simple_cycles(adj, &mut |_| {
                n += 1;
                Ok(())
            })
            .unwrap();
            n
        }

        #[test]
        fn complete_digraph_on_three_nodes() {
            // 3 two-cycles and 2 three-cycles
            let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
            assert_eq!(count(&adj), 5);
            assert!(!is_acyclic(&adj));
        }

        #[test]
        fn dag_has_no_circuits() {
            let adj = vec![vec![1, 2], vec![2], vec![]];
            assert_eq!(count(&adj), 0);
            assert!(is_acyclic(&adj));
        }

        #[test]
        fn circuits_start_at_their_minimum() {
            let adj = vec![vec![], vec![2], vec![3], vec![1]];
            let mut seen = Vec::new();
            simple_cycles(&adj, &mut |c| {
                seen.push(c.to_vec());
                Ok(())
            })
            .unwrap();
            assert_eq!(seen, vec![vec![1, 2, 3]]);
        }
    }
}
