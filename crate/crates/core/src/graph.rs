//! Simple undirected graphs, bipartite maximum matching, and ordered
//! enumeration of all matchings.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A simple graph on nodes `0..n`. Edges are stored as `(a, b)` with
/// `a < b`, sorted and without duplicates; edge `i` is `edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut es = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Malformed(alloc::format!("loop at node {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::Domain(alloc::format!("edge ({a},{b}) outside 0..{n}")));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        Ok(SimpleGraph { n, edges: es })
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// A proper 2-colouring if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }
}

/// Size of a maximum matching of a bipartite graph, by Hopcroft–Karp.
///
/// `left[v]` says which side node `v` is on; every edge must join the two
/// sides.
pub fn hopcroft_karp(graph: &SimpleGraph, left: &[bool]) -> usize {
    const FREE: usize = usize::MAX;
    let n = graph.num_nodes();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in graph.edges() {
        let (l, r) = if left[a as usize] { (a, b) } else { (b, a) };
        debug_assert!(left[l as usize] && !left[r as usize]);
        adj[l as usize].push(r as usize);
    }
    let lefts: Vec<usize> = (0..n).filter(|&v| left[v]).collect();
    let mut mate = vec![FREE; n];
    let mut dist = vec![usize::MAX; n];
    let mut size = 0;

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        mate: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for i in 0..adj[u].len() {
            let r = adj[u][i];
            let m = mate[r];
            if m == usize::MAX || (dist[m] == dist[u] + 1 && augment(m, adj, mate, dist)) {
                mate[u] = r;
                mate[r] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    loop {
        // layered BFS from free left nodes
        let mut queue = VecDeque::new();
        for &u in &lefts {
            if mate[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &r in &adj[u] {
                let m = mate[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[u] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        for &u in &lefts {
            if mate[u] == FREE && augment(u, &adj, &mut mate, &mut dist) {
                size += 1;
            }
        }
    }
    size
}

/// Incremental admissibility test used while enumerating matchings.
///
/// `admit` is called with an edge whose endpoints are free; returning
/// `true` commits the edge, after which a matching `retract` follows.
/// Filters must be monotone: if a matching is rejected, so is every
/// superset of it.
pub trait MatchingFilter {
    fn admit(&mut self, edge: usize) -> bool;
    fn retract(&mut self, edge: usize);
}

/// Accepts every matching.
pub struct AllMatchings;

impl MatchingFilter for AllMatchings {
    fn admit(&mut self, _edge: usize) -> bool {
        true
    }
    fn retract(&mut self, _edge: usize) {}
}

/// Depth-first enumeration of the non-empty matchings of `graph` accepted
/// by `filter`, each reported once as its strictly increasing edge-index
/// list. Only matchings whose smallest edge lies in `first_edges` are
/// visited, so disjoint ranges split the work.
pub fn for_each_matching<F, V>(
    graph: &SimpleGraph,
    first_edges: core::ops::Range<usize>,
    filter: &mut F,
    visit: &mut V,
) -> Result<()>
where
    F: MatchingFilter + ?Sized,
    V: FnMut(&[u32]) -> Result<()>,
{
    let edges = graph.edges();
    let mut used = vec![0u64; graph.num_nodes().div_ceil(64)];
    let mut stack: Vec<u32> = Vec::new();

    fn is_free(used: &[u64], v: u32) -> bool {
        used[v as usize / 64] >> (v % 64) & 1 == 0
    }
    fn toggle(used: &mut [u64], v: u32) {
        used[v as usize / 64] ^= 1 << (v % 64);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F, V>(
        edges: &[(u32, u32)],
        from: usize,
        used: &mut [u64],
        stack: &mut Vec<u32>,
        filter: &mut F,
        visit: &mut V,
    ) -> Result<()>
    where
        F: MatchingFilter + ?Sized,
        V: FnMut(&[u32]) -> Result<()>,
    {
        for i in from..edges.len() {
            let (a, b) = edges[i];
            if !is_free(used, a) || !is_free(used, b) || !filter.admit(i) {
                continue;
            }
            toggle(used, a);
            toggle(used, b);
            stack.push(i as u32);
            let r = visit(stack).and_then(|_| descend(edges, i + 1, used, stack, filter, visit));
            stack.pop();
            toggle(used, a);
            toggle(used, b);
            filter.retract(i);
            r?;
        }
        Ok(())
    }

    let end = first_edges.end.min(edges.len());
    for first in first_edges.start..end {
        let (a, b) = edges[first];
        if !filter.admit(first) {
            continue;
        }
        toggle(&mut used, a);
        toggle(&mut used, b);
        stack.push(first as u32);
        let r = visit(&stack).and_then(|_| {
            descend(edges, first + 1, &mut used, &mut stack, filter, visit)
        });
        stack.pop();
        toggle(&mut used, a);
        toggle(&mut used, b);
        filter.retract(first);
        r?;
    }
    Ok(())
}
