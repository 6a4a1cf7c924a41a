//! Finite abstract simplicial complexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A non-empty set of vertices, stored strictly increasing.
///
/// The derived ordering is lexicographic on the vertex sequence. Complexes
/// order simplices by dimension first and lexicographically second, see
/// [`canonical_cmp`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from vertices in any order.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(Error::Malformed("empty simplex".into()));
        }
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate vertex {}", w[0])));
        }
        Ok(Simplex(vs))
    }

    /// Caller guarantees `vertices` is non-empty and strictly increasing.
    pub fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(alloc::vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension-1 faces, in order of the omitted vertex position.
    /// Vertices have none.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            let mut vs = self.0.clone();
            vs.remove(skip);
            Simplex(vs)
        })
    }

    /// All non-empty faces including `self`, in canonical order.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out: Vec<Simplex> = (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort_by(canonical_cmp);
        out
    }

    /// Non-strict face relation.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut vs: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex(vs)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Dimension first, then lexicographic.
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

/// A finite simplicial complex storing every simplex, grouped by dimension.
///
/// `levels[k]` holds the `k`-simplices sorted lexicographically. The empty
/// complex has no levels and no dimension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given vertex sequences.
    pub fn from_maximal<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let simplices = maximal
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_simplices(simplices))
    }

    /// Downward closure of the given simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(s);
        }
        for d in (1..by_dim.len()).rev() {
            let facets: Vec<Simplex> = by_dim[d].iter().flat_map(|s| s.facets()).collect();
            by_dim[d - 1].extend(facets);
        }
        SimplicialComplex {
            levels: by_dim.into_iter().map(|l| l.into_iter().collect()).collect(),
        }
    }

    /// Builds a complex from a family the caller knows is closed under faces.
    pub fn from_closed_unchecked(simplices: Vec<Simplex>) -> Self {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.dim();
            if levels.len() <= d {
                levels.resize_with(d + 1, Vec::new);
            }
            levels[d].push(s);
        }
        for l in &mut levels {
            l.sort_unstable();
            l.dedup();
        }
        let k = SimplicialComplex { levels };
        debug_assert!(k.is_downward_closed());
        k
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    /// `c_k` for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn level(&self, k: usize) -> &[Simplex] {
        self.levels.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Simplices in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.levels.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position(s).is_some()
    }

    /// Position of `s` within its dimension level.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.levels.get(s.dim())?.binary_search(s).ok()
    }

    /// Position of `s` in the canonical order of all simplices.
    pub fn global_index(&self, s: &Simplex) -> Option<usize> {
        let offset: usize = self.levels[..s.dim().min(self.levels.len())]
            .iter()
            .map(Vec::len)
            .sum();
        Some(offset + self.position(s)?)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.level(0).iter().map(|s| s.vertices()[0]).collect()
    }

    /// Simplices with no proper coface, sorted lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.levels.len() {
            let covered: BTreeSet<Simplex> =
                self.level(d + 1).iter().flat_map(|s| s.facets()).collect();
            out.extend(self.levels[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out.sort_unstable();
        out
    }

    pub fn is_downward_closed(&self) -> bool {
        (1..self.levels.len()).all(|d| {
            self.levels[d]
                .iter()
                .all(|s| s.facets().all(|f| self.levels[d - 1].binary_search(&f).is_ok()))
        })
    }

    /// All simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        SimplicialComplex {
            levels: self.levels.iter().take(k + 1).cloned().collect(),
        }
    }

    /// Neighbours of each vertex in the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices().into_iter().map(|v| (v, Vec::new())).collect();
        for e in self.level(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for n in adj.values_mut() {
            n.sort_unstable();
        }
        adj
    }

    /// Relabels vertices to `offset, offset+1, ...` preserving their order.
    pub fn relabel_dense(&self, offset: Vertex) -> SimplicialComplex {
        let map: BTreeMap<Vertex, Vertex> = self
            .vertices()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, offset + i as Vertex))
            .collect();
        let simplices = self
            .iter()
            .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| map[v]).collect()))
            .collect();
        SimplicialComplex::from_closed_unchecked(simplices)
    }

    /// Simplicial join. Both factors are relabeled densely, `self` first,
    /// so the vertex sets are disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let left = self.relabel_dense(0);
        let right = other.relabel_dense(left.level(0).len() as Vertex);
        let mut simplices: Vec<Simplex> = left.iter().chain(right.iter()).cloned().collect();
        for a in left.iter() {
            for b in right.iter() {
                let mut vs = a.vertices().to_vec();
                vs.extend_from_slice(b.vertices());
                simplices.push(Simplex::from_sorted(vs));
            }
        }
        SimplicialComplex::from_closed_unchecked(simplices)
    }

    /// Barycentric subdivision. Vertex `i` of the result is the simplex at
    /// canonical index `i` of `self`.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        if self.is_empty() {
            return Err(Error::Domain("barycentric subdivision of the empty complex".into()));
        }
        let all: Vec<Simplex> = self.iter().cloned().collect();
        Ok(order_complex(&all))
    }
}

/// Order complex (chains under strict inclusion) of a family of simplices.
///
/// `elements` must be distinct and sorted by [`canonical_cmp`]; vertex `i`
/// of the result is `elements[i]`. Comparabilities are found through
/// codimension-1 covers, so the family must be convex: whenever `a ⊂ b`
/// are both present, so is every `c` with `a ⊂ c ⊂ b`. Subcomplexes,
/// upward-closed families and their intersections satisfy this.
/// Number of simplices of `order_complex(elements)`, without building it.
/// Saturates at `u128::MAX`.
pub fn order_complex_size(elements: &[Simplex]) -> u128 {
    let index: BTreeMap<&Simplex, usize> = elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut ending: Vec<u128> = alloc::vec![0; elements.len()];
    let mut total: u128 = 0;
    for (i, s) in elements.iter().enumerate() {
        let mut n: u128 = 1;
        for f in s.faces() {
            if f.len() < s.len() {
                if let Some(&j) = index.get(&f) {
                    n = n.saturating_add(ending[j]);
                }
            }
        }
        ending[i] = n;
        total = total.saturating_add(n);
    }
    total
}

pub fn order_complex(elements: &[Simplex]) -> SimplicialComplex {
    debug_assert!(elements
        .windows(2)
        .all(|w| canonical_cmp(&w[0], &w[1]) == Ordering::Less));
    let index: BTreeMap<&Simplex, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    let mut covers: Vec<Vec<u32>> = alloc::vec![Vec::new(); elements.len()];
    for (j, s) in elements.iter().enumerate() {
        for f in s.facets() {
            if let Some(&i) = index.get(&f) {
                covers[i as usize].push(j as u32);
            }
        }
    }
    let mut above: Vec<Vec<u32>> = alloc::vec![Vec::new(); elements.len()];
    for i in (0..elements.len()).rev() {
        let mut up: Vec<u32> = Vec::new();
        for &c in &covers[i] {
            up.push(c);
            up.extend_from_slice(&above[c as usize]);
        }
        up.sort_unstable();
        up.dedup();
        above[i] = up;
    }
    let mut chains = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn extend(above: &[Vec<u32>], stack: &mut Vec<u32>, out: &mut Vec<Simplex>) {
        out.push(Simplex::from_sorted(stack.clone()));
        let last = *stack.last().unwrap() as usize;
        for &next in &above[last] {
            stack.push(next);
            extend(above, stack, out);
            stack.pop();
        }
    }
    for i in 0..elements.len() as u32 {
        stack.push(i);
        extend(&above, &mut stack, &mut chains);
        stack.pop();
    }
    SimplicialComplex::from_closed_unchecked(chains)
}
