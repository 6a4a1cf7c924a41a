//! Standard families of complexes with deterministic dense vertex labels.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// The full `n`-simplex on vertices `0..=n`.
    Simplex(u32),
    /// The boundary of the `n`-simplex, `n >= 1`.
    BoundarySimplex(u32),
    /// Join of `n + 1` copies of `S^0`; vertices `2i` and `2i + 1` are antipodal.
    Hyperoctahedron(u32),
    /// Boundary of the icosahedron: 12 vertices, 30 edges, 20 triangles.
    IcosahedronBoundary,
    /// `K_n`, `n >= 1`.
    CompleteGraph(u32),
    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    CompleteBipartite(u32, u32),
    /// `C_n`, `n >= 3`.
    CycleGraph(u32),
    /// Path with `n >= 1` edges on vertices `0..=n`.
    PathGraph(u32),
    /// 1-skeleton of the `n`-cube, `1 <= n <= 16`.
    HypercubeGraph(u32),
}

fn domain(msg: alloc::string::String) -> Error {
    Error::Domain(msg)
}

pub fn generate(family: Family) -> Result<SimplicialComplex> {
    let maximal: Vec<Vec<Vertex>> = match family {
        Family::Simplex(n) => {
            if n > 20 {
                return Err(domain(format!("simplex({n}) is too large")));
            }
            vec![(0..=n).collect()]
        }
        Family::BoundarySimplex(n) => {
            if !(1..=20).contains(&n) {
                return Err(domain(format!("boundary_simplex({n}) needs 1 <= n <= 20")));
            }
            (0..=n)
                .map(|skip| (0..=n).filter(|&v| v != skip).collect())
                .collect()
        }
        Family::Hyperoctahedron(n) => {
            if n > 12 {
                return Err(domain(format!("hyperoctahedron({n}) is too large")));
            }
            let copies = n + 1;
            (0u64..(1u64 << copies))
                .map(|signs| (0..copies).map(|i| 2 * i + (signs >> i & 1) as u32).collect())
                .collect()
        }
        Family::IcosahedronBoundary => icosahedron(),
        Family::CompleteGraph(n) => {
            if n < 1 {
                return Err(domain("complete_graph needs n >= 1".into()));
            }
            if n == 1 {
                vec![vec![0]]
            } else {
                pairs((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
            }
        }
        Family::CompleteBipartite(p, q) => {
            if p < 1 || q < 1 {
                return Err(domain(format!("complete_bipartite({p},{q}) needs p, q >= 1")));
            }
            pairs((0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))))
        }
        Family::CycleGraph(n) => {
            if n < 3 {
                return Err(domain(format!("cycle_graph({n}) needs n >= 3")));
            }
            pairs((0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::PathGraph(n) => {
            if n < 1 {
                return Err(domain("path_graph needs n >= 1".into()));
            }
            pairs((0..n).map(|i| (i, i + 1)))
        }
        Family::HypercubeGraph(n) => {
            if !(1..=16).contains(&n) {
                return Err(domain(format!("hypercube_graph({n}) needs 1 <= n <= 16")));
            }
            pairs((0..1u32 << n).flat_map(|v| {
                (0..n)
                    .map(move |bit| (v, v ^ (1 << bit)))
                    .filter(|(a, b)| a < b)
            }))
        }
    };
    SimplicialComplex::from_maximal(maximal)
}

fn pairs(edges: impl Iterator<Item = (Vertex, Vertex)>) -> Vec<Vec<Vertex>> {
    edges.map(|(a, b)| vec![a, b]).collect()
}

// 0 is the top apex, 1..=5 the upper ring, 6..=10 the lower ring, 11 the
// bottom apex. Upper vertex i sits between lower vertices i-1 and i.
fn icosahedron() -> Vec<Vec<Vertex>> {
    let up = |i: u32| 1 + i % 5;
    let lo = |i: u32| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, up(i), up(i + 1)]);
        faces.push(vec![11, lo(i), lo(i + 1)]);
        faces.push(vec![up(i), up(i + 1), lo(i)]);
        faces.push(vec![lo(i), lo(i + 1), up(i + 1)]);
    }
    faces
}

/// `n`-fold iterated barycentric subdivision.
pub fn iterated_subdivision(k: &SimplicialComplex, n: u32) -> Result<SimplicialComplex> {
    let mut out = k.clone();
    for _ in 0..n {
        out = out.barycentric_subdivision()?;
    }
    Ok(out)
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A single simplex as a complex.
pub fn simplex_complex(s: &Simplex) -> SimplicialComplex {
    SimplicialComplex::from_simplices([s.clone()])
}
