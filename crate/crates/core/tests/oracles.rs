//! Library results against brute-force reimplementations from the
//! definitions.

use std::collections::{BTreeMap, BTreeSet};

use morsecx_core::complex::SimplicialComplex;
use morsecx_core::generate::{generate, iterated_subdivision, Family};
use morsecx_core::hasse::{ExclusionSet, HasseDiagram};
use morsecx_core::homology::{reduced_betti, Field, DEFAULT_HOMOLOGY_BUDGET as HB};
use morsecx_core::morse_complex::{gm_of, m_of};
use morsecx_core::vector_field::{is_acyclic, simple_cycles, DiscreteVectorField};
use morsecx_core::{Simplex, DEFAULT_SIMPLEX_BUDGET as B};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_corpus() -> Vec<(String, SimplicialComplex, ExclusionSet)> {
    let mut out = Vec::new();
    let fams = [
        Family::Simplex(1),
        Family::Simplex(2),
        Family::BoundarySimplex(2),
        Family::Hyperoctahedron(0),
        Family::Hyperoctahedron(1),
        Family::CompleteGraph(3),
        Family::CompleteGraph(4),
        Family::CompleteBipartite(2, 2),
        Family::CompleteBipartite(2, 3),
        Family::CycleGraph(4),
        Family::CycleGraph(5),
        Family::CycleGraph(6),
        Family::CycleGraph(7),
        Family::CycleGraph(8),
        Family::PathGraph(3),
        Family::PathGraph(6),
        Family::HypercubeGraph(2),
    ];
    for f in fams {
        out.push((format!("{f:?}"), generate(f).unwrap(), ExclusionSet::empty()));
    }
    let tri = generate(Family::Simplex(2)).unwrap();
    out.push((
        "triangle minus top".into(),
        tri.clone(),
        ExclusionSet::new([Simplex::new([0, 1, 2]).unwrap()]),
    ));
    out.push((
        "triangle minus a vertex".into(),
        tri,
        ExclusionSet::new([Simplex::vertex(1)]),
    ));
    out
}

fn hasse(k: &SimplicialComplex, omega: &ExclusionSet) -> HasseDiagram {
    HasseDiagram::build(k, omega).unwrap()
}

/// All matchings of an edge list by subset enumeration.
fn brute_matchings(edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    assert!(edges.len() <= 16);
    let mut out = Vec::new();
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<u32> = (0..edges.len() as u32).filter(|i| mask >> i & 1 == 1).collect();
        let mut seen = BTreeSet::new();
        if chosen.iter().all(|&i| {
            let (a, b) = edges[i as usize];
            seen.insert(a) && seen.insert(b)
        }) {
            out.push(chosen);
        }
    }
    out
}

#[test]
fn matchings_agree_with_subset_enumeration() {
    for (name, k, omega) in small_corpus() {
        let h = hasse(&k, &omega);
        if h.edges().len() > 16 {
            continue;
        }
        let brute = brute_matchings(h.edges());
        let max = brute.iter().map(Vec::len).max().unwrap_or(0);
        assert_eq!(h.max_matching_size(), max, "{name}");
        let gm = gm_of(&h, B).unwrap();
        let got: BTreeSet<Vec<u32>> = gm.complex.iter().map(|s| s.vertices().to_vec()).collect();
        let want: BTreeSet<Vec<u32>> = brute.into_iter().collect();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn gm_is_flag() {
    for (name, k, omega) in small_corpus() {
        let h = hasse(&k, &omega);
        if h.edges().len() > 12 {
            continue;
        }
        let gm = gm_of(&h, B).unwrap().complex;
        let adjacent: BTreeSet<(u32, u32)> = gm
            .level(1)
            .iter()
            .map(|e| (e.vertices()[0], e.vertices()[1]))
            .collect();
        let n = h.edges().len() as u32;
        for mask in 1u32..(1 << n) {
            let vs: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let clique = vs
                .iter()
                .enumerate()
                .all(|(i, a)| vs[i + 1..].iter().all(|b| adjacent.contains(&(*a, *b))));
            let s = Simplex::from_sorted(vs);
            assert_eq!(clique, gm.contains(&s), "{name}: {s}");
        }
    }
}

#[test]
fn gm_is_two_grounded_by_every_simplex() {
    for (name, k, omega) in small_corpus() {
        let h = hasse(&k, &omega);
        let gm = gm_of(&h, B).unwrap().complex;
        let adj = gm.adjacency();
        for s in gm.iter() {
            for w in gm.vertices() {
                let near: BTreeSet<u32> = adj.get(&w).into_iter().flatten().copied().collect();
                let far = s.vertices().iter().filter(|&&x| x != w && !near.contains(&x)).count();
                assert!(far <= 2, "{name}: {w} vs {s}");
            }
        }
    }
}

/// Simple closed V-paths `σ_0, τ_0, ..., σ_0` up to rotation, found by
/// walking the definition directly on simplices.
fn brute_cycles(v: &DiscreteVectorField) -> BTreeSet<Vec<Simplex>> {
    let mut found = BTreeSet::new();
    let limit = 2 * v.len();
    fn walk(
        v: &DiscreteVectorField,
        path: &mut Vec<Simplex>,
        limit: usize,
        found: &mut BTreeSet<Vec<Simplex>>,
    ) {
        let last = path.last().unwrap().clone();
        let Some(tau) = v.image(&last) else { return };
        for next in tau.facets() {
            if next == last {
                continue;
            }
            if next == path[0] {
                let distinct: BTreeSet<&Simplex> = path.iter().collect();
                if distinct.len() == path.len() {
                    let m = path.iter().enumerate().min_by_key(|(_, s)| (*s).clone()).unwrap().0;
                    let mut rotated = path[m..].to_vec();
                    rotated.extend_from_slice(&path[..m]);
                    found.insert(rotated);
                }
                continue;
            }
            if path.len() < limit {
                path.push(next);
                walk(v, path, limit, found);
                path.pop();
            }
        }
    }
    for p in v.pairs() {
        let mut path = vec![p.sigma().clone()];
        walk(v, &mut path, limit, &mut found);
    }
    found
}

#[test]
fn simple_cycles_agree_with_closed_path_search() {
    let mut cyclic_seen = 0;
    for (name, k, omega) in small_corpus()
        .into_iter()
        .chain([("boundary tetrahedron".to_string(), generate(Family::BoundarySimplex(3)).unwrap(), ExclusionSet::empty())])
    {
        let h = hasse(&k, &omega);
        let gm = gm_of(&h, B).unwrap();
        for s in gm.complex.iter().filter(|s| s.len() <= 8) {
            let v = DiscreteVectorField::new(s.vertices().iter().map(|&e| gm.vertex_dictionary[e as usize].clone()))
                .unwrap();
            let ours: BTreeSet<Vec<Simplex>> = simple_cycles(&v, 1_000_000)
                .unwrap()
                .into_iter()
                .map(|c| c.sigmas().to_vec())
                .collect();
            let theirs = brute_cycles(&v);
            assert_eq!(ours, theirs, "{name}: {s}");
            assert_eq!(is_acyclic(&v), theirs.is_empty());
            cyclic_seen += usize::from(!theirs.is_empty());
        }
    }
    assert!(cyclic_seen > 0);
}

#[test]
fn morse_complex_is_the_acyclic_part_of_gm() {
    for (name, k, omega) in small_corpus() {
        let h = hasse(&k, &omega);
        let gm = gm_of(&h, B).unwrap();
        let m = m_of(&h, B).unwrap();
        let by_filter: Vec<&Simplex> = gm
            .complex
            .iter()
            .filter(|s| {
                let v = DiscreteVectorField::new(s.vertices().iter().map(|&e| h.edge_pair(e))).unwrap();
                is_acyclic(&v)
            })
            .collect();
        let direct: Vec<&Simplex> = m.complex.iter().collect();
        assert_eq!(direct, by_filter, "{name}");
        assert!(m.complex.is_downward_closed());
    }
}

fn dense_boundary(k: &SimplicialComplex, d: usize) -> Vec<Vec<i64>> {
    // rows: (d-1)-simplices, or the single augmentation row when d = 0
    let cols = k.level(d);
    let rows = if d == 0 { 1 } else { k.level(d - 1).len() };
    let mut m = vec![vec![0i64; cols.len()]; rows];
    for (j, s) in cols.iter().enumerate() {
        if d == 0 {
            m[0][j] = 1;
            continue;
        }
        for i in 0..s.len() {
            let mut face = s.vertices().to_vec();
            face.remove(i);
            let r = k.level(d - 1).iter().position(|t| t.vertices() == &face[..]).unwrap();
            m[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

fn rank_gf2(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x % 2 != 0).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c]) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] {
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense_betti(k: &SimplicialComplex, field: Field) -> Vec<usize> {
    let f = k.f_vector();
    let ranks: Vec<usize> = (0..f.len())
        .map(|d| {
            let m = dense_boundary(k, d);
            match field {
                Field::Gf2 => rank_gf2(&m),
                Field::Rational => rank_q(&m),
            }
        })
        .collect();
    (0..f.len())
        .map(|d| f[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect()
}

fn assert_homology_matches(k: &SimplicialComplex, label: &str) {
    for field in [Field::Gf2, Field::Rational] {
        let ours = reduced_betti(k, field, HB).unwrap().reduced_betti;
        assert_eq!(ours, dense_betti(k, field), "{label} over {field:?}");
    }
}

#[test]
fn homology_matches_dense_elimination() {
    let mut checked = 0;
    let mut complexes: Vec<(String, SimplicialComplex)> = small_corpus()
        .into_iter()
        .flat_map(|(n, k, o)| {
            let h = hasse(&k, &o);
            [
                (n.to_string(), k),
                (format!("GM({n})"), gm_of(&h, B).unwrap().complex),
                (format!("M({n})"), m_of(&h, B).unwrap().complex),
            ]
        })
        .collect();
    complexes.push(("octahedron".into(), generate(Family::Hyperoctahedron(2)).unwrap()));
    complexes.push(("S^3".into(), generate(Family::BoundarySimplex(4)).unwrap()));
    // projective plane: 6 vertices, 10 triangles; differs between the fields
    let rp2 = SimplicialComplex::from_maximal([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ])
    .unwrap();
    assert_eq!(reduced_betti(&rp2, Field::Gf2, HB).unwrap().reduced_betti, vec![0, 1, 1]);
    assert_eq!(reduced_betti(&rp2, Field::Rational, HB).unwrap().reduced_betti, vec![0, 0, 0]);
    complexes.push(("RP2".into(), rp2));
    for (label, k) in complexes {
        if k.num_simplices() <= 200 {
            assert_homology_matches(&k, &label);
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} complexes checked");
}

/// Lexicographically least simplex list over all relabelings onto `0..n`.
fn canonical_form(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    let vs = k.vertices();
    let n = vs.len();
    assert!(n <= 8);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    loop {
        let map: BTreeMap<u32, u32> = vs.iter().copied().zip(perm.iter().copied()).collect();
        let mut list: Vec<Vec<u32>> = k
            .iter()
            .map(|s| {
                let mut t: Vec<u32> = s.vertices().iter().map(|v| map[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        list.sort();
        if best.as_ref().is_none_or(|b| &list < b) {
            best = Some(list);
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best.unwrap_or_default()
}

#[test]
fn join_is_associative_up_to_isomorphism() {
    let pieces = [
        SimplicialComplex::from_maximal([[0], [1]]).unwrap(),
        SimplicialComplex::from_maximal([[5, 6]]).unwrap(),
        SimplicialComplex::from_maximal([[2]]).unwrap(),
        SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2]]).unwrap(),
    ];
    for a in &pieces {
        for b in &pieces {
            for c in &pieces {
                if a.vertices().len() + b.vertices().len() + c.vertices().len() > 8 {
                    continue;
                }
                let left = a.join(b).join(c);
                let right = a.join(&b.join(c));
                assert_eq!(canonical_form(&left), canonical_form(&right));
                // swapping factors also gives an isomorphic complex
                assert_eq!(canonical_form(&a.join(b)), canonical_form(&b.join(a)));
            }
        }
    }
}

#[test]
fn subdivision_preserves_euler_characteristic() {
    use morsecx_core::homology::euler_characteristic;
    let corpus: Vec<SimplicialComplex> = [
        Family::Simplex(1),
        Family::Simplex(2),
        Family::Simplex(3),
        Family::BoundarySimplex(2),
        Family::BoundarySimplex(3),
        Family::BoundarySimplex(4),
        Family::Hyperoctahedron(1),
        Family::Hyperoctahedron(2),
        Family::IcosahedronBoundary,
        Family::CompleteGraph(4),
        Family::CompleteGraph(5),
        Family::CompleteBipartite(2, 3),
        Family::CompleteBipartite(3, 3),
        Family::CycleGraph(5),
        Family::PathGraph(4),
        Family::HypercubeGraph(3),
    ]
    .into_iter()
    .map(|f| generate(f).unwrap())
    .chain([SimplicialComplex::from_maximal([vec![0, 1, 2], vec![2, 3], vec![4]]).unwrap()])
    .collect();
    assert!(corpus.len() <= 20);
    for k in &corpus {
        let chi = euler_characteristic(k);
        let b = k.barycentric_subdivision().unwrap();
        assert_eq!(euler_characteristic(&b), chi);
        if k.dim() == Some(1) {
            assert_eq!(b.level(1).len(), 2 * k.level(1).len());
            let hk = hasse(k, &ExclusionSet::empty()).metrics().d;
            let hb = hasse(&b, &ExclusionSet::empty()).metrics().d;
            assert_eq!(hk, hb);
        }
    }
    let tower = iterated_subdivision(&generate(Family::Simplex(2)).unwrap(), 2).unwrap();
    assert_eq!(euler_characteristic(&tower), 1);
}

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 1..6).prop_map(|sets| {
        SimplicialComplex::from_maximal(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_complexes_are_closed(k in arb_complex()) {
        prop_assert!(k.is_downward_closed());
        let again = SimplicialComplex::from_maximal(k.maximal_simplices().into_iter().map(|s| s.into_vertices())).unwrap();
        prop_assert_eq!(again, k);
    }

    #[test]
    fn random_homology_matches_dense(k in arb_complex()) {
        if k.num_simplices() <= 200 {
            for field in [Field::Gf2, Field::Rational] {
                let ours = reduced_betti(&k, field, HB).unwrap();
                prop_assert_eq!(&ours.reduced_betti, &dense_betti(&k, field));
                prop_assert_eq!(ours.euler_from_betti(), morsecx_core::homology::euler_characteristic(&k));
            }
        }
    }

    #[test]
    fn konig_lower_bound(k in arb_complex()) {
        let h = hasse(&k, &ExclusionSet::empty());
        let m = h.metrics();
        if m.h >= 1 {
            let mm = h.max_matching_size() as u64;
            prop_assert!(mm >= m.h.div_ceil(m.d));
            prop_assert!(mm >= (m.h - 1) / m.d + 1);
        }
    }

    #[test]
    fn random_observation(k in arb_complex()) {
        prop_assert!(morsecx_core::hasse::verify_h_d_observation(&k).unwrap().holds());
    }
}

#[test]
fn forman_round_trip_on_small_complexes() {
    use morsecx_core::vector_field::{forman_function_from_acyclic, gradient_vector_field};
    let mut fields = 0;
    for (name, k, omega) in small_corpus().into_iter().filter(|(_, _, o)| o.is_empty()) {
        let h = hasse(&k, &omega);
        let m = m_of(&h, B).unwrap();
        if m.complex.num_simplices() > 20_000 {
            continue;
        }
        for s in m.complex.iter() {
            let v = DiscreteVectorField::new(s.vertices().iter().map(|&e| h.edge_pair(e))).unwrap();
            let f = forman_function_from_acyclic(&k, &v).unwrap();
            assert_eq!(gradient_vector_field(&k, &f).unwrap(), v, "{name}: {s}");
            fields += 1;
        }
    }
    assert!(fields > 1000);
}
