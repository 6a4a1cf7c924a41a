//! Bestvina–Brady Morse theory on `X = GM(K, Ω)'` with the height
//! `(φ, −dim)`: sublevel complexes, descending face and coface links, and
//! sweeps that check the descending-link lemmas on every vertex of `X`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::bounds::special_case;
use crate::complex::{canonical_cmp, order_complex, order_complex_size, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::AllMatchings;
use crate::hasse::{ExclusionSet, HasseDiagram};
use crate::homology::{reduced_betti, BettiVector, Field, HomologicalConnectivity};
use crate::morse_complex::{collect_matchings, m_of};
use crate::vector_field::{DiscreteVectorField, HasseFlow, PrimitiveDvf};

/// Sublevel threshold for `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u64),
    Infinite,
}

impl Level {
    pub fn admits(self, phi: u64) -> bool {
        match self {
            Level::Finite(t) => phi <= t,
            Level::Infinite => true,
        }
    }
}

/// A vertex of `X`: a discrete vector field, i.e. a simplex of `GM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionVertex {
    /// Hasse-edge indices of the pairs.
    pub edges: Simplex,
    pub matching: DiscreteVectorField,
    pub phi: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// Some pair lies in no cycle; the face link is a cone on it.
    ConeContractible { apex: PrimitiveDvf },
    /// Every pair lies in a cycle; the face link is the boundary of `V`,
    /// a sphere of the given dimension.
    BoundarySphere(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingLinkReport {
    pub vertex: SubdivisionVertex,
    /// Proper faces `W < V` with `φ(W) < φ(V)`, canonical order.
    pub face_set: Vec<Simplex>,
    /// Proper cofaces `V' > V` with `φ(V') <= φ(V)`, canonical order.
    pub coface_set: Vec<Simplex>,
    /// Order complex of `face_set`; vertex `i` is `face_set[i]`.
    pub face_link: SimplicialComplex,
    /// Order complex of `coface_set`; vertex `i` is `coface_set[i]`.
    pub coface_link: SimplicialComplex,
    /// Simple cycles of `V`, each as Hasse-edge indices.
    pub cycles: Vec<Vec<u32>>,
    pub classification: LinkClass,
}

impl DescendingLinkReport {
    /// The full descending link `face_link * coface_link`.
    pub fn descending_link(&self) -> SimplicialComplex {
        if self.face_link.is_empty() {
            return self.coface_link.relabel_dense(0);
        }
        if self.coface_link.is_empty() {
            return self.face_link.relabel_dense(0);
        }
        self.face_link.join(&self.coface_link)
    }
}

/// Counts and failures of a lemma sweep. Homotopy statements are only
/// checked through their combinatorial certificates or field homology.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
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
}

impl LemmaReport {
    pub fn merge(&mut self, other: LemmaReport) {
        self.vertices_swept += other.vertices_swept;
        self.case1_count += other.case1_count;
        self.case2_count += other.case2_count;
        self.cone_certificates += other.cone_certificates;
        self.sphere_checks += other.sphere_checks;
        self.iso_checks += other.iso_checks;
        self.one_cycle_checks += other.one_cycle_checks;
        self.join_checks += other.join_checks;
        self.join_checks_skipped += other.join_checks_skipped;
        self.monotonicity_checks += other.monotonicity_checks;
        self.coface_nonempty_checks += other.coface_nonempty_checks;
        self.coface_witness_p0 += other.coface_witness_p0;
        self.coface_witness_p_positive += other.coface_witness_p_positive;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest `|face link| · |coface link|` for which the join decomposition is
/// rebuilt from scratch.
pub const JOIN_CHECK_LIMIT: usize = 200_000;

/// `φ` of every matching in `simplices` (Hasse-edge index sets).
pub fn compute_phi(hasse: &HasseDiagram, simplices: &[Simplex], cycle_budget: usize) -> Result<Vec<u32>> {
    let mut flow = HasseFlow::new(hasse);
    simplices
        .iter()
        .map(|s| flow.phi(s.vertices(), cycle_budget).map(|p| p as u32))
        .collect()
}

/// `GM(K, Ω)` with `φ` on every simplex; the vertex set of `X`.
#[derive(Clone, Debug)]
pub struct BbContext {
    k: SimplicialComplex,
    omega: ExclusionSet,
    hasse: HasseDiagram,
    simplices: Vec<Simplex>,
    phi: Vec<u32>,
    index: BTreeMap<Simplex, u32>,
    simplex_budget: usize,
    cycle_budget: usize,
}

impl BbContext {
    pub fn new(
        k: &SimplicialComplex,
        omega: &ExclusionSet,
        simplex_budget: usize,
        cycle_budget: usize,
    ) -> Result<Self> {
        let hasse = HasseDiagram::build(k, omega)?;
        let found = collect_matchings(hasse.graph(), 0..hasse.edges().len(), &mut AllMatchings, simplex_budget)?;
        let simplices: Vec<Simplex> = SimplicialComplex::from_closed_unchecked(found).iter().cloned().collect();
        let phi = compute_phi(&hasse, &simplices, cycle_budget)?;
        Ok(Self::from_parts(
            k.clone(),
            omega.clone(),
            hasse,
            simplices,
            phi,
            simplex_budget,
            cycle_budget,
        ))
    }

    /// Assembles a context from precomputed parts. `simplices` must be all
    /// simplices of `GM` in canonical order and `phi` their cycle counts.
    pub fn from_parts(
        k: SimplicialComplex,
        omega: ExclusionSet,
        hasse: HasseDiagram,
        simplices: Vec<Simplex>,
        phi: Vec<u32>,
        simplex_budget: usize,
        cycle_budget: usize,
    ) -> Self {
        assert_eq!(simplices.len(), phi.len());
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        BbContext {
            k,
            omega,
            hasse,
            simplices,
            phi,
            index,
            simplex_budget,
            cycle_budget,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.k
    }

    pub fn omega(&self) -> &ExclusionSet {
        &self.omega
    }

    pub fn hasse(&self) -> &HasseDiagram {
        &self.hasse
    }

    /// Simplices of `GM` as Hasse-edge index sets, canonical order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn phi(&self) -> &[u32] {
        &self.phi
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    pub fn gm(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_unchecked(self.simplices.clone())
    }

    pub fn field_of(&self, edges: &Simplex) -> DiscreteVectorField {
        DiscreteVectorField::new(edges.vertices().iter().map(|&e| self.hasse.edge_pair(e)))
            .expect("GM simplices are matchings")
    }

    /// Hasse-edge index set of `v`, if it is a simplex of `GM`.
    pub fn locate(&self, v: &DiscreteVectorField) -> Result<usize> {
        if v.is_empty() {
            return Err(Error::Domain("the empty field is not a vertex of X".into()));
        }
        let mut edges = Vec::with_capacity(v.len());
        for p in v.pairs() {
            match self.hasse.edge_of(p) {
                Some(e) => edges.push(e),
                None => {
                    return Err(Error::Domain(format!(
                        "pair ({},{}) is not an edge of the relative Hasse diagram",
                        p.sigma(),
                        p.tau()
                    )))
                }
            }
        }
        edges.sort_unstable();
        self.index_of(&Simplex::from_sorted(edges))
            .ok_or_else(|| Error::Domain("field is not a simplex of GM".into()))
    }

    pub fn vertex(&self, i: usize) -> SubdivisionVertex {
        let edges = self.simplices[i].clone();
        SubdivisionVertex {
            matching: self.field_of(&edges),
            dim: edges.dim(),
            edges,
            phi: self.phi[i] as u64,
        }
    }

    /// Full subcomplex of `X` on the vertices with `φ <= t`.
    pub fn sublevel(&self, t: Level) -> SimplicialComplex {
        let chosen: Vec<Simplex> = self
            .simplices
            .iter()
            .zip(&self.phi)
            .filter(|(_, &p)| t.admits(p as u64))
            .map(|(s, _)| s.clone())
            .collect();
        order_complex(&chosen)
    }

    /// Number of simplices of `sublevel(t)`.
    pub fn sublevel_size(&self, t: Level) -> u128 {
        let chosen: Vec<Simplex> = self
            .simplices
            .iter()
            .zip(&self.phi)
            .filter(|(_, &p)| t.admits(p as u64))
            .map(|(s, _)| s.clone())
            .collect();
        order_complex_size(&chosen)
    }

    /// Full subcomplex of `X` on the vertices `i` with `measure(i) <= t`.
    /// The chosen family must be convex in the face order of `GM`.
    pub fn sublevel_by(&self, measure: impl Fn(usize) -> i64, t: i64) -> Result<SimplicialComplex> {
        let keep: Vec<bool> = (0..self.simplices.len()).map(|i| measure(i) <= t).collect();
        let chosen: Vec<Simplex> = self
            .simplices
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s.clone())
            .collect();
        let members: BTreeSet<&Simplex> = chosen.iter().collect();
        for a in &chosen {
            for b in &chosen {
                if a.len() + 1 < b.len() && a.is_face_of(b) {
                    let gap = b
                        .vertices()
                        .iter()
                        .filter(|v| !a.contains(**v))
                        .any(|&v| !members.contains(&a.union(&Simplex::vertex(v))));
                    if gap {
                        return Err(Error::Domain("sublevel family is not convex".into()));
                    }
                }
            }
        }
        Ok(order_complex(&chosen))
    }

    fn cycles_of(&self, i: usize) -> Result<Vec<Vec<u32>>> {
        HasseFlow::new(&self.hasse).cycles(self.simplices[i].vertices(), self.cycle_budget)
    }

    /// Indices of the proper cofaces of simplex `i` in `GM`.
    fn coface_indices(&self, i: usize) -> Vec<usize> {
        let v = &self.simplices[i];
        let edges = self.hasse.edges();
        let mut busy = vec![false; self.hasse.nodes().len()];
        for &e in v.vertices() {
            let (a, b) = edges[e as usize];
            busy[a as usize] = true;
            busy[b as usize] = true;
        }
        let mut out = Vec::new();
        let mut added: Vec<u32> = Vec::new();
        self.extend_cofaces(v, 0, &mut busy, &mut added, &mut out);
        out.sort_unstable();
        out
    }

    fn extend_cofaces(
        &self,
        v: &Simplex,
        from: usize,
        busy: &mut [bool],
        added: &mut Vec<u32>,
        out: &mut Vec<usize>,
    ) {
        let edges = self.hasse.edges();
        for (e, &(a, b)) in edges.iter().enumerate().skip(from) {
            if busy[a as usize] || busy[b as usize] {
                continue;
            }
            busy[a as usize] = true;
            busy[b as usize] = true;
            added.push(e as u32);
            let mut all: Vec<u32> = v.vertices().to_vec();
            all.extend_from_slice(added);
            all.sort_unstable();
            if let Some(j) = self.index_of(&Simplex::from_sorted(all)) {
                out.push(j);
            }
            self.extend_cofaces(v, e + 1, busy, added, out);
            added.pop();
            busy[a as usize] = false;
            busy[b as usize] = false;
        }
    }

    /// Descending face and coface links of vertex `i` of `X`.
    pub fn descending_links(&self, i: usize) -> Result<DescendingLinkReport> {
        let phi_v = self.phi[i];
        if phi_v == 0 {
            return Err(Error::Domain(
                "descending links are only analysed at vertices with φ > 0".into(),
            ));
        }
        let v = &self.simplices[i];
        let face_set: Vec<Simplex> = v
            .faces()
            .into_iter()
            .filter(|w| w != v && self.phi[self.index_of(w).unwrap()] < phi_v)
            .collect();
        let mut coface_set: Vec<Simplex> = self
            .coface_indices(i)
            .into_iter()
            .filter(|&j| self.phi[j] <= phi_v)
            .map(|j| self.simplices[j].clone())
            .collect();
        coface_set.sort_by(canonical_cmp);
        let cycles = self.cycles_of(i)?;
        let in_cycle: BTreeSet<u32> = cycles.iter().flatten().copied().collect();
        let classification = match v.vertices().iter().find(|e| !in_cycle.contains(e)) {
            Some(&e) => LinkClass::ConeContractible {
                apex: self.hasse.edge_pair(e),
            },
            None => LinkClass::BoundarySphere(v.dim() - 1),
        };
        Ok(DescendingLinkReport {
            vertex: self.vertex(i),
            face_link: order_complex(&face_set),
            coface_link: order_complex(&coface_set),
            face_set,
            coface_set,
            cycles,
            classification,
        })
    }

    /// Indices of the vertices with `φ > 0`.
    pub fn cyclic_vertices(&self) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.phi[i] > 0).collect()
    }

    /// Runs every lemma check on all vertices with `φ > 0`.
    pub fn verify_lemmas(&self) -> LemmaReport {
        let mut report = LemmaReport::default();
        for i in self.cyclic_vertices() {
            self.verify_vertex(i, &mut report);
        }
        report
    }

    /// Runs the lemma checks at vertex `i`, which must have `φ > 0`.
    pub fn verify_vertex(&self, i: usize, report: &mut LemmaReport) {
        let link = match self.descending_links(i) {
            Ok(l) => l,
            Err(e) => {
                report.failures.push(format!("{}: {e}", self.describe(i)));
                return;
            }
        };
        report.vertices_swept += 1;
        let v = &self.simplices[i];
        let phi_v = self.phi[i];

        report.monotonicity_checks += 1;
        if v
            .faces()
            .iter()
            .any(|w| self.phi[self.index_of(w).unwrap()] > phi_v)
        {
            report.failures.push(format!("{}: a face has larger φ", self.describe(i)));
        }

        let members: BTreeSet<&Simplex> = link.face_set.iter().collect();
        match &link.classification {
            LinkClass::ConeContractible { apex } => {
                report.case1_count += 1;
                let e = self.hasse.edge_of(apex).unwrap();
                let apex_simplex = Simplex::vertex(e);
                let closed = members.contains(&apex_simplex)
                    && link
                        .face_set
                        .iter()
                        .all(|w| members.contains(&w.union(&apex_simplex)));
                if closed {
                    report.cone_certificates += 1;
                } else {
                    report
                        .failures
                        .push(format!("{}: face link is not a cone on {}", self.describe(i), pair_text(apex)));
                }
            }
            LinkClass::BoundarySphere(_) => {
                report.case2_count += 1;
                report.sphere_checks += 1;
                let k = v.dim();
                let expected: Vec<usize> = (0..k)
                    .map(|j| crate::generate::binomial(k as u64 + 1, j as u64 + 1) as usize)
                    .collect();
                let got = SimplicialComplex::from_closed_unchecked(link.face_set.clone()).f_vector();
                if got != expected {
                    report.failures.push(format!(
                        "{}: face link has f-vector {got:?}, expected {expected:?}",
                        self.describe(i)
                    ));
                }
            }
        }

        let sizes = link.face_link.num_simplices().max(1) * link.coface_link.num_simplices().max(1);
        if sizes <= JOIN_CHECK_LIMIT {
            report.join_checks += 1;
            if let Err(msg) = self.check_join(i, &link) {
                report.failures.push(format!("{}: {msg}", self.describe(i)));
            }
        } else {
            report.join_checks_skipped += 1;
        }

        if self.k.dim() == Some(1) {
            report.one_cycle_checks += 1;
            for &e in v.vertices() {
                let n = link.cycles.iter().filter(|c| c.contains(&e)).count();
                if n > 1 {
                    report.failures.push(format!(
                        "{}: pair {} lies in {n} simple cycles",
                        self.describe(i),
                        pair_text(&self.hasse.edge_pair(e))
                    ));
                }
            }
            if matches!(link.classification, LinkClass::BoundarySphere(_)) {
                report.iso_checks += 1;
                if let Err(msg) = self.check_coface_isomorphism(i, &link) {
                    report.failures.push(format!("{}: {msg}", self.describe(i)));
                }
            }
        }

        if self.omega.is_empty() && special_case(&self.k).is_none() && v.len() == 3 {
            report.coface_nonempty_checks += 1;
            if link.coface_set.is_empty() {
                report.failures.push(format!("{}: descending coface link is empty", self.describe(i)));
            }
            match self.coface_witness(i, &link) {
                Ok(true) => report.coface_witness_p_positive += 1,
                Ok(false) => report.coface_witness_p0 += 1,
                Err(msg) => report.failures.push(format!("{}: {msg}", self.describe(i))),
            }
        }
    }

    /// Rebuilds the descending link of `i` from the height function alone
    /// and compares it with the join of the face and coface links.
    fn check_join(&self, i: usize, link: &DescendingLinkReport) -> core::result::Result<(), String> {
        let v = &self.simplices[i];
        let height = |j: usize| (self.phi[j], core::cmp::Reverse(self.simplices[j].len()));
        let hv = height(i);
        let mut below: Vec<usize> = (0..self.simplices.len())
            .filter(|&j| j != i && height(j) < hv)
            .filter(|&j| {
                let s = &self.simplices[j];
                s.is_face_of(v) || v.is_face_of(s)
            })
            .collect();
        below.sort_by(|&a, &b| canonical_cmp(&self.simplices[a], &self.simplices[b]));
        let mut chains = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        fn grow(
            ctx: &BbContext,
            below: &[usize],
            from: usize,
            stack: &mut Vec<u32>,
            out: &mut Vec<Simplex>,
        ) {
            for pos in from..below.len() {
                let s = &ctx.simplices[below[pos]];
                let fits = match stack.last() {
                    Some(&last) => {
                        let t = &ctx.simplices[below[last as usize]];
                        t.len() < s.len() && t.is_face_of(s)
                    }
                    None => true,
                };
                if fits {
                    stack.push(pos as u32);
                    out.push(Simplex::from_sorted(stack.clone()));
                    grow(ctx, below, pos + 1, stack, out);
                    stack.pop();
                }
            }
        }
        grow(self, &below, 0, &mut stack, &mut chains);
        let direct = SimplicialComplex::from_closed_unchecked(chains);
        let expected_faces = link.face_set.len();
        let split_ok = below
            .iter()
            .take(expected_faces)
            .all(|&j| self.simplices[j].is_face_of(v))
            && below.len() == expected_faces + link.coface_set.len();
        if !split_ok {
            return Err("descending vertices do not split into faces and cofaces".into());
        }
        if direct != link.descending_link() {
            return Err("descending link differs from the join of face and coface links".into());
        }
        Ok(())
    }

    /// For a graph, checks that `W ↦ V ⊔ W` is a simplicial isomorphism
    /// from `M(K, Ω ∪ Υ)'` onto the descending coface link of `V`.
    fn check_coface_isomorphism(
        &self,
        i: usize,
        link: &DescendingLinkReport,
    ) -> core::result::Result<(), String> {
        let v = &self.simplices[i];
        let used: Vec<Simplex> = link
            .vertex
            .matching
            .used_simplices()
            .cloned()
            .collect();
        let omega2 = self.omega.union(used);
        let small = HasseDiagram::build(&self.k, &omega2).map_err(|e| format!("{e}"))?;
        let m = m_of(&small, self.simplex_budget).map_err(|e| format!("{e}"))?;
        let targets: Vec<Simplex> = m.complex.iter().cloned().collect();
        let target_index: BTreeMap<&Simplex, u32> =
            targets.iter().enumerate().map(|(j, s)| (s, j as u32)).collect();
        let mut image = Vec::with_capacity(link.coface_set.len());
        for c in &link.coface_set {
            let mut w: Vec<u32> = Vec::new();
            for &e in c.vertices().iter().filter(|e| !v.contains(**e)) {
                match small.edge_of(&self.hasse.edge_pair(e)) {
                    Some(x) => w.push(x),
                    None => return Err(format!("coface pair {} touches Υ", pair_text(&self.hasse.edge_pair(e)))),
                }
            }
            w.sort_unstable();
            match target_index.get(&Simplex::from_sorted(w)) {
                Some(&j) => image.push(j),
                None => return Err("coface W is not a simplex of M(K, Ω ∪ Υ)".into()),
            }
        }
        let distinct: BTreeSet<u32> = image.iter().copied().collect();
        if distinct.len() != image.len() || distinct.len() != targets.len() {
            return Err(format!(
                "vertex map is not bijective ({} cofaces, {} targets)",
                image.len(),
                targets.len()
            ));
        }
        let mapped: BTreeSet<Simplex> = link
            .coface_link
            .iter()
            .map(|s| {
                let mut vs: Vec<u32> = s.vertices().iter().map(|&x| image[x as usize]).collect();
                vs.sort_unstable();
                Simplex::from_sorted(vs)
            })
            .collect();
        let target_link: BTreeSet<Simplex> = order_complex(&targets).iter().cloned().collect();
        if mapped != target_link {
            return Err("vertex bijection does not preserve simplices".into());
        }
        Ok(())
    }

    /// Builds one coface of the 2-simplex `i` with the same `φ`, following
    /// the dimension split of the simply-connected descending link
    /// argument. Returns whether the `p > 0` branch was used.
    fn coface_witness(&self, i: usize, link: &DescendingLinkReport) -> core::result::Result<bool, String> {
        let v = &self.simplices[i];
        let cycle = link.cycles.first().ok_or("no cycle found")?;
        let nodes = self.hasse.nodes();
        let (sigma0, tau0) = self.hasse.edges()[cycle[0] as usize];
        let used: BTreeSet<u32> = v
            .vertices()
            .iter()
            .flat_map(|&e| {
                let (a, b) = self.hasse.edges()[e as usize];
                [a, b]
            })
            .collect();
        let p = nodes[sigma0 as usize].dim();
        let candidates: Vec<(u32, u32)> = if p > 0 {
            let tau = &nodes[tau0 as usize];
            let mut c = Vec::new();
            for e in tau.faces().into_iter().filter(|f| f.dim() == 1) {
                let en = self.hasse.node_index(&e).unwrap();
                for x in e.vertices() {
                    c.push((self.hasse.node_index(&Simplex::vertex(*x)).unwrap(), en));
                }
            }
            c
        } else {
            let mut c = Vec::new();
            for (en, e) in nodes.iter().enumerate().filter(|(_, s)| s.dim() == 1) {
                for x in e.vertices() {
                    c.push((self.hasse.node_index(&Simplex::vertex(*x)).unwrap(), en as u32));
                }
            }
            c
        };
        let members: BTreeSet<&Simplex> = link.coface_set.iter().collect();
        for (vn, en) in candidates {
            if used.contains(&vn) || used.contains(&en) {
                continue;
            }
            let e = self.hasse.edge_index(vn, en).unwrap();
            let mut all = v.vertices().to_vec();
            all.push(e);
            all.sort_unstable();
            if members.contains(&Simplex::from_sorted(all)) {
                return Ok(p > 0);
            }
            return Err(format!(
                "adding {} changes φ",
                pair_text(&self.hasse.edge_pair(e))
            ));
        }
        Err(format!("no coface witness found (p = {p})"))
    }

    /// Checks the homological shadow of the Morse Lemma between the
    /// sublevels `t < s`.
    pub fn morse_lemma_check(&self, t: Level, s: Level, budget: usize) -> Result<MorseLemmaCheck> {
        let size = self.sublevel_size(s);
        if size > budget as u128 {
            return Err(Error::Budget {
                resource: "homology simplex",
                limit: budget,
                reached: usize::try_from(size).unwrap_or(usize::MAX),
            });
        }
        let lower = self.sublevel(t);
        let upper = self.sublevel(s);
        let betti_t = reduced_betti(&lower, Field::Gf2, budget)?;
        let betti_s = reduced_betti(&upper, Field::Gf2, budget)?;
        let mut link_euler_sum = 0i64;
        let mut n = i64::MAX;
        let mut links = 0;
        for i in self.cyclic_vertices() {
            let phi = self.phi[i] as u64;
            if t.admits(phi) || !s.admits(phi) {
                continue;
            }
            links += 1;
            let lk = self.descending_links(i)?.descending_link();
            link_euler_sum += crate::homology::euler_characteristic(&lk) - 1;
            let b = reduced_betti(&lk, Field::Gf2, budget)?;
            let m = match HomologicalConnectivity::from_betti(&[&b]) {
                HomologicalConnectivity::Empty => -2,
                HomologicalConnectivity::Through(m) => m,
                HomologicalConnectivity::Acyclic => i64::MAX - 1,
            };
            n = n.min(m + 1);
        }
        let reduced_euler = |k: &SimplicialComplex| crate::homology::euler_characteristic(k) - 1;
        let euler_holds = reduced_euler(&upper) == reduced_euler(&lower) - link_euler_sum;
        let top = betti_t.reduced_betti.len().max(betti_s.reduced_betti.len()) as i64;
        let prefix_equal = (0..n.min(top)).all(|j| betti_t.get(j as usize) == betti_s.get(j as usize));
        let surjective = n < 0 || n >= top || betti_s.get(n as usize) <= betti_t.get(n as usize);
        Ok(MorseLemmaCheck {
            t,
            s,
            links,
            link_connectivity: if n == i64::MAX { None } else { Some(n - 1) },
            betti_t,
            betti_s,
            euler_holds,
            prefix_equal,
            surjective,
        })
    }

    fn describe(&self, i: usize) -> String {
        let mut out = String::from("V = {");
        for (n, &e) in self.simplices[i].vertices().iter().enumerate() {
            if n > 0 {
                out.push_str(", ");
            }
            out.push_str(&pair_text(&self.hasse.edge_pair(e)));
        }
        let _ = write!(out, "}} φ = {}", self.phi[i]);
        out
    }
}

pub fn pair_text(p: &PrimitiveDvf) -> String {
    format!("({}<{})", p.sigma(), p.tau())
}

/// Reduced GF(2) Betti numbers of two sublevels and of the descending
/// links between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseLemmaCheck {
    pub t: Level,
    pub s: Level,
    pub links: usize,
    /// Every descending link crossed has vanishing reduced homology through
    /// this degree; `None` when no link is crossed.
    pub link_connectivity: Option<i64>,
    pub betti_t: BettiVector,
    pub betti_s: BettiVector,
    /// `χ̃(X_s) = χ̃(X_t) − Σ χ̃(lk↓ V)`.
    pub euler_holds: bool,
    /// Betti numbers agree below the link connectivity plus one.
    pub prefix_equal: bool,
    /// In the first degree that may change, the Betti number does not grow.
    pub surjective: bool,
}

impl MorseLemmaCheck {
    pub fn holds(&self) -> bool {
        self.euler_holds && self.prefix_equal && self.surjective
    }
}

/// Sublevel complex `X^{φ <= t}` of `GM(K, Ω)'`.
pub fn sublevel_complex(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    t: Level,
    budget: usize,
) -> Result<SimplicialComplex> {
    Ok(BbContext::new(k, omega, budget, crate::vector_field::DEFAULT_CYCLE_BUDGET)?.sublevel(t))
}

/// Descending links of `v` as a vertex of `GM(K, Ω)'`.
pub fn descending_links(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    v: &DiscreteVectorField,
    budget: usize,
) -> Result<DescendingLinkReport> {
    v.check_on(k, omega)?;
    let ctx = BbContext::new(k, omega, budget, crate::vector_field::DEFAULT_CYCLE_BUDGET)?;
    let i = ctx.locate(v)?;
    ctx.descending_links(i)
}

pub fn verify_descending_link_lemmas(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    budget: usize,
) -> Result<LemmaReport> {
    Ok(BbContext::new(k, omega, budget, crate::vector_field::DEFAULT_CYCLE_BUDGET)?.verify_lemmas())
}

/// A `k`-simplex of `c` that is an `r`-ground: every vertex of `c` is
/// adjacent to all but at most `r` of its other vertices.
pub fn ground_check(c: &SimplicialComplex, k: usize, r: usize) -> Option<Simplex> {
    let adjacency: BTreeMap<u32, BTreeSet<u32>> = c
        .adjacency()
        .into_iter()
        .map(|(v, n)| (v, n.into_iter().collect()))
        .collect();
    let vertices = c.vertices();
    c.level(k)
        .iter()
        .find(|s| {
            vertices.iter().all(|w| {
                let near = adjacency.get(w);
                s.vertices()
                    .iter()
                    .filter(|&&x| x != *w && !near.is_some_and(|n| n.contains(&x)))
                    .count()
                    <= r
            })
        })
        .cloned()
}
