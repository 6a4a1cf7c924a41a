//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always shown.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use morsecx::corpus::{corpus, generate_spec, CorpusEntry};
use morsecx::format::emit_document;
use morsecx::parallel::{bb_context_par, gm_par, m_par, verify_par};
use morsecx_core::bounds::{connectivity_report, gm_connectivity_bound, graph_bound};
use morsecx_core::generate::binomial;
use morsecx_core::hasse::verify_h_d_observation;
use morsecx_core::homology::{homological_connectivity, reduced_betti, DEFAULT_HOMOLOGY_BUDGET};
use morsecx_core::morse_theory::Level;
use morsecx_core::vector_field::DEFAULT_CYCLE_BUDGET;
use morsecx_core::{Error, ExclusionSet, Field, HasseDiagram, Simplex, SimplicialComplex};

/// Simplex budget for building M and GM in the soundness checks.
const BUDGET: usize = 300_000;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("violation: {}", what()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn hasse(e: &CorpusEntry) -> HasseDiagram {
    HasseDiagram::build(&e.complex, &e.omega).unwrap()
}

fn plain(spec: &str) -> (SimplicialComplex, HasseDiagram) {
    let k = generate_spec(spec).unwrap();
    let h = HasseDiagram::build(&k, &ExclusionSet::empty()).unwrap();
    (k, h)
}

fn betti_both(k: &SimplicialComplex) -> (Vec<usize>, Vec<usize>) {
    (
        reduced_betti(k, Field::Gf2, DEFAULT_HOMOLOGY_BUDGET).unwrap().reduced_betti,
        reduced_betti(k, Field::Rational, DEFAULT_HOMOLOGY_BUDGET).unwrap().reduced_betti,
    )
}

fn padded(v: &[usize], n: usize) -> Vec<usize> {
    let mut v = v.to_vec();
    v.resize(n.max(v.len()), 0);
    v
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let (_, h) = plain("boundary:2");
    let gm = gm_par(&h, BUDGET).unwrap().complex;
    let m = m_par(&h, BUDGET).unwrap().complex;
    o.check(gm.f_vector() == [6, 9, 2], || format!("f(GM(∂Δ²)) = {:?}", gm.f_vector()));
    let (a, b) = betti_both(&gm);
    o.check(padded(&a, 2) == [0, 2, 0] && a == b, || format!("b̃(GM(∂Δ²)) = {a:?} / {b:?}"));
    o.check(padded(&m.f_vector(), 3) == [6, 9, 0], || format!("f(M(∂Δ²)) = {:?}", m.f_vector()));
    let (a, b) = betti_both(&m);
    o.check(a == [0, 4] && a == b, || format!("b̃(M(∂Δ²)) = {a:?} / {b:?}"));
    let (_, h) = plain("simplex:2");
    let (a, b) = betti_both(&m_par(&h, BUDGET).unwrap().complex);
    o.check(padded(&a, 3) == [0, 4, 0] && a == b, || format!("b̃(M(Δ²)) = {a:?}"));
    let (_, h) = plain("simplex:1");
    let m = m_par(&h, BUDGET).unwrap().complex;
    let (a, _) = betti_both(&m);
    o.check(m.f_vector() == [2] && a == [1], || format!("M(Δ¹): f = {:?}, b̃ = {a:?}", m.f_vector()));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=5u64 {
        let m = plain(&format!("simplex:{n}")).1.metrics();
        o.check(m.h == (n + 1) * ((1 << n) - 1) && m.d == n + 1, || format!("Δ^{n}: {m:?}"));
    }
    for n in 2..=5u64 {
        let m = plain(&format!("boundary:{n}")).1.metrics();
        o.check(m.h == (n + 1) * ((1 << n) - 2), || format!("∂Δ^{n}: {m:?}"));
    }
    for n in 1..=3u64 {
        let m = plain(&format!("cross:{n}")).1.metrics();
        let want: u64 = (1..=n).map(|k| binomial(n + 1, k + 1) * (1 << (k + 1)) * (k + 1)).sum();
        o.check(m.h == want, || format!("O_{n}: h = {} vs {want}", m.h));
    }
    let m = plain("icosahedron").1.metrics();
    o.check((m.h, m.d) == (120, 5), || format!("icosahedron: {m:?}"));
    o
}

fn criterion_3(entries: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new();
    let mut literal_differs = Vec::new();
    for e in entries.iter().filter(|e| e.omega.is_empty()) {
        let r = verify_h_d_observation(&e.complex).unwrap();
        o.check(r.holds(), || format!("{}: {r:?}", e.name));
        if r.d_one_skeleton_hasse != r.d_direct {
            literal_differs.push(e.name.clone());
        }
    }
    o.note(format!(
        "d read in H(K) at 0- and 1-simplices; the separate 1-skeleton complex differs on {} entries",
        literal_differs.len()
    ));
    o
}

/// Augmenting-path maximum matching, returned as edge indices.
fn kuhn(h: &HasseDiagram) -> Vec<u32> {
    let n = h.nodes().len();
    let mut mate_up: Vec<Option<(usize, u32)>> = vec![None; n];
    fn augment(
        a: usize,
        adj: &[Vec<(usize, u32)>],
        seen: &mut [bool],
        mate_up: &mut [Option<(usize, u32)>],
    ) -> bool {
        for &(b, e) in &adj[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if mate_up[b].is_none_or(|(a2, _)| augment(a2, adj, seen, mate_up)) {
                mate_up[b] = Some((a, e));
                return true;
            }
        }
        false
    }
    // even-dimensional simplices on one side
    let left: Vec<usize> = (0..n).filter(|&v| h.nodes()[v].dim() % 2 == 0).collect();
    let mut bip = vec![Vec::new(); n];
    for &(a, b) in h.edges() {
        let e = h.edge_index(a, b).unwrap();
        let (l, r) = if h.nodes()[a as usize].dim() % 2 == 0 { (a, b) } else { (b, a) };
        bip[l as usize].push((r as usize, e));
    }
    for &l in &left {
        let mut seen = vec![false; n];
        augment(l, &bip, &mut seen, &mut mate_up);
    }
    let mut out: Vec<u32> = mate_up.iter().flatten().map(|&(_, e)| e).collect();
    out.sort_unstable();
    out
}

fn criterion_4(entries: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new();
    let mut exhaustive = 0;
    for e in entries {
        let h = hasse(e);
        let m = h.metrics();
        if m.h == 0 {
            continue;
        }
        let witness = kuhn(&h);
        let mm = h.max_matching_size();
        let mut used = BTreeSet::new();
        let is_matching = witness
            .iter()
            .all(|&i| {
                let (a, b) = h.edges()[i as usize];
                used.insert(a) && used.insert(b)
            });
        o.check(is_matching && witness.len() == mm, || format!("{}: witness {} vs {mm}", e.name, witness.len()));
        o.check(mm as u64 >= m.h.div_ceil(m.d), || format!("{}: {mm} < ⌈{}/{}⌉", e.name, m.h, m.d));
        // any matching of size k + 1 is a k-simplex of GM
        let k = (m.h - 1) / m.d;
        o.check(witness.len() as u64 > k, || format!("{}: no {k}-simplex", e.name));
        let v = morsecx_core::DiscreteVectorField::new(witness.iter().map(|&i| h.edge_pair(i)));
        o.check(v.is_ok(), || format!("{}: witness is not a vector field", e.name));
        if m.h <= 16 {
            exhaustive += 1;
            let mut brute = BTreeSet::new();
            let mut best = 0;
            for mask in 1u32..(1 << m.h) {
                let mut seen = BTreeSet::new();
                let ok = (0..m.h as usize)
                    .filter(|i| mask >> i & 1 == 1)
                    .all(|i| {
                        let (a, b) = h.edges()[i];
                        seen.insert(a) && seen.insert(b)
                    });
                if ok {
                    best = best.max(mask.count_ones() as usize);
                    brute.insert(mask);
                }
            }
            let gm = gm_par(&h, BUDGET).unwrap().complex;
            let ours: BTreeSet<u32> = gm
                .iter()
                .map(|s| s.vertices().iter().fold(0u32, |acc, &i| acc | 1 << i))
                .collect();
            o.check(best == mm && ours == brute, || format!("{}: exhaustive oracle disagrees", e.name));
        }
    }
    o.note(format!("exhaustive matching oracle on {exhaustive} diagrams with at most 16 edges"));
    o
}

fn criterion_5(entries: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new();
    let (mut checked, mut skipped) = (Vec::new(), Vec::new());
    for e in entries {
        let r = connectivity_report(&e.complex, &e.omega).unwrap();
        let h = hasse(e);
        match m_par(&h, BUDGET) {
            Ok(m) => match homological_connectivity(&m.complex, DEFAULT_HOMOLOGY_BUDGET) {
                Ok(c) => {
                    if let Some(b) = r.bound_m {
                        o.check(c.vanishes_through(b), || format!("{}: M claimed {b}, measured {c:?}", e.name));
                    }
                    checked.push(e.name.clone());
                }
                Err(_) => skipped.push(e.name.clone()),
            },
            Err(Error::Budget { .. }) => skipped.push(e.name.clone()),
            Err(err) => o.check(false, || format!("{}: {err}", e.name)),
        }
        if let Some(b) = r.bound_gm {
            if let Ok(gm) = gm_par(&h, BUDGET) {
                if let Ok(c) = homological_connectivity(&gm.complex, DEFAULT_HOMOLOGY_BUDGET) {
                    o.check(c.vanishes_through(b), || format!("{}: GM claimed {b}, measured {c:?}", e.name));
                    let g = r.bound_gm_grounded.unwrap_or(-2);
                    o.check(c.vanishes_through(g), || format!("{}: GM grounded {g}, measured {c:?}", e.name));
                }
            }
        }
    }
    o.note(format!("M checked on {} entries; over budget ({BUDGET} simplices): {}", checked.len(), skipped.join(", ")));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    for n in 3..=5usize {
        let (_, h) = plain(&format!("complete:{n}"));
        match m_par(&h, BUDGET) {
            Ok(m) => {
                let (a, b) = betti_both(&m.complex);
                let shape = a.iter().enumerate().all(|(k, &x)| (x != 0) == (k + 2 == n));
                o.check(shape && a == b, || format!("M(K_{n}): {a:?} / {b:?}"));
                o.note(format!("M(K_{n}): b̃_{} = {}", n - 2, a[n - 2]));
            }
            Err(e) => o.note(format!("M(K_{n}) skipped: {e}")),
        }
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let mut cases: Vec<(String, SimplicialComplex, ExclusionSet)> = ["boundary:2", "simplex:2", "cycle:4", "cycle:5", "cycle:6", "complete:4"]
        .iter()
        .chain(["path:1", "path:2", "path:3", "path:4", "path:5", "path:6"].iter())
        .map(|s| (s.to_string(), generate_spec(s).unwrap(), ExclusionSet::empty()))
        .collect();
    cases.push((
        "simplex:2 rel top".into(),
        generate_spec("simplex:2").unwrap(),
        ExclusionSet::new([Simplex::new([0, 1, 2]).unwrap()]),
    ));
    let mut totals = morsecx_core::morse_theory::LemmaReport::default();
    for (name, k, omega) in cases {
        let ctx = bb_context_par(&k, &omega, BUDGET, DEFAULT_CYCLE_BUDGET).unwrap();
        let r = verify_par(&ctx);
        o.check(r.passed(), || format!("{name}: {:?}", r.failures));
        totals.merge(r);
    }
    o.check(totals.cone_certificates > 0, || "no face-link cone exercised".into());
    o.check(totals.sphere_checks > 0, || "no face-link sphere exercised".into());
    o.check(totals.iso_checks > 0, || "no coface-link isomorphism exercised".into());
    o.check(totals.one_cycle_checks > 0, || "no one-cycle check exercised".into());
    o.note(format!(
        "swept {} vertices: {} cones, {} spheres, {} isomorphisms, {} one-cycle, {} joins",
        totals.vertices_swept,
        totals.cone_certificates,
        totals.sphere_checks,
        totals.iso_checks,
        totals.one_cycle_checks,
        totals.join_checks
    ));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for spec in ["boundary:2", "cycle:4"] {
        let k = generate_spec(spec).unwrap();
        let ctx = bb_context_par(&k, &ExclusionSet::empty(), BUDGET, DEFAULT_CYCLE_BUDGET).unwrap();
        let c = ctx
            .morse_lemma_check(Level::Finite(0), Level::Infinite, DEFAULT_HOMOLOGY_BUDGET)
            .unwrap();
        o.check(c.holds(), || format!("{spec}: {c:?}"));
        o.note(format!(
            "{spec}: b̃ {:?} -> {:?} across {} descending links",
            c.betti_t.reduced_betti, c.betti_s.reduced_betti, c.links
        ));
        if spec == "boundary:2" {
            o.check(c.betti_t.get(1) == 4 && c.betti_s.get(1) == 2 && c.links == 2, || {
                format!("∂Δ²: b̃₁ {} -> {}, {} links", c.betti_t.get(1), c.betti_s.get(1), c.links)
            });
            // each link is the boundary of a 2-simplex of GM, a circle that is coned off
            for i in ctx.cyclic_vertices() {
                let lk = ctx.descending_links(i).unwrap().descending_link();
                let b = reduced_betti(&lk, Field::Gf2, DEFAULT_HOMOLOGY_BUDGET).unwrap();
                o.check(b.reduced_betti == [0, 1], || format!("∂Δ² link b̃ = {:?}", b.reduced_betti));
            }
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=50u64 {
        for e in 1..=500u64 {
            o.check(graph_bound(e, d) == gm_connectivity_bound(2 * e, d), || format!("|E| = {e}, d = {d}"));
        }
        for h in 1..=500u64 {
            let b = gm_connectivity_bound(h, d).unwrap();
            o.check((b >= 0) == (h >= 2 * d + 1), || format!("connected threshold at h = {h}, d = {d}"));
            o.check((b >= 1) == (h >= 4 * d + 1), || format!("simply connected threshold at h = {h}, d = {d}"));
        }
    }
    o
}

fn run_cli(args: &[&str], stdin: &str) -> (bool, Vec<u8>, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_morsecx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.success(), out.stdout, out.stderr)
}

fn criterion_10(entries: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new();
    let budget = "200000";
    let mut runs = 0;
    for e in entries {
        let text = emit_document(&morsecx::format::ComplexDocument {
            comments: vec![e.name.clone()],
            complex: e.complex.clone(),
            omega: e.omega.clone(),
        });
        let gm_size = gm_par(&hasse(e), 20_000).map_or(usize::MAX, |g| g.complex.num_simplices());
        let mut outputs: Vec<Vec<(bool, Vec<u8>, Vec<u8>)>> = Vec::new();
        for threads in ["1", "2", "8"] {
            let common = ["--no-timings", "--threads", threads, "--budget", budget];
            let mut per = Vec::new();
            for cmd in ["hasse", "bounds", "gm", "morse"] {
                per.push(run_cli(&[&[cmd, "-"][..], &common].concat(), &text));
            }
            let (ok, m, _) = per[3].clone();
            if ok {
                per.push(run_cli(&[&["betti", "-"][..], &common].concat(), &String::from_utf8(m).unwrap()));
            }
            if gm_size <= 6_000 {
                let lemma: &[&str] = if gm_size <= 1_000 { &["verify", "-", "--morse-lemma"] } else { &["verify", "-"] };
                per.push(run_cli(&[lemma, &common].concat(), &text));
            }
            outputs.push(per);
        }
        runs += outputs.iter().map(Vec::len).sum::<usize>();
        o.check(outputs[0] == outputs[1] && outputs[1] == outputs[2], || format!("{}: output depends on threads", e.name));
    }
    o.note(format!("{runs} runs compared"));
    o
}

fn main() {
    let entries = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("figure-exact small complexes", Box::new(criterion_1)),
        ("Hasse closed forms", Box::new(criterion_2)),
        ("observation h, d on the corpus", Box::new(|| criterion_3(&entries))),
        ("König bound, grounding simplex, matching oracle", Box::new(|| criterion_4(&entries))),
        ("bound soundness via homology", Box::new(|| criterion_5(&entries))),
        ("M(K_n) is a wedge of (n-2)-spheres", Box::new(criterion_6)),
        ("descending-link lemma sweeps", Box::new(criterion_7)),
        ("Morse Lemma consistency", Box::new(criterion_8)),
        ("threshold arithmetic", Box::new(criterion_9)),
        ("determinism across 1, 2, 8 threads", Box::new(|| criterion_10(&entries))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Outcome {
            ok: false,
            notes: vec!["panicked".into()],
        });
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status}  {name} ({:.1} s)", i + 1, start.elapsed().as_secs_f64());
        for n in out.notes.iter().take(12) {
            println!("    {n}");
        }
        failed += usize::from(!out.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
