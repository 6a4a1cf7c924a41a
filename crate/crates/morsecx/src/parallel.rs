//! Multi-threaded drivers. Work is split into tasks whose results are
//! concatenated in task order, so output does not depend on thread count.

use rayon::prelude::*;

use morsecx_core::graph::AllMatchings;
use morsecx_core::morse_complex::{assemble, collect_matchings, dictionary, AcyclicFilter};
use morsecx_core::morse_theory::{BbContext, LemmaReport};
use morsecx_core::vector_field::HasseFlow;
use morsecx_core::{
    Error, ExclusionSet, HasseDiagram, MatchingComplexResult, PrimitiveDvf, Result, Simplex,
    SimplicialComplex,
};

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

fn over_budget(budget: usize) -> Error {
    Error::Budget {
        resource: "simplex",
        limit: budget,
        reached: budget + 1,
    }
}

fn matchings(hasse: &HasseDiagram, acyclic: bool, budget: usize) -> Result<Vec<Simplex>> {
    let parts: Vec<Result<Vec<Simplex>>> = (0..hasse.edges().len())
        .into_par_iter()
        .map(|first| {
            let range = first..first + 1;
            if acyclic {
                collect_matchings(hasse.graph(), range, &mut AcyclicFilter::new(hasse), budget)
            } else {
                collect_matchings(hasse.graph(), range, &mut AllMatchings, budget)
            }
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        match p {
            Ok(v) => out.extend(v),
            Err(Error::Budget { .. }) => return Err(over_budget(budget)),
            Err(e) => return Err(e),
        }
        if out.len() > budget {
            return Err(over_budget(budget));
        }
    }
    Ok(out)
}

pub fn gm_par(hasse: &HasseDiagram, budget: usize) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    Ok(assemble(matchings(hasse, false, budget)?, dictionary(hasse)))
}

pub fn m_par(hasse: &HasseDiagram, budget: usize) -> Result<MatchingComplexResult<PrimitiveDvf>> {
    Ok(assemble(matchings(hasse, true, budget)?, dictionary(hasse)))
}

pub fn phi_par(hasse: &HasseDiagram, simplices: &[Simplex], cycle_budget: usize) -> Result<Vec<u32>> {
    simplices
        .par_iter()
        .map_init(
            || HasseFlow::new(hasse),
            |flow, s| flow.phi(s.vertices(), cycle_budget).map(|p| p as u32),
        )
        .collect()
}

/// The same context as [`BbContext::new`], built in parallel.
pub fn bb_context_par(
    k: &SimplicialComplex,
    omega: &ExclusionSet,
    simplex_budget: usize,
    cycle_budget: usize,
) -> Result<BbContext> {
    let hasse = HasseDiagram::build(k, omega)?;
    let found = matchings(&hasse, false, simplex_budget)?;
    let simplices: Vec<Simplex> = SimplicialComplex::from_closed_unchecked(found).iter().cloned().collect();
    let phi = phi_par(&hasse, &simplices, cycle_budget)?;
    Ok(BbContext::from_parts(
        k.clone(),
        omega.clone(),
        hasse,
        simplices,
        phi,
        simplex_budget,
        cycle_budget,
    ))
}

/// Lemma sweep over the cyclic vertices, merged in canonical order.
pub fn verify_par(ctx: &BbContext) -> LemmaReport {
    let parts: Vec<LemmaReport> = ctx
        .cyclic_vertices()
        .into_par_iter()
        .map(|i| {
            let mut r = LemmaReport::default();
            ctx.verify_vertex(i, &mut r);
            r
        })
        .collect();
    let mut out = LemmaReport::default();
    for p in parts {
        out.merge(p);
    }
    out
}
