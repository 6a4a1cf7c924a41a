//! Named complexes: the `gen` spec syntax and the built-in corpus.
//!
//! Specs look like `simplex:3`, `boundary:2`, `cross:2`, `icosahedron`,
//! `complete:4`, `bipartite:3,3`, `cycle:5`, `path:4`, `cube:3`, and any of
//! these prefixed by `sd<k>:` for the `k`-fold barycentric subdivision.

use morsecx_core::generate::{generate, iterated_subdivision, Family};
use morsecx_core::{Error, ExclusionSet, Result, Simplex, SimplicialComplex};

fn bad(spec: &str, why: &str) -> Error {
    Error::Domain(format!("bad complex spec `{spec}`: {why}"))
}

pub fn parse_family(spec: &str) -> Result<Family> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<u32> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse().map_err(|_| bad(spec, "arguments must be integers")))
            .collect::<Result<_>>()?
    };
    let one = || match nums.as_slice() {
        [n] => Ok(*n),
        _ => Err(bad(spec, "expected one argument")),
    };
    Ok(match name {
        "simplex" => Family::Simplex(one()?),
        "boundary" => Family::BoundarySimplex(one()?),
        "cross" => Family::Hyperoctahedron(one()?),
        "icosahedron" if nums.is_empty() => Family::IcosahedronBoundary,
        "complete" => Family::CompleteGraph(one()?),
        "bipartite" => match nums.as_slice() {
            [p, q] => Family::CompleteBipartite(*p, *q),
            _ => return Err(bad(spec, "expected two arguments")),
        },
        "cycle" => Family::CycleGraph(one()?),
        "path" => Family::PathGraph(one()?),
        "cube" => Family::HypercubeGraph(one()?),
        _ => return Err(bad(spec, "unknown family")),
    })
}

pub fn generate_spec(spec: &str) -> Result<SimplicialComplex> {
    if let Some(rest) = spec.strip_prefix("sd") {
        if let Some((k, inner)) = rest.split_once(':') {
            if let Ok(k) = k.parse::<u32>() {
                return iterated_subdivision(&generate_spec(inner)?, k);
            }
        }
    }
    generate(parse_family(spec)?)
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    pub omega: ExclusionSet,
}

fn entry(spec: &str) -> CorpusEntry {
    CorpusEntry {
        name: spec.to_string(),
        complex: generate_spec(spec).expect("corpus spec"),
        omega: ExclusionSet::empty(),
    }
}

pub fn corpus_specs() -> Vec<String> {
    let mut specs = Vec::new();
    specs.extend((1..=4).map(|n| format!("simplex:{n}")));
    specs.extend((1..=4).map(|n| format!("boundary:{n}")));
    specs.extend((0..=3).map(|n| format!("cross:{n}")));
    specs.push("icosahedron".into());
    specs.extend((1..=5).map(|n| format!("complete:{n}")));
    for p in 1..=4 {
        for q in p..=4 {
            specs.push(format!("bipartite:{p},{q}"));
        }
    }
    specs.extend((3..=8).map(|n| format!("cycle:{n}")));
    specs.extend((1..=3).map(|n| format!("cube:{n}")));
    specs.extend((1..=6).map(|n| format!("path:{n}")));
    specs.extend(["sd1:simplex:2", "sd2:simplex:1", "sd3:simplex:1"].map(String::from));
    specs
}

/// Every example family at small size, plus the relative triangle.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = corpus_specs().iter().map(|s| entry(s)).collect();
    let mut rel = entry("simplex:2");
    rel.name = "simplex:2 rel top".into();
    rel.omega = ExclusionSet::new([Simplex::new([0, 1, 2]).unwrap()]);
    out.push(rel);
    out
}
