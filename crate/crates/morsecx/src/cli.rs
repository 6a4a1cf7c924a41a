//! Command-line surface. Every command returns its output as a string so
//! the binary and the tests share one code path.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use morsecx_core::bounds::{conjecture_probe, connectivity_report};
use morsecx_core::homology::{euler_characteristic, reduced_betti, DEFAULT_HOMOLOGY_BUDGET};
use morsecx_core::morse_theory::Level;
use morsecx_core::vector_field::{simple_cycles, DEFAULT_CYCLE_BUDGET};
use morsecx_core::{
    DiscreteVectorField, ExclusionSet, Field, HasseDiagram, SimplicialComplex, DEFAULT_SIMPLEX_BUDGET,
};

use crate::corpus::{corpus_specs, generate_spec};
use crate::format::{emit_complex, emit_document, parse_complex, parse_matching, parse_omega, ComplexDocument, FormatError};
use crate::parallel::{bb_context_par, gm_par, m_par, verify_par, with_threads};
use crate::report::{
    digest, simplex, to_json, BettiView, BoundsView, CycleView, CyclesView, HasseView, LemmaView,
    MatchingComplexView, MorseLemmaView, PairView, ProbeView, RunReport, Sidecar, Stopwatch, TOOL,
};

#[derive(Parser, Debug)]
#[command(name = "morsecx", version, about = "Morse complexes of finite simplicial complexes")]
pub struct Cli {
    /// Exclusion set: a file in complex format, or inline simplices such as "0 1 2;1 2".
    #[arg(long, global = true)]
    pub omega: Option<String>,
    /// Cap on simplices produced by exponential constructions.
    #[arg(long, global = true, default_value_t = DEFAULT_SIMPLEX_BUDGET)]
    pub budget: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave timings out of JSON reports.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named complex such as simplex:3 or sd2:cycle:5; `list` shows the corpus.
    Gen { spec: String },
    /// Hasse diagram of (K, Ω).
    Hasse {
        input: String,
        /// Print the adjacency lists as text.
        #[arg(long)]
        adjacency: bool,
    },
    /// Generalized Morse complex GM(K, Ω).
    Gm {
        input: String,
        /// Write the vertex dictionary and f-vector here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Morse complex M(K, Ω).
    Morse {
        input: String,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Simple V-cycles of a vector field.
    Cycles {
        input: String,
        /// File of pairs: a face line followed by a coface line.
        #[arg(long)]
        matching: String,
    },
    /// Reduced Betti numbers.
    Betti {
        input: String,
        #[arg(long, value_enum, default_value_t = FieldArg::Gf2)]
        field: FieldArg,
    },
    /// Connectivity bounds for GM and M.
    Bounds { input: String },
    /// Descending-link lemma sweep over GM(K, Ω).
    Verify {
        input: String,
        /// Also compare sublevel homology with the Morse Lemma.
        #[arg(long)]
        morse_lemma: bool,
    },
    /// Test the conjectured bound h >= 2md + 1 on one complex.
    ProbeConjecture {
        input: String,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldArg {
    Gf2,
    Q,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Gf2 => Field::Gf2,
            FieldArg::Q => Field::Rational,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] morsecx_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use morsecx_core::Error as E;
        let message = self.to_string();
        let core = match self {
            CliError::Core(e) | CliError::Format(FormatError::Core(e)) => Some(e),
            _ => None,
        };
        let mut obj = match (self, core) {
            (CliError::Usage(_), _) => json!({ "kind": "usage" }),
            (CliError::Io { path, .. }, _) => json!({ "kind": "io", "path": path }),
            (CliError::Format(FormatError::Parse { line, .. }), _) => json!({ "kind": "parse", "line": line }),
            (_, Some(E::Budget { resource, limit, reached })) => {
                json!({ "kind": "budget", "resource": resource, "limit": limit, "reached": reached })
            }
            (_, Some(E::NotInComplex(v))) => json!({
                "kind": "not_in_complex",
                "simplices": v.iter().map(simplex).collect::<Vec<_>>(),
            }),
            (_, Some(e)) => json!({ "kind": e.kind() }),
            _ => unreachable!(),
        };
        obj["message"] = message.into();
        json!({ "error": obj })
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_source(path: &str) -> Result<Vec<u8>> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    };
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn utf8(path: &str, bytes: &[u8]) -> Result<String> {
    String::from_utf8(bytes.to_vec()).map_err(|_| CliError::Io {
        path: path.to_string(),
        message: "not valid UTF-8".into(),
    })
}

struct Input {
    doc: ComplexDocument,
    digest: String,
    extra: Vec<u8>,
}

impl Input {
    fn complex(&self) -> &SimplicialComplex {
        &self.doc.complex
    }

    fn omega(&self) -> &ExclusionSet {
        &self.doc.omega
    }
}

fn load(path: &str, omega: Option<&str>, extra: Option<&str>) -> Result<Input> {
    let bytes = read_source(path)?;
    let mut doc = parse_complex(&utf8(path, &bytes)?)?;
    let mut omega_bytes = Vec::new();
    if let Some(o) = omega {
        let file = Path::new(o).is_file();
        let set = if file {
            omega_bytes = read_source(o)?;
            parse_omega(&utf8(o, &omega_bytes)?, false)?
        } else {
            omega_bytes = o.as_bytes().to_vec();
            parse_omega(o, true)?
        };
        set.validate(&doc.complex)?;
        doc.omega = doc.omega.union(set.iter().cloned());
    }
    let extra_bytes = match extra {
        Some(p) => read_source(p)?,
        None => Vec::new(),
    };
    Ok(Input {
        doc,
        digest: digest(&[&bytes, &omega_bytes, &extra_bytes]),
        extra: extra_bytes,
    })
}

struct Ctx<'a> {
    cli: &'a Cli,
    watch: Stopwatch,
}

impl Ctx<'_> {
    fn report<T: Serialize>(self, command: &str, input_digest: String, result: T) -> String {
        let timings_ms = (!self.cli.no_timings).then(|| self.watch.into_map());
        to_json(&RunReport {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input_digest,
            timings_ms,
            result,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Result<String>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Ok(e.to_string()),
            _ => Err(CliError::Usage(e.to_string())),
        },
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    if cli.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    with_threads(cli.threads, || dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<String> {
    let mut ctx = Ctx {
        cli,
        watch: Stopwatch::default(),
    };
    let omega = cli.omega.as_deref();
    let budget = cli.budget;
    match &cli.command {
        Command::Gen { spec } => {
            if spec == "list" {
                let mut out = corpus_specs().join("\n");
                out.push('\n');
                return Ok(out);
            }
            let k = generate_spec(spec)?;
            let mut doc = ComplexDocument {
                comments: vec![spec.clone()],
                complex: k,
                omega: ExclusionSet::empty(),
            };
            if let Some(o) = omega {
                let set = parse_omega(o, true)?;
                set.validate(&doc.complex)?;
                doc.omega = set;
            }
            ctx.watch.lap("generate");
            if cli.json {
                let result = json!({
                    "spec": spec,
                    "f_vector": doc.complex.f_vector(),
                    "maximal_simplices": sorted_maximal(&doc.complex),
                    "omega": doc.omega.iter().map(simplex).collect::<Vec<_>>(),
                });
                Ok(ctx.report("gen", digest(&[spec.as_bytes()]), result))
            } else {
                Ok(emit_document(&doc))
            }
        }
        Command::Hasse { input, adjacency } => {
            let inp = load(input, omega, None)?;
            let hasse = HasseDiagram::build(inp.complex(), inp.omega())?;
            ctx.watch.lap("hasse");
            if *adjacency && !cli.json {
                return Ok(hasse.adjacency_text());
            }
            let view = HasseView::new(&hasse, *adjacency);
            Ok(ctx.report("hasse", inp.digest, view))
        }
        Command::Gm { input, sidecar } | Command::Morse { input, sidecar } => {
            let acyclic = matches!(cli.command, Command::Morse { .. });
            let name = if acyclic { "morse" } else { "gm" };
            let inp = load(input, omega, None)?;
            let hasse = HasseDiagram::build(inp.complex(), inp.omega())?;
            ctx.watch.lap("hasse");
            let mc = if acyclic { m_par(&hasse, budget)? } else { gm_par(&hasse, budget)? };
            ctx.watch.lap("enumerate");
            let side = Sidecar {
                complex: if acyclic { "M" } else { "GM" },
                f_vector: mc.complex.f_vector(),
                vertex_dictionary: mc.vertex_dictionary.iter().map(PairView::from).collect(),
            };
            if let Some(path) = sidecar {
                std::fs::write(path, to_json(&side)).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            if cli.json {
                let view = MatchingComplexView {
                    sidecar: side,
                    maximal_simplices: sorted_maximal(&mc.complex),
                };
                Ok(ctx.report(name, inp.digest, view))
            } else {
                Ok(emit_complex(&mc.complex))
            }
        }
        Command::Cycles { input, matching } => {
            let inp = load(input, omega, Some(matching))?;
            let pairs = parse_matching(&utf8(matching, &inp.extra)?)?;
            let v = DiscreteVectorField::new(pairs)?;
            v.check_on(inp.complex(), inp.omega())?;
            let cycles = simple_cycles(&v, DEFAULT_CYCLE_BUDGET)?;
            ctx.watch.lap("cycles");
            if cli.json {
                let view = CyclesView {
                    pairs: v.len(),
                    phi: cycles.len(),
                    cycles: cycles.iter().map(CycleView::from).collect(),
                };
                return Ok(ctx.report("cycles", inp.digest, view));
            }
            let mut out = format!("phi {}\n", cycles.len());
            for c in &cycles {
                let parts: Vec<String> = c
                    .sigmas()
                    .iter()
                    .zip(c.taus())
                    .map(|(s, t)| format!("{s} < {t}"))
                    .collect();
                out.push_str(&parts.join(" > "));
                out.push_str(&format!(" > {}\n", c.sigmas()[0]));
            }
            Ok(out)
        }
        Command::Betti { input, field } => {
            let inp = load(input, omega, None)?;
            let k = inp.complex();
            let b = reduced_betti(k, (*field).into(), homology_budget(budget))?;
            ctx.watch.lap("homology");
            let view = BettiView::new(&b, k.f_vector(), euler_characteristic(k));
            Ok(ctx.report("betti", inp.digest, view))
        }
        Command::Bounds { input } => {
            let inp = load(input, omega, None)?;
            let r = connectivity_report(inp.complex(), inp.omega())?;
            ctx.watch.lap("bounds");
            Ok(ctx.report("bounds", inp.digest, BoundsView::from(&r)))
        }
        Command::Verify { input, morse_lemma } => {
            let inp = load(input, omega, None)?;
            let bb = bb_context_par(inp.complex(), inp.omega(), budget, DEFAULT_CYCLE_BUDGET)?;
            ctx.watch.lap("phi");
            let report = verify_par(&bb);
            ctx.watch.lap("sweep");
            let lemma = if *morse_lemma {
                let mut levels: Vec<u64> = bb.phi().iter().map(|&p| p as u64).collect();
                levels.sort_unstable();
                levels.dedup();
                let mut steps: Vec<Level> = levels.iter().map(|&p| Level::Finite(p)).collect();
                steps.push(Level::Infinite);
                if !steps.contains(&Level::Finite(0)) {
                    steps.insert(0, Level::Finite(0));
                }
                let mut checks = Vec::new();
                for w in steps.windows(2) {
                    checks.push(MorseLemmaView::from(&bb.morse_lemma_check(w[0], w[1], homology_budget(budget))?));
                }
                ctx.watch.lap("morse_lemma");
                Some(checks)
            } else {
                None
            };
            let view = LemmaView::new(bb.simplices().len(), &report, lemma);
            Ok(ctx.report("verify", inp.digest, view))
        }
        Command::ProbeConjecture { input, m } => {
            let inp = load(input, omega, None)?;
            if !inp.omega().is_empty() {
                return Err(CliError::Usage("probe-conjecture takes no exclusion set".into()));
            }
            let p = conjecture_probe(inp.complex(), *m, budget, homology_budget(budget))?;
            ctx.watch.lap("probe");
            Ok(ctx.report("probe-conjecture", inp.digest, ProbeView::from(&p)))
        }
    }
}

fn homology_budget(budget: usize) -> usize {
    budget.max(DEFAULT_HOMOLOGY_BUDGET)
}

fn sorted_maximal(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = k.maximal_simplices().iter().map(simplex).collect();
    v.sort();
    v
}

