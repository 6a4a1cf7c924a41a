//! Text formats for complexes, exclusion sets and vector fields.
//!
//! A complex file lists simplices one per line as whitespace-separated
//! vertex ids; the complex is their downward closure. Lines starting with
//! `#` are comments, blank lines are ignored. A line consisting of `%omega`
//! starts the exclusion section, whose lines are taken literally.

use std::fmt::Write as _;

use morsecx_core::{ExclusionSet, PrimitiveDvf, Simplex, SimplicialComplex, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] morsecx_core::Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplexDocument {
    /// Leading comment lines without the `#`.
    pub comments: Vec<String>,
    pub complex: SimplicialComplex,
    pub omega: ExclusionSet,
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_simplex(line_no: usize, text: &str) -> Result<Simplex> {
    let mut vs: Vec<Vertex> = Vec::new();
    for tok in text.split_whitespace() {
        let v: Vertex = tok
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{tok}` is not a vertex id")))?;
        if vs.contains(&v) {
            return Err(parse_err(line_no, format!("vertex {v} repeated")));
        }
        vs.push(v);
    }
    if vs.is_empty() {
        return Err(parse_err(line_no, "empty simplex"));
    }
    Ok(Simplex::new(vs)?)
}

/// Non-comment lines as simplices, with their 1-based line numbers.
fn simplex_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_complex(text: &str) -> Result<ComplexDocument> {
    let comments = text
        .lines()
        .map(str::trim)
        .take_while(|l| l.is_empty() || l.starts_with('#'))
        .filter_map(|l| l.strip_prefix('#'))
        .map(|l| l.trim().to_string())
        .collect();
    let mut simplices = Vec::new();
    let mut omega = Vec::new();
    let mut in_omega = false;
    for (n, line) in simplex_lines(text) {
        if line == "%omega" {
            if in_omega {
                return Err(parse_err(n, "second %omega section"));
            }
            in_omega = true;
            continue;
        }
        let s = parse_simplex(n, line)?;
        if in_omega {
            omega.push(s);
        } else {
            simplices.push(s);
        }
    }
    let complex = SimplicialComplex::from_simplices(simplices);
    let omega = ExclusionSet::new(omega);
    omega.validate(&complex)?;
    Ok(ComplexDocument {
        comments,
        complex,
        omega,
    })
}

/// An exclusion set given as file contents, or inline as
/// semicolon-separated simplices such as `"1 2 3; 1 2"`.
pub fn parse_omega(text: &str, inline: bool) -> Result<ExclusionSet> {
    let mut out = Vec::new();
    if inline {
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            out.push(parse_simplex(1, part)?);
        }
    } else {
        for (n, line) in simplex_lines(text).filter(|(_, l)| *l != "%omega") {
            out.push(parse_simplex(n, line)?);
        }
    }
    Ok(ExclusionSet::new(out))
}

/// A vector field as pairs of lines: the face `σ`, then the coface `τ`.
pub fn parse_matching(text: &str) -> Result<Vec<PrimitiveDvf>> {
    let lines: Vec<(usize, &str)> = simplex_lines(text).collect();
    if lines.len() % 2 == 1 {
        let (n, _) = lines[lines.len() - 1];
        return Err(parse_err(n, "pair is missing its coface line"));
    }
    lines
        .chunks(2)
        .map(|c| {
            let sigma = parse_simplex(c[0].0, c[0].1)?;
            let tau = parse_simplex(c[1].0, c[1].1)?;
            PrimitiveDvf::new(sigma, tau).map_err(|e| parse_err(c[0].0, e.to_string()))
        })
        .collect()
}

fn push_simplex(out: &mut String, s: &Simplex) {
    for (i, v) in s.vertices().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

fn sorted(mut v: Vec<Simplex>) -> Vec<Simplex> {
    v.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    v
}

/// Canonical text: comments, maximal simplices in lexicographic order,
/// then the exclusion section if non-empty.
pub fn emit_document(doc: &ComplexDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    for s in sorted(doc.complex.maximal_simplices()) {
        push_simplex(&mut out, &s);
    }
    if !doc.omega.is_empty() {
        out.push_str("%omega\n");
        for s in sorted(doc.omega.iter().cloned().collect()) {
            push_simplex(&mut out, &s);
        }
    }
    out
}

pub fn emit_complex(k: &SimplicialComplex) -> String {
    emit_document(&ComplexDocument {
        complex: k.clone(),
        ..Default::default()
    })
}

pub fn emit_matching(pairs: &[PrimitiveDvf]) -> String {
    let mut out = String::new();
    for p in pairs {
        push_simplex(&mut out, p.sigma());
        push_simplex(&mut out, p.tau());
    }
    out
}
