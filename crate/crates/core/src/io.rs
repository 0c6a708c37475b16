//! Facet-list text format and the derived-vertex sidecar table.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::subdivision::SubdividedComplex;

/// Parses one facet per line; `#` starts a comment, blank lines are skipped.
pub fn parse_complex_str(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut facet = Vec::new();
        let mut rest = content;
        let mut col = 0;
        loop {
            let skip = rest.len() - rest.trim_start().len();
            col += skip;
            rest = &rest[skip..];
            if rest.is_empty() {
                break;
            }
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tok = &rest[..end];
            let v: u32 = tok.parse().map_err(|_| Error::ParseError {
                line: ln + 1,
                column: col + 1,
                message: format!("expected a vertex id, found `{tok}`"),
            })?;
            if facet.contains(&v) {
                return Err(Error::ParseError {
                    line: ln + 1,
                    column: col + 1,
                    message: format!("vertex {v} repeated within a facet"),
                });
            }
            facet.push(v);
            col += end;
            rest = &rest[end..];
        }
        if !facet.is_empty() {
            facets.push(facet);
        }
    }
    SimplicialComplex::from_facets(&facets)
}

pub fn parse_complex_file(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_complex_str(&text)
}

/// Writes the maximal simplices in canonical order.
pub fn serialize_complex(x: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in x.facets() {
        write_simplex(&mut out, f);
    }
    out
}

fn write_simplex(out: &mut String, s: &Simplex) {
    let parts: Vec<String> = s.vertices().iter().map(u32::to_string).collect();
    out.push_str(&parts.join(" "));
    out.push('\n');
}

/// One line per derived vertex: its id, a colon, then the vertices of its base simplex.
pub fn serialize_sidecar(s: &SubdividedComplex) -> String {
    let mut out = String::new();
    for v in s.derived().vertex_ids() {
        let base = s.barycenter_of(v).expect("every derived vertex has a base simplex");
        let parts: Vec<String> = base.vertices().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{v}: {}", parts.join(" "));
    }
    out
}

/// Reads a sidecar table back into `(derived id, base simplex)` pairs.
pub fn parse_sidecar(text: &str) -> Result<Vec<(u32, Simplex)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::ParseError { line: ln + 1, column: 1, message: message.to_string() };
        let (id, rest) = line.split_once(':').ok_or_else(|| err("missing `:`"))?;
        let id: u32 = id.trim().parse().map_err(|_| err("bad derived vertex id"))?;
        let verts: Vec<u32> =
            rest.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| err("bad vertex id"))?;
        if verts.is_empty() {
            return Err(err("empty base simplex"));
        }
        out.push((id, Simplex::new(&verts).map_err(|e| err(&e.to_string()))?));
    }
    Ok(out)
}
