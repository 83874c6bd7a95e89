//! Facet-list text and JSON formats.
//!
//! Text: one facet per line as whitespace separated labels; lines starting
//! with `#` are comments, blank lines are ignored. JSON: `{"facets": [[..]]}`.
//! Non-maximal entries are absorbed on load, so full face lists are accepted.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, MAX_VERTICES};

#[derive(Serialize, Deserialize)]
struct FacetsJson {
    facets: Vec<Vec<u32>>,
}

/// Parses one facet line; `line` is 1-based for diagnostics.
pub fn parse_simplex(text: &str, line: usize) -> Result<Simplex> {
    let mut labels = Vec::new();
    for tok in text.split_whitespace() {
        let v: u32 = tok
            .parse()
            .map_err(|_| Error::Parse { line, message: format!("expected a vertex label, found {tok:?}") })?;
        if v >= MAX_VERTICES {
            return Err(Error::Parse { line, message: format!("label {v} is out of range 0..64") });
        }
        labels.push(v);
    }
    Simplex::from_vertices(labels).map_err(|_| Error::Parse { line, message: "empty facet".into() })
}

pub fn parse_facet_list(text: &str) -> Result<Complex> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        facets.push(parse_simplex(line, i + 1)?);
    }
    if facets.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets found".into() });
    }
    Complex::build(facets)
}

/// Facet lines only, ascending bit order.
pub fn facet_lines(k: &Complex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        let _ = writeln!(out, "{f}");
    }
    out
}

/// Writes the facet list with `header` lines emitted as comments.
pub fn format_facet_list(k: &Complex, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    out.push_str(&facet_lines(k));
    out
}

pub fn to_json(k: &Complex) -> String {
    let facets = k.facets().iter().map(|f| f.vertices().collect()).collect();
    serde_json::to_string(&FacetsJson { facets }).expect("plain data")
}

pub fn parse_json(text: &str) -> Result<Complex> {
    let parsed: FacetsJson = serde_json::from_str(text)?;
    Complex::from_vertex_lists(parsed.facets)
}

/// Loads either format, sniffing JSON by a leading `{`.
pub fn parse_any(text: &str) -> Result<Complex> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_facet_list(text)
    }
}

pub fn read_complex(path: &Path) -> Result<Complex> {
    parse_any(&std::fs::read_to_string(path)?)
}

/// SHA-256 of [`facet_lines`], hex encoded.
pub fn checksum(k: &Complex) -> String {
    let digest = Sha256::digest(facet_lines(k).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Header for persisted complexes: the generating command and a checksum.
pub fn persisted_header(k: &Complex, command: &str) -> Vec<String> {
    vec![format!("generated-by: {command}"), format!("checksum: sha256:{}", checksum(k))]
}

/// Parses a persisted file and checks the `checksum:` header when present.
pub fn parse_persisted(text: &str) -> Result<Complex> {
    let k = parse_facet_list(text)?;
    let declared = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .filter_map(|l| l.trim().strip_prefix("checksum: sha256:"))
        .map(|s| s.trim().to_string())
        .next();
    if let Some(expected) = declared {
        let found = checksum(&k);
        if expected != found {
            return Err(Error::Checksum { expected, found });
        }
    }
    Ok(k)
}
