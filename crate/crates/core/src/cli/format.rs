//! Line-oriented network files.
//!
//! ```text
//! species A B C
//! vertex 1 stoich: 1 A + 1 B kinetic: 2 A + 3 B
//! vertex 2 stoich: 1 C
//! edge 1 -> 2 k12
//! edge 2 -> 1 k21
//! ```
//!
//! `#` starts a comment. Edge order fixes the column order of every matrix.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::error::Error;
use crate::model::{make_network, Complex, Edge, Network};
use crate::scalar::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Semantic { line: usize, source: Error },
    #[error("{0}")]
    Network(Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax { line, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s != "+"
        && s != "->"
        && parse_rational(s).is_none()
        && !s.contains([':', '#', ','])
        && !s.chars().any(char::is_whitespace)
}

struct VertexLine {
    line: usize,
    stoich: String,
    kinetic: Option<String>,
}

fn parse_vertex(line: usize, rest: &str) -> Result<(usize, VertexLine), FileError> {
    let (id, body) = rest
        .trim()
        .split_once(char::is_whitespace)
        .ok_or_else(|| syntax(line, "expected `vertex <id> stoich: <complex>`"))?;
    let id: usize = id
        .parse()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| syntax(line, format!("invalid vertex id `{id}`")))?;
    let body = body
        .trim()
        .strip_prefix("stoich:")
        .ok_or_else(|| syntax(line, "expected `stoich:` after the vertex id"))?;
    let (stoich, kinetic) = match body.split_once("kinetic:") {
        Some((s, k)) => (s.trim().to_string(), Some(k.trim().to_string())),
        None => (body.trim().to_string(), None),
    };
    Ok((id, VertexLine { line, stoich, kinetic }))
}

fn parse_edge(line: usize, rest: &str) -> Result<(usize, usize, String), FileError> {
    let t: Vec<&str> = rest.split_whitespace().collect();
    if t.len() != 4 || t[1] != "->" {
        return Err(syntax(line, "expected `edge <i> -> <j> <rate-symbol>`"));
    }
    let vertex = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| syntax(line, format!("invalid vertex id `{s}`")))
    };
    let (i, j) = (vertex(t[0])?, vertex(t[2])?);
    if !valid_name(t[3]) {
        return Err(syntax(line, format!("invalid rate symbol `{}`", t[3])));
    }
    if i == j {
        return Err(FileError::Semantic {
            line,
            source: Error::SelfLoop { source_vertex: i, target: j },
        });
    }
    Ok((i, j, t[3].to_string()))
}

/// Parses the text of a network file.
pub fn parse_network_str(text: &str) -> Result<Network, FileError> {
    let mut species: Vec<String> = Vec::new();
    let mut vertices: BTreeMap<usize, VertexLine> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "species" => {
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(syntax(line, "`species` needs at least one name"));
                }
                for name in names {
                    if !valid_name(name) {
                        return Err(syntax(line, format!("invalid species name `{name}`")));
                    }
                    if species.iter().any(|s| s == name) {
                        return Err(FileError::Semantic {
                            line,
                            source: Error::DuplicateSpecies(name.into()),
                        });
                    }
                    species.push(name.to_string());
                }
            }
            "vertex" => {
                let (id, v) = parse_vertex(line, rest)?;
                if vertices.contains_key(&id) {
                    return Err(FileError::Semantic { line, source: Error::DuplicateVertex(id) });
                }
                vertices.insert(id, v);
            }
            "edge" => {
                let (i, j, sym) = parse_edge(line, rest)?;
                edges.push((line, i, j, sym));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let m = vertices.len();
    if let Some(missing) = (1..=m).find(|v| !vertices.contains_key(v)) {
        let line = vertices.range(m + 1..).next().map_or(0, |(_, v)| v.line);
        return Err(FileError::Semantic {
            line,
            source: Error::MissingVertex { expected: m, missing },
        });
    }
    let mut stoich = Vec::with_capacity(m);
    let mut kinetic = Vec::with_capacity(m);
    for v in vertices.values() {
        let at = |source| FileError::Semantic { line: v.line, source };
        stoich.push(Complex::parse(&v.stoich, &species).map_err(at)?);
        kinetic.push(
            v.kinetic
                .as_deref()
                .map(|k| Complex::parse(k, &species))
                .transpose()
                .map_err(at)?,
        );
    }
    let edge_list: Vec<Edge> = edges
        .iter()
        .map(|(_, i, j, s)| Edge { source: i - 1, target: j - 1, symbol: s.clone() })
        .collect();
    make_network(species, stoich, kinetic, edge_list).map_err(|e| {
        let line = match &e {
            Error::DuplicateEdge { source_vertex, target } => edges
                .iter()
                .filter(|(_, i, j, _)| i == source_vertex && j == target)
                .nth(1)
                .map(|x| x.0),
            Error::UnknownVertex(v) => {
                edges.iter().find(|(_, i, j, _)| i == v || j == v).map(|x| x.0)
            }
            Error::DuplicateRateSymbol(s) => {
                edges.iter().filter(|x| &x.3 == s).nth(1).map(|x| x.0)
            }
            Error::MissingKineticComplex(v) => vertices.get(v).map(|x| x.line),
            _ => None,
        };
        match line {
            Some(line) => FileError::Semantic { line, source: e },
            None => FileError::Network(e),
        }
    })
}

pub fn parse_network(path: &Path) -> Result<Network, FileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_network_str(&text)
}

/// Text accepted by [`parse_network_str`] that rebuilds the same network.
pub fn serialize_network(net: &Network) -> String {
    let sp = net.species();
    let mut out = format!("species {}\n", sp.join(" "));
    for v in 0..net.num_vertices() {
        out.push_str(&format!("vertex {} stoich: {}", v + 1, net.stoich_complex(v).format(sp)));
        if let Some(k) = net.kinetic_complex(v) {
            out.push_str(&format!(" kinetic: {}", k.format(sp)));
        }
        out.push('\n');
    }
    for e in net.edges() {
        out.push_str(&format!("edge {} -> {} {}\n", e.source + 1, e.target + 1, e.symbol));
    }
    out
}
