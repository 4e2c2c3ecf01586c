//! Plain-text graph files.
//!
//! ```text
//! edgelist          dimacs
//! p 3 3             p edge 3 3
//! 0 1               e 1 2
//! 0 2               e 1 3
//! 1 2               e 2 3
//! ```
//!
//! Edges are listed with `u < v` in ascending order; every line ends in a
//! newline.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use cubekappa::Graph;

use crate::args::GraphFormat;
use crate::CliError;

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    let mut out = String::new();
    let (v, e) = (g.vertex_count(), g.edge_count());
    match format {
        GraphFormat::Edgelist => writeln!(out, "p {v} {e}"),
        GraphFormat::Dimacs => writeln!(out, "p edge {v} {e}"),
    }
    .unwrap();
    for (a, b) in g.edges() {
        match format {
            GraphFormat::Edgelist => writeln!(out, "{a} {b}"),
            GraphFormat::Dimacs => writeln!(out, "e {} {}", a + 1, b + 1),
        }
        .unwrap();
    }
    out
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<Graph, CliError> {
    let bad = |line: usize, msg: &str| CliError::Parse(format!("line {}: {msg}", line + 1));
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('c'));
    let (at, header) = lines.next().ok_or_else(|| CliError::Parse("empty graph file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let counts = match (format, fields.as_slice()) {
        (GraphFormat::Edgelist, ["p", v, e]) | (GraphFormat::Dimacs, ["p", "edge", v, e]) => {
            (v.parse::<usize>().ok(), e.parse::<usize>().ok())
        }
        _ => (None, None),
    };
    let (Some(vertices), Some(edge_count)) = counts else {
        return Err(bad(at, "malformed header"));
    };

    let mut edges = Vec::with_capacity(edge_count);
    for (at, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let pair = match (format, fields.as_slice()) {
            (GraphFormat::Edgelist, [a, b]) => (a.parse::<usize>(), b.parse::<usize>()),
            (GraphFormat::Dimacs, ["e", a, b]) => (a.parse::<usize>(), b.parse::<usize>()),
            _ => return Err(bad(at, "malformed edge")),
        };
        let (Ok(a), Ok(b)) = pair else {
            return Err(bad(at, "malformed vertex"));
        };
        let (a, b) = match format {
            GraphFormat::Edgelist => (a, b),
            GraphFormat::Dimacs if a >= 1 && b >= 1 => (a - 1, b - 1),
            GraphFormat::Dimacs => return Err(bad(at, "dimacs vertices start at 1")),
        };
        edges.push((a, b));
    }
    if edges.len() != edge_count {
        return Err(CliError::Parse(format!(
            "header promises {edge_count} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(vertices, edges).map_err(|e| CliError::Parse(e.to_string()))
}

/// Writes `g` to `path` through a temporary file in the same directory.
pub fn export_graph(g: &Graph, format: GraphFormat, path: &Path) -> Result<String, CliError> {
    let text = write_graph(g, format);
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(text)
}
