//! graph6 and plain edge-list readers and writers.
//!
//! Edge lists are one `u v` pair per line with 0-based ids; blank lines and
//! `#` comments are ignored. The writer emits a `# vertices: N` comment so
//! that isolated trailing vertices survive a round trip, and the reader honours
//! it when present.

use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl Format {
    /// `.g6` means graph6, anything else is read as an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Format::Graph6,
            _ => Format::EdgeList,
        }
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph, FormatError> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let err = |m: &str| FormatError::Graph6(m.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("byte outside the printable 63..=126 range"));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes {
        [] => return Err(err("empty input")),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(err("truncated size field"));
            }
            let n = tail[..6].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(err("truncated size field"));
            }
            let n = tail[..3].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
            (n, &tail[3..])
        }
        [b, tail @ ..] => (six(*b), tail),
    };
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed = needed_bits.div_ceil(6);
    if rest.len() != needed {
        return Err(FormatError::Graph6(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = six(rest[k / 6]);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices: {}\n", g.vertex_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    out
}

/// Declared vertex count, if any, and the raw pairs.
pub type EdgePairs = (Option<usize>, Vec<(Vertex, Vertex)>);

/// Parses `u v` lines. The vertex count is taken from a `# vertices: N`
/// comment when present, otherwise it is one more than the largest id.
pub fn parse_edge_pairs(text: &str) -> Result<EdgePairs, FormatError> {
    let mut declared = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("vertices:") {
                declared = Some(v.trim().parse().map_err(|_| FormatError::EdgeList {
                    line: idx + 1,
                    msg: format!("bad vertex count {:?}", v.trim()),
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next = || -> Result<Vertex, FormatError> {
            let tok = it.next().ok_or_else(|| FormatError::EdgeList {
                line: idx + 1,
                msg: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|_| FormatError::EdgeList {
                line: idx + 1,
                msg: format!("not a vertex id: {tok:?}"),
            })
        };
        let (u, v) = (next()?, next()?);
        if it.next().is_some() {
            return Err(FormatError::EdgeList {
                line: idx + 1,
                msg: "trailing tokens".into(),
            });
        }
        pairs.push((u, v));
    }
    Ok((declared, pairs))
}

pub fn from_edge_list(text: &str) -> Result<Graph, FormatError> {
    let (declared, pairs) = parse_edge_pairs(text)?;
    let implied = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(implied);
    Ok(Graph::from_edges(n, pairs)?)
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, FormatError> {
    let text = std::fs::read_to_string(path)?;
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Graph6 => from_graph6(&text),
        Format::EdgeList => from_edge_list(&text),
    }
}

pub fn write_graph(path: &Path, g: &Graph, format: Format) -> Result<(), FormatError> {
    let text = match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::EdgeList => to_edge_list(g),
    };
    std::fs::write(path, text)?;
    Ok(())
}
