//! The line-oriented instance file format.
//!
//! An instance file carries, in order and separated by newlines:
//!
//! 1. `n`: a single integer.
//! 2. The weight list: a length line (always `n`), then one line of
//!    space-separated integers (empty for `n = 0`).
//! 3. The graph: a vertex-count line (again `n`), an edge-count line, and
//!    one `u v` line per edge.
//! 4. The tree decomposition: a bag-count line, an edge-count line, one
//!    line of space-separated vertices per bag (in index order, possibly
//!    empty), and one `i j` line per decomposition edge.
//!
//! Serialization is canonical (edge endpoints ascending within each line,
//! edge lines sorted, bag contents ascending, trailing newline), so
//! parsing and re-serializing a canonical file reproduces it byte for
//! byte.

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, WeightMap, WEIGHT_MAX, WEIGHT_MIN};
use thiserror::Error;

/// Vertex-count bounds of the standard instance family.
pub const STANDARD_N_MIN: usize = 4;
pub const STANDARD_N_MAX: usize = 94;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Non-fatal findings; files outside the generator's own bounds still
/// parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    WeightOutOfRange { vertex: u32, weight: u64 },
    VertexCountOutsideStandardFamily { n: usize },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::WeightOutOfRange { vertex, weight } => write!(
                f,
                "weight {weight} of vertex {vertex} outside [{WEIGHT_MIN}, {WEIGHT_MAX}]"
            ),
            Warning::VertexCountOutsideStandardFamily { n } => write!(
                f,
                "vertex count {n} outside the standard family range [{STANDARD_N_MIN}, {STANDARD_N_MAX}]"
            ),
        }
    }
}

/// A parsed instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub weights: WeightMap,
    pub decomposition: TreeDecomposition,
}

struct Lines<'a> {
    iter: std::str::Lines<'a>,
    number: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str, ParseError> {
        self.number += 1;
        self.iter.next().ok_or(ParseError {
            line: self.number,
            message: "unexpected end of file".into(),
        })
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            message: message.into(),
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let text = self.next()?;
        text.trim_end_matches('\r')
            .parse()
            .map_err(|_| self.err(format!("expected {what}, found {text:?}")))
    }

    fn integers<T: std::str::FromStr>(&mut self, what: &str) -> Result<Vec<T>, ParseError> {
        let text = self.next()?;
        let text = text.trim_end_matches('\r');
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(' ')
            .map(|tok| {
                tok.parse()
                    .map_err(|_| self.err(format!("expected {what}, found {tok:?}")))
            })
            .collect()
    }
}

/// Parses an instance, returning it with any non-fatal warnings.
pub fn parse_instance(text: &str) -> Result<(Instance, Vec<Warning>), ParseError> {
    let mut lines = Lines {
        iter: text.lines(),
        number: 0,
    };
    let mut warnings = Vec::new();

    let n: usize = lines.integer("the vertex count")?;

    let weight_len: usize = lines.integer("the weight-list length")?;
    if weight_len != n {
        return Err(lines.err(format!(
            "weight-list length {weight_len} differs from n = {n}"
        )));
    }
    let weights: Vec<u64> = lines.integers("a weight")?;
    if weights.len() != weight_len {
        return Err(lines.err(format!(
            "declared {weight_len} weights, found {}",
            weights.len()
        )));
    }
    for (v, &w) in weights.iter().enumerate() {
        if !(WEIGHT_MIN..=WEIGHT_MAX).contains(&w) {
            warnings.push(Warning::WeightOutOfRange {
                vertex: v as u32,
                weight: w,
            });
        }
    }

    let graph_n: usize = lines.integer("the graph vertex count")?;
    if graph_n != n {
        return Err(lines.err(format!("graph vertex count {graph_n} differs from n = {n}")));
    }
    let edge_count: usize = lines.integer("the graph edge count")?;
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let pair: Vec<u32> = lines.integers("an edge endpoint")?;
        if pair.len() != 2 {
            return Err(lines.err(format!("expected two endpoints, found {}", pair.len())));
        }
        edges.push((pair[0], pair[1]));
    }
    let graph = Graph::new(n, &edges).map_err(|e| lines.err(e.to_string()))?;

    let bag_count: usize = lines.integer("the bag count")?;
    if bag_count == 0 {
        return Err(lines.err("decomposition must have at least one bag"));
    }
    let td_edge_count: usize = lines.integer("the decomposition edge count")?;
    let mut bags = Vec::with_capacity(bag_count);
    for _ in 0..bag_count {
        bags.push(lines.integers("a bag vertex")?);
    }
    let mut td_edges = Vec::with_capacity(td_edge_count);
    for _ in 0..td_edge_count {
        let pair: Vec<usize> = lines.integers("a bag index")?;
        if pair.len() != 2 {
            return Err(lines.err(format!("expected two bag indices, found {}", pair.len())));
        }
        td_edges.push((pair[0], pair[1]));
    }
    let decomposition =
        TreeDecomposition::new(bags, td_edges).map_err(|e| lines.err(e.to_string()))?;

    Ok((
        Instance {
            graph,
            weights: WeightMap::new(weights),
            decomposition,
        },
        warnings,
    ))
}

fn push_list<T: std::fmt::Display>(out: &mut String, items: impl IntoIterator<Item = T>) {
    let mut first = true;
    for item in items {
        if !first {
            out.push(' ');
        }
        out.push_str(&item.to_string());
        first = false;
    }
    out.push('\n');
}

/// Serializes in the canonical form; the inverse of [`parse_instance`] on
/// canonical files.
pub fn serialize_instance(g: &Graph, w: &WeightMap, td: &TreeDecomposition) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');

    out.push_str(&w.len().to_string());
    out.push('\n');
    push_list(&mut out, w.as_slice().iter());

    out.push_str(&n.to_string());
    out.push('\n');
    out.push_str(&g.edge_count().to_string());
    out.push('\n');
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }

    out.push_str(&td.bags().len().to_string());
    out.push('\n');
    let mut td_edges: Vec<(usize, usize)> = td
        .tree_edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    td_edges.sort_unstable();
    out.push_str(&td_edges.len().to_string());
    out.push('\n');
    for bag in td.bags() {
        push_list(&mut out, bag.iter());
    }
    for (a, b) in td_edges {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Warning for instances checked against the standard family's bounds.
pub fn standard_family_warning(n: usize) -> Option<Warning> {
    if (STANDARD_N_MIN..=STANDARD_N_MAX).contains(&n) {
        None
    } else {
        Some(Warning::VertexCountOutsideStandardFamily { n })
    }
}

/// Is `text` a well-formed answer line: `-1` or a residue in `[0, 10^9+7)`?
pub fn is_valid_output_line(text: &str) -> bool {
    let text = text.trim_end_matches('\n');
    if text == "-1" {
        return true;
    }
    if text.is_empty() || text.len() > 10 || !text.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    if text.len() > 1 && text.starts_with('0') {
        return false;
    }
    text.parse::<u64>()
        .map(|v| v < crate::modular::MODULUS)
        .unwrap_or(false)
}
