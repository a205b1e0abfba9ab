use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FiniteLattice, LatticeError};

/// JSON form of a lattice: labels plus `[lower, upper]` cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeSpec {
    pub fn build(&self) -> Result<FiniteLattice, LatticeError> {
        FiniteLattice::build(&self.elements, &self.covers)
    }
}

impl From<&FiniteLattice> for LatticeSpec {
    fn from(l: &FiniteLattice) -> Self {
        LatticeSpec {
            elements: l.labels().to_vec(),
            covers: l
                .covers()
                .iter()
                .map(|&(a, b)| (l.label(a).to_string(), l.label(b).to_string()))
                .collect(),
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

impl FiniteLattice {
    /// Graphviz rendering: one node per element, one edge per cover, drawn
    /// bottom-up with elements grouped by their distance from the bottom.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|_, _| None)
    }

    /// Like [`FiniteLattice::to_dot`], with extra edge attributes supplied per
    /// cover pair (for instance `color=red`).
    pub fn to_dot_with(&self, mut edge_attrs: impl FnMut(usize, usize) -> Option<String>) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for label in &self.labels {
            let _ = writeln!(out, "  {};", quote(label));
        }
        let levels = self.levels();
        let depth = levels.iter().copied().max().unwrap_or(0);
        for level in 0..=depth {
            let members: Vec<String> = (0..self.len())
                .filter(|&i| levels[i] == level)
                .map(|i| quote(&self.labels[i]))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
        }
        for &(a, b) in &self.covers {
            let _ = write!(out, "  {} -> {}", quote(&self.labels[a]), quote(&self.labels[b]));
            match edge_attrs(a, b) {
                Some(attrs) => {
                    let _ = writeln!(out, " [{attrs}];");
                }
                None => out.push_str(";\n"),
            }
        }
        out.push_str("}\n");
        out
    }

    /// Longest distance from the bottom along covers.
    fn levels(&self) -> Vec<usize> {
        let mut level = vec![0; self.len()];
        for &a in &self.topo {
            for &b in &self.upper[a] {
                level[b] = level[b].max(level[a] + 1);
            }
        }
        level
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("DOT parse error on line {line}: {message}")]
pub struct DotParseError {
    pub line: usize,
    pub message: String,
}

/// Reads back the node and edge statements written by
/// [`FiniteLattice::to_dot`]. Attribute lists and `rank=same` groups are
/// skipped.
pub fn parse_dot(text: &str) -> Result<LatticeSpec, DotParseError> {
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if !line.starts_with('"') {
            continue;
        }
        let err = |message: &str| DotParseError {
            line: n + 1,
            message: message.to_string(),
        };
        let (first, rest) = take_quoted(line).ok_or_else(|| err("unterminated string"))?;
        let rest = rest.trim_start();
        if let Some(rest) = rest.strip_prefix("->") {
            let (second, _) =
                take_quoted(rest.trim_start()).ok_or_else(|| err("edge target is not a string"))?;
            covers.push((first, second));
        } else {
            elements.push(first);
        }
    }
    Ok(LatticeSpec { elements, covers })
}

fn take_quoted(s: &str) -> Option<(String, &str)> {
    let mut chars = s.char_indices();
    if chars.next()?.1 != '"' {
        return None;
    }
    let mut out = String::new();
    let mut escaped = false;
    for (i, c) in chars {
        if escaped {
            out.push(c);
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '"' {
            return Some((out, &s[i + 1..]));
        } else {
            out.push(c);
        }
    }
    None
}
