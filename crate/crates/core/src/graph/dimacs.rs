//! DIMACS `.col` edge format: `p edge n m` followed by `e u v` lines with
//! 1-based vertex numbers.

use std::fmt::Write;

use super::Graph;
use crate::label::Label;
use crate::{Error, Result};

/// Vertex `i` of `g` becomes DIMACS vertex `i + 1`.
pub fn to_dimacs(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p edge {} {}", g.n(), g.m()).unwrap();
    for (a, b) in g.edges() {
        writeln!(s, "e {} {}", a + 1, b + 1).unwrap();
    }
    s
}

/// Parses a DIMACS graph; vertex `i` is labelled `Label::Index(i - 1)`.
/// Comment lines and repeated edges are accepted.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (lineno, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let bad = || Error::Parse(format!("DIMACS line {}: {line:?}", lineno + 1));
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if !matches!(parts.next(), Some("edge" | "col")) {
                    return Err(bad());
                }
                let n: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                g = Some(Graph::with_labels((0..n as u64).map(Label::Index))?);
            }
            Some("e") => {
                let graph = g.as_mut().ok_or_else(bad)?;
                let a: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                let b: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                if a == 0 || b == 0 || a > graph.n() || b > graph.n() || a == b {
                    return Err(bad());
                }
                graph.add_edge(a - 1, b - 1)?;
            }
            Some(_) => return Err(bad()),
        }
    }
    g.ok_or_else(|| Error::Parse("DIMACS input has no problem line".into()))
}
