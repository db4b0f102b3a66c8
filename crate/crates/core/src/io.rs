//! JSON forms of complexes, involutions, colourings, graphs and
//! homomorphisms. Output is canonical: keys sorted, id lists sorted, one
//! line per file, so equal objects always serialize to equal bytes.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::complex::{Cell, Complex, Vertex, VertexId};
use crate::graph::{Graph, Homomorphism};
use crate::label::Label;
use crate::symmetry::{Colour, Involution, Scope, TwoColouring};
use crate::{Error, Result};

pub fn to_canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered, so keys come out sorted
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_canonical_string(v))?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("expected a non-negative integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("`{what}` must be an array")))
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?.iter().map(as_usize).collect()
}

fn pair_list(v: &Value, what: &str) -> Result<Vec<(usize, usize)>> {
    as_array(v, what)?
        .iter()
        .map(|p| match usize_list(p, what)?.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(parse_err(format!("`{what}` entries must be pairs"))),
        })
        .collect()
}

pub fn complex_to_json(c: &Complex) -> Value {
    let vertices: Vec<Value> = (0..c.num_vertices())
        .map(|v| {
            let mut o = Map::new();
            o.insert("id".into(), json!(v));
            let vx = c.vertex(v);
            if let Some(l) = &vx.label {
                o.insert("label".into(), json!(l));
            }
            if let Some(p) = &vx.coords {
                o.insert("coords".into(), json!(p));
            }
            Value::Object(o)
        })
        .collect();
    let mut cells = Vec::new();
    for d in 1..=c.dim() {
        for (id, cell) in c.cells(d).iter().enumerate() {
            cells.push(
                json!({"id": id, "dim": d, "vertices": cell.vertices(), "facets": cell.facets()}),
            );
        }
    }
    json!({"dimension": c.dim(), "vertices": vertices, "cells": cells})
}

/// Reads a complex. Vertex ids must be `0..n`. Cell ids are renumbered
/// densely per dimension in increasing order; facet references to ids that
/// do not exist are kept dangling so that validation reports them.
pub fn complex_from_json(v: &Value) -> Result<Complex> {
    let vs = as_array(field(v, "vertices")?, "vertices")?;
    let mut vertices = vec![None; vs.len()];
    for x in vs {
        let id = as_usize(field(x, "id")?)?;
        let slot = vertices
            .get_mut(id)
            .ok_or_else(|| parse_err(format!("vertex id {id} out of range")))?;
        if slot.is_some() {
            return Err(parse_err(format!("vertex id {id} repeated")));
        }
        let label = match x.get("label") {
            None | Some(Value::Null) => None,
            Some(l) => Some(
                l.as_str()
                    .ok_or_else(|| parse_err("vertex label must be a string"))?
                    .to_string(),
            ),
        };
        let coords = match x.get("coords") {
            None | Some(Value::Null) => None,
            Some(p) => Some(
                as_array(p, "coords")?
                    .iter()
                    .map(|c| {
                        c.as_f64()
                            .ok_or_else(|| parse_err("coordinates must be numbers"))
                    })
                    .collect::<Result<Vec<f64>>>()?,
            ),
        };
        *slot = Some(Vertex { label, coords });
    }
    let vertices: Vec<Vertex> = vertices
        .into_iter()
        .map(|x| x.expect("every slot filled"))
        .collect();

    type RawCell = (Vec<usize>, Vec<usize>);
    let mut by_dim: BTreeMap<usize, BTreeMap<usize, RawCell>> = BTreeMap::new();
    for x in as_array(field(v, "cells")?, "cells")? {
        let d = as_usize(field(x, "dim")?)?;
        if d == 0 {
            return Err(parse_err("0-cells are given by the vertex list"));
        }
        let id = as_usize(field(x, "id")?)?;
        let cell = (
            usize_list(field(x, "vertices")?, "vertices")?,
            usize_list(field(x, "facets")?, "facets")?,
        );
        if by_dim.entry(d).or_default().insert(id, cell).is_some() {
            return Err(parse_err(format!("{d}-cell id {id} repeated")));
        }
    }
    let top = by_dim.keys().next_back().copied().unwrap_or(0);
    let mut higher: Vec<Vec<Cell>> = vec![Vec::new(); top];
    let mut prev_ids: BTreeMap<usize, usize> = (0..vertices.len()).map(|v| (v, v)).collect();
    let mut prev_count = vertices.len();
    for d in 1..=top {
        let cells = by_dim.remove(&d).unwrap_or_default();
        let ids: BTreeMap<usize, usize> = cells
            .keys()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        for (_, (verts, facets)) in cells {
            let facets = facets
                .iter()
                .map(|f| prev_ids.get(f).copied().unwrap_or(prev_count + f))
                .collect();
            higher[d - 1].push(Cell::new(verts, facets));
        }
        prev_count = ids.len();
        prev_ids = ids;
    }
    Ok(Complex::from_parts_unchecked(vertices, higher))
}

pub fn involution_to_json(inv: &Involution) -> Value {
    let scope = match inv.scope() {
        Scope::Full => "full",
        Scope::Boundary => "boundary",
    };
    let mut cell_pairs = Map::new();
    for d in 1..inv.num_dims() {
        let pairs = inv.pairs_in_dim(d);
        if !pairs.is_empty() {
            cell_pairs.insert(
                d.to_string(),
                json!(pairs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
            );
        }
    }
    let vertex_pairs: Vec<[usize; 2]> = inv
        .pairs_in_dim(0)
        .into_iter()
        .map(|(a, b)| [a, b])
        .collect();
    json!({"scope": scope, "vertex_pairs": vertex_pairs, "cell_pairs": cell_pairs})
}

/// Reads an involution against `complex`, which fixes the table sizes. Ids
/// out of range are kept so that validation reports them.
pub fn involution_from_json(v: &Value, complex: &Complex) -> Result<Involution> {
    let scope = match field(v, "scope")?.as_str() {
        Some("full") => Scope::Full,
        Some("boundary") => Scope::Boundary,
        other => return Err(parse_err(format!("unknown scope {other:?}"))),
    };
    let mut lists = vec![pair_list(field(v, "vertex_pairs")?, "vertex_pairs")?];
    let cell_pairs = field(v, "cell_pairs")?
        .as_object()
        .ok_or_else(|| parse_err("`cell_pairs` must be an object"))?;
    for (k, pairs) in cell_pairs {
        let d: usize = k
            .parse()
            .map_err(|_| parse_err(format!("bad dimension key {k:?}")))?;
        if d == 0 {
            return Err(parse_err("vertex pairs belong in `vertex_pairs`"));
        }
        if lists.len() <= d {
            lists.resize(d + 1, Vec::new());
        }
        lists[d] = pair_list(pairs, "cell_pairs")?;
    }
    if lists.len() < complex.dim() + 1 {
        lists.resize(complex.dim() + 1, Vec::new());
    }
    let mut table = Vec::new();
    for (d, list) in lists.iter().enumerate() {
        let size = list
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0)
            .max(complex.count(d));
        let mut row = vec![None; size];
        for &(a, b) in list {
            row[a] = Some(b);
            row[b] = Some(a);
        }
        table.push(row);
    }
    Ok(Involution::from_parts(scope, table))
}

pub fn colouring_to_json(c: &TwoColouring) -> Value {
    json!({"black": c.vertices_of(Colour::Black), "white": c.vertices_of(Colour::White)})
}

/// The two id lists; totality is checked by [`TwoColouring::from_lists`].
pub fn colouring_lists(v: &Value) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
    Ok((
        usize_list(field(v, "black")?, "black")?,
        usize_list(field(v, "white")?, "white")?,
    ))
}

/// `fibres[i]`, when given, lists the complex vertices over graph vertex `i`.
pub fn graph_to_json(g: &Graph, fibres: Option<&[Vec<VertexId>]>) -> Value {
    let vertices: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
    let edges: Vec<[usize; 2]> = g.edges().map(|(a, b)| [a, b]).collect();
    let mut o = json!({"vertices": vertices, "edges": edges});
    if let Some(f) = fibres {
        o["fibres"] = json!(f);
    }
    o
}

fn label_of(v: &Value) -> Result<Label> {
    v.as_str()
        .ok_or_else(|| parse_err("labels must be strings"))?
        .parse()
}

pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let labels = as_array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(label_of)
        .collect::<Result<Vec<_>>>()?;
    let mut g = Graph::with_labels(labels)?;
    for (a, b) in pair_list(field(v, "edges")?, "edges")? {
        if a >= g.n() || b >= g.n() {
            return Err(parse_err(format!("edge [{a},{b}] names a missing vertex")));
        }
        g.add_edge(a, b)?;
    }
    Ok(g)
}

/// Graph label of every complex vertex, from the `fibres` of a graph file.
pub fn labels_from_fibres(v: &Value, g: &Graph, num_vertices: usize) -> Result<Vec<Label>> {
    let fibres = as_array(field(v, "fibres")?, "fibres")?;
    if fibres.len() != g.n() {
        return Err(parse_err("one fibre per graph vertex expected"));
    }
    let mut labels = vec![None; num_vertices];
    for (i, f) in fibres.iter().enumerate() {
        for x in usize_list(f, "fibres")? {
            let slot = labels
                .get_mut(x)
                .ok_or_else(|| parse_err(format!("fibre names missing vertex {x}")))?;
            if slot.is_some() {
                return Err(parse_err(format!("vertex {x} lies in two fibres")));
            }
            *slot = Some(g.label(i).clone());
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(x, l)| l.ok_or_else(|| parse_err(format!("vertex {x} lies in no fibre"))))
        .collect()
}

/// Complex vertices grouped by their graph vertex.
pub fn fibres(g: &Graph, labels: &[Label]) -> Result<Vec<Vec<VertexId>>> {
    let mut f = vec![Vec::new(); g.n()];
    for (v, l) in labels.iter().enumerate() {
        f[g.index_of(l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))?]
        .push(v);
    }
    Ok(f)
}

pub fn homomorphism_to_json(h: &Homomorphism) -> Value {
    let pairs: Vec<[String; 2]> = h
        .pairs()
        .into_iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect();
    json!({"source": graph_to_json(&h.source, None), "target": graph_to_json(&h.target, None), "pairs": pairs})
}

pub fn homomorphism_from_json(v: &Value) -> Result<Homomorphism> {
    let source = graph_from_json(field(v, "source")?)?;
    let target = graph_from_json(field(v, "target")?)?;
    let pairs = as_array(field(v, "pairs")?, "pairs")?
        .iter()
        .map(|p| match as_array(p, "pairs")?.as_slice() {
            [a, b] => Ok((label_of(a)?, label_of(b)?)),
            _ => Err(parse_err("`pairs` entries must be pairs")),
        })
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::from_pairs(source, target, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::library::{octahedron, rp2_six_vertex};
    use crate::constructions::{cylinder_complete, odd_cycle_sphere};
    use crate::graph::schrijver_homomorphism;

    #[test]
    fn complex_round_trip() {
        for c in [
            octahedron(),
            rp2_six_vertex(),
            cylinder_complete(3).unwrap().complex,
        ] {
            let j = complex_to_json(&c);
            let back = complex_from_json(&j).unwrap();
            assert_eq!(back, c);
            assert_eq!(
                to_canonical_string(&complex_to_json(&back)),
                to_canonical_string(&j)
            );
        }
    }

    #[test]
    fn deleted_cells_leave_dangling_facets() {
        let c = octahedron();
        let mut j = complex_to_json(&c);
        // drop edge 0; triangles that used it now point nowhere
        j["cells"].as_array_mut().unwrap().remove(0);
        let back = complex_from_json(&j).unwrap();
        assert!(back
            .validate()
            .has(crate::report::ViolationCode::DanglingFacet));
    }

    #[test]
    fn involution_and_colouring_round_trip() {
        let s = odd_cycle_sphere(2).unwrap();
        let j = involution_to_json(&s.involution);
        assert_eq!(involution_from_json(&j, &s.complex).unwrap(), s.involution);
        let (b, w) = colouring_lists(&colouring_to_json(&s.colouring)).unwrap();
        assert_eq!(TwoColouring::from_lists(10, &b, &w).unwrap(), s.colouring);
        assert_eq!(j["scope"], "full");
    }

    #[test]
    fn graph_and_fibres_round_trip() {
        let s = odd_cycle_sphere(2).unwrap();
        let g = s.graph().unwrap();
        let f = fibres(&g, &s.labels).unwrap();
        let j = graph_to_json(&g, Some(&f));
        let back = graph_from_json(&j).unwrap();
        assert!(back.same_labelled(&g));
        assert_eq!(labels_from_fibres(&j, &back, 10).unwrap(), s.labels);
    }

    #[test]
    fn homomorphism_round_trip() {
        let h = schrijver_homomorphism(6, 2).unwrap();
        let back = homomorphism_from_json(&homomorphism_to_json(&h)).unwrap();
        assert_eq!(back.pairs(), h.pairs());
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(
            complex_from_json(&json!({"vertices": 3})),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            graph_from_json(&json!({"vertices": ["{3,1}"], "edges": []})),
            Err(Error::Parse(_))
        ));
    }
}
