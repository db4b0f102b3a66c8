//! Generalized simplicial complexes.
//!
//! Cells carry explicit facet incidence, so two distinct cells may share a
//! vertex set (the 3-vertex projective plane has four triangles on the same
//! three vertices). The `k`-th facet of a cell is always the one omitting its
//! `k`-th vertex; vertices are kept sorted by id.

mod builder;
pub mod library;

use std::collections::{BTreeSet, HashSet};

pub use builder::{ComplexBuilder, ConeMap};

use crate::graph::Graph;
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::{Error, Result};

pub type VertexId = usize;
pub type CellId = usize;

/// A cell addressed by dimension and per-dimension id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub dim: usize,
    pub id: CellId,
}

impl CellRef {
    pub fn new(dim: usize, id: CellId) -> Self {
        Self { dim, id }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vertex {
    pub label: Option<String>,
    pub coords: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub(crate) vertices: Vec<VertexId>,
    pub(crate) facets: Vec<CellId>,
}

impl Cell {
    pub fn new(vertices: Vec<VertexId>, facets: Vec<CellId>) -> Self {
        Self { vertices, facets }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn facets(&self) -> &[CellId] {
        &self.facets
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Per-dimension sets of cell ids; used for subcomplexes and face closures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellSet {
    by_dim: Vec<BTreeSet<CellId>>,
}

impl CellSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: CellRef) -> bool {
        if self.by_dim.len() <= c.dim {
            self.by_dim.resize_with(c.dim + 1, BTreeSet::new);
        }
        self.by_dim[c.dim].insert(c.id)
    }

    pub fn contains(&self, c: CellRef) -> bool {
        self.by_dim.get(c.dim).is_some_and(|s| s.contains(&c.id))
    }

    pub fn dim(&self, d: usize) -> impl Iterator<Item = CellId> + '_ {
        self.by_dim.get(d).into_iter().flatten().copied()
    }

    pub fn count(&self, d: usize) -> usize {
        self.by_dim.get(d).map_or(0, BTreeSet::len)
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    /// All cells ordered by dimension, then id.
    pub fn iter(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.by_dim
            .iter()
            .enumerate()
            .flat_map(|(d, s)| s.iter().map(move |&id| CellRef::new(d, id)))
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Complex {
    pub(crate) vertices: Vec<Vertex>,
    /// `cells[0][v]` is the 0-cell of vertex `v`.
    pub(crate) cells: Vec<Vec<Cell>>,
}

impl Complex {
    /// Assembles a complex without checking any invariant; call
    /// [`Complex::validate`] on the result. Used when reading files.
    pub fn from_parts_unchecked(vertices: Vec<Vertex>, mut higher: Vec<Vec<Cell>>) -> Self {
        let zero: Vec<Cell> = (0..vertices.len())
            .map(|v| Cell::new(vec![v], vec![]))
            .collect();
        higher.insert(0, zero);
        while higher.len() > 1 && higher.last().is_some_and(Vec::is_empty) {
            higher.pop();
        }
        Self {
            vertices,
            cells: higher,
        }
    }

    /// Top dimension; 0 for a complex without cells.
    pub fn dim(&self) -> usize {
        self.cells.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        self.vertices[v]
            .label
            .clone()
            .unwrap_or_else(|| v.to_string())
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, c: CellRef) -> &Cell {
        &self.cells[c.dim][c.id]
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    /// Cell counts per dimension, `f[0]` being the number of vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.count(d)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, cs)| (0..cs.len()).map(move |i| CellRef::new(d, i)))
    }

    pub fn has_coords(&self) -> bool {
        !self.vertices.is_empty() && self.vertices.iter().all(|v| v.coords.is_some())
    }

    pub fn coords(&self, v: VertexId) -> Option<&[f64]> {
        self.vertices[v].coords.as_deref()
    }

    pub fn set_coords(&mut self, v: VertexId, coords: Option<Vec<f64>>) {
        self.vertices[v].coords = coords;
    }

    pub fn set_label(&mut self, v: VertexId, label: Option<String>) {
        self.vertices[v].label = label;
    }

    /// For each `dim`-cell, the `(dim+1)`-cells having it as a facet.
    pub fn cofacets(&self, dim: usize) -> Vec<Vec<CellId>> {
        let mut co = vec![Vec::new(); self.count(dim)];
        for (id, c) in self.cells(dim + 1).iter().enumerate() {
            for &f in &c.facets {
                co[f].push(id);
            }
        }
        co
    }

    /// For each vertex, the cells of every positive dimension containing it.
    pub fn vertex_incidence(&self) -> Vec<Vec<CellRef>> {
        let mut inc = vec![Vec::new(); self.num_vertices()];
        for d in 1..self.cells.len() {
            for (id, c) in self.cells[d].iter().enumerate() {
                for &v in &c.vertices {
                    inc[v].push(CellRef::new(d, id));
                }
            }
        }
        inc
    }

    /// The face closure of `seeds` (every cell reachable through facet lists).
    pub fn closure(&self, seeds: impl IntoIterator<Item = CellRef>) -> CellSet {
        let mut set = CellSet::new();
        let mut stack: Vec<CellRef> = seeds.into_iter().collect();
        while let Some(c) = stack.pop() {
            if !set.insert(c) {
                continue;
            }
            if c.dim == 0 {
                continue;
            }
            for &f in &self.cell(c).facets {
                stack.push(CellRef::new(c.dim - 1, f));
            }
        }
        set
    }

    /// The subcomplex of all cells of dimension at most `k`, ids preserved.
    pub fn skeleton(&self, k: usize) -> Result<Complex> {
        if k > self.dim() {
            return Err(Error::BadDimension {
                dim: k,
                min: 0,
                max: self.dim(),
            });
        }
        Ok(Complex {
            vertices: self.vertices.clone(),
            cells: self.cells[..=k].to_vec(),
        })
    }

    /// Cells that are not a facet of any other cell.
    pub fn maximal_cells(&self) -> Vec<CellRef> {
        let mut out = Vec::new();
        for d in 0..self.cells.len() {
            let mut covered = vec![false; self.count(d)];
            for c in self.cells(d + 1) {
                for &f in &c.facets {
                    if let Some(slot) = covered.get_mut(f) {
                        *slot = true;
                    }
                }
            }
            out.extend(
                covered
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| CellRef::new(d, i)),
            );
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| {
                if d % 2 == 0 {
                    cs.len() as i64
                } else {
                    -(cs.len() as i64)
                }
            })
            .sum()
    }

    /// Simple graph on the vertices, one edge per vertex pair joined by at
    /// least one 1-cell. Vertex `v` is labelled `Label::Index(v)`.
    pub fn one_skeleton_graph(&self) -> Graph {
        let mut g = Graph::with_labels((0..self.num_vertices()).map(|v| Label::Index(v as u64)))
            .expect("indices are distinct");
        for e in self.cells(1) {
            g.add_edge(e.vertices[0], e.vertices[1])
                .expect("edges are loop-free");
        }
        g
    }

    /// The subcomplex induced on `keep`: cells all of whose vertices are kept.
    pub fn induced_cells(&self, keep: &[bool]) -> CellSet {
        let mut set = CellSet::new();
        for c in self.all_cells() {
            if self.cell(c).vertices.iter().all(|&v| keep[v]) {
                set.insert(c);
            }
        }
        set
    }

    /// The cells of `set` as a complex in their own right, renumbered densely
    /// in id order. `set` must be closed under facets. Also returns, per
    /// dimension, the new id of each old cell.
    pub fn subcomplex(&self, set: &CellSet) -> (Complex, Vec<Vec<Option<CellId>>>) {
        let top = set.top_dim().unwrap_or(0);
        let mut remap: Vec<Vec<Option<CellId>>> =
            (0..=top).map(|d| vec![None; self.count(d)]).collect();
        let mut vertices = Vec::new();
        for v in set.dim(0) {
            remap[0][v] = Some(vertices.len());
            vertices.push(self.vertices[v].clone());
        }
        let mut higher = Vec::new();
        for d in 1..=top {
            let mut cells = Vec::new();
            for id in set.dim(d) {
                let c = &self.cells[d][id];
                let map = |old: &[usize], dim: usize| -> Vec<usize> {
                    old.iter()
                        .map(|&x| remap[dim][x].expect("set is closed under facets"))
                        .collect()
                };
                let cell = Cell::new(map(&c.vertices, 0), map(&c.facets, d - 1));
                remap[d][id] = Some(cells.len());
                cells.push(cell);
            }
            higher.push(cells);
        }
        (Complex::from_parts_unchecked(vertices, higher), remap)
    }

    /// Reports every violated cell or complex invariant.
    pub fn validate(&self) -> ValidationReport {
        use ViolationCode::*;
        let mut r = ValidationReport::new();
        let n = self.num_vertices();

        let mut seen_labels = HashSet::new();
        let coord_len = self
            .vertices
            .iter()
            .find_map(|v| v.coords.as_ref().map(Vec::len));
        for (v, vx) in self.vertices.iter().enumerate() {
            if let Some(l) = &vx.label {
                if !seen_labels.insert(l.as_str()) {
                    r.cell(DuplicateLabel, 0, v, format!("label {l:?} repeated"));
                }
            }
            if let (Some(c), Some(len)) = (&vx.coords, coord_len) {
                if c.len() != len {
                    r.cell(
                        CoordinateDimension,
                        0,
                        v,
                        format!("{} coordinates, expected {len}", c.len()),
                    );
                }
            }
        }
        for (v, c) in self.cells(0).iter().enumerate() {
            if c.vertices != [v] || !c.facets.is_empty() {
                r.cell(
                    VertexArityMismatch,
                    0,
                    v,
                    "0-cell must consist of its own vertex",
                );
            }
        }

        for d in 1..self.cells.len() {
            for (id, c) in self.cells[d].iter().enumerate() {
                if c.vertices.len() != d + 1 {
                    r.cell(
                        VertexArityMismatch,
                        d,
                        id,
                        format!("{} vertices", c.vertices.len()),
                    );
                    continue;
                }
                if let Some(&v) = c.vertices.iter().find(|&&v| v >= n) {
                    r.cell(UnknownVertex, d, id, format!("vertex {v}"));
                    continue;
                }
                let distinct: BTreeSet<_> = c.vertices.iter().collect();
                if distinct.len() != c.vertices.len() {
                    r.cell(DuplicateVertexInCell, d, id, format!("{:?}", c.vertices));
                    continue;
                }
                if c.facets.len() != d + 1 {
                    r.cell(
                        VertexArityMismatch,
                        d,
                        id,
                        format!("{} facets", c.facets.len()),
                    );
                    continue;
                }
                let facet_ids: BTreeSet<_> = c.facets.iter().collect();
                if facet_ids.len() != c.facets.len() {
                    r.cell(DuplicateFacet, d, id, format!("{:?}", c.facets));
                }
                let mut dangling = false;
                let mut missing: BTreeSet<Vec<VertexId>> = (0..=d)
                    .map(|k| {
                        let mut s = c.vertices.clone();
                        s.remove(k);
                        s
                    })
                    .collect();
                for &f in &c.facets {
                    match self.cells[d - 1].get(f) {
                        None => {
                            r.cell(
                                DanglingFacet,
                                d,
                                id,
                                format!("facet {f} is not a {}-cell", d - 1),
                            );
                            dangling = true;
                        }
                        Some(fc) => {
                            let mut vs = fc.vertices.clone();
                            vs.sort_unstable();
                            if !missing.remove(&vs) {
                                r.cell(
                                    FacetCoverageViolation,
                                    d,
                                    id,
                                    format!(
                                        "facet {f} on {vs:?} is not a fresh face of {:?}",
                                        c.vertices
                                    ),
                                );
                            }
                        }
                    }
                }
                if !dangling && !missing.is_empty() {
                    r.cell(
                        FacetCoverageViolation,
                        d,
                        id,
                        format!("faces {missing:?} not covered"),
                    );
                }
            }
        }
        r
    }
}
