//! Free Z2-actions, 2-colourings, antipodal quotients and doubling, with the
//! predicates that certify a quadrangulation of a projective space.

mod audit;
mod double;
mod quad;
mod quotient;

pub use audit::{ball_audit, boundary_cells, projective_audit, sphere_audit};
pub use double::{double, radially_normalize, Doubled};
pub use quad::{
    cycle_parity_vs_homology, fineness_check, parity_audit, quadrangulation_check,
    sample_closed_walks, verify_z2_map_to_box, CycleAuditor, CycleParity, EdgeSet, Fineness,
};
pub use quotient::{quotient, Quotient};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CellRef, CellSet, Complex, VertexId};
use crate::graph::Graph;
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Full,
    Boundary,
}

/// A pairing of vertices and cells, indexed `[dim][id]`; dimension 0 is the
/// vertex pairing. Cells outside the scope are unpaired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    scope: Scope,
    pairs: Vec<Vec<Option<CellId>>>,
}

impl Involution {
    /// Assembles a pairing without checks; see [`validate_involution`].
    pub fn from_parts(scope: Scope, pairs: Vec<Vec<Option<CellId>>>) -> Self {
        Self { scope, pairs }
    }

    /// Extends a vertex pairing to the cells in scope: each cell goes to the
    /// cell whose facets are the images of its facets.
    pub fn from_vertex_pairing(
        complex: &Complex,
        vertex: &[Option<VertexId>],
        scope: Scope,
    ) -> Result<Self> {
        let in_scope = scope_cells(complex, scope);
        let mut pairs = vec![vertex.to_vec()];
        for d in 1..=complex.dim() {
            let mut by_facets: HashMap<Vec<CellId>, Option<CellId>> = HashMap::new();
            for id in in_scope.dim(d) {
                let mut f = complex.cells(d)[id].facets().to_vec();
                f.sort_unstable();
                by_facets
                    .entry(f)
                    .and_modify(|e| *e = None)
                    .or_insert(Some(id));
            }
            let mut row = vec![None; complex.count(d)];
            for id in in_scope.dim(d) {
                let image: Option<Vec<CellId>> = complex.cells(d)[id]
                    .facets()
                    .iter()
                    .map(|&f| pairs[d - 1][f])
                    .collect();
                let mut image = image.ok_or_else(|| {
                    Error::BoundaryNotSymmetric(format!("a facet of {d}-cell {id} has no partner"))
                })?;
                image.sort_unstable();
                match by_facets.get(&image) {
                    Some(Some(j)) => row[id] = Some(*j),
                    Some(None) => {
                        return Err(Error::BoundaryNotSymmetric(format!(
                            "image of {d}-cell {id} is ambiguous"
                        )))
                    }
                    None => {
                        return Err(Error::BoundaryNotSymmetric(format!(
                            "{d}-cell {id} has no image cell"
                        )))
                    }
                }
            }
            pairs.push(row);
        }
        Ok(Self { scope, pairs })
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn vertex(&self, v: VertexId) -> Option<VertexId> {
        self.pairs.first().and_then(|p| p.get(v).copied().flatten())
    }

    pub fn vertex_pairing(&self) -> &[Option<VertexId>] {
        self.pairs.first().map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, c: CellRef) -> Option<CellRef> {
        self.pairs
            .get(c.dim)
            .and_then(|p| p.get(c.id).copied().flatten())
            .map(|id| CellRef::new(c.dim, id))
    }

    pub fn dim_pairs(&self, d: usize) -> &[Option<CellId>] {
        self.pairs.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn num_dims(&self) -> usize {
        self.pairs.len()
    }

    /// Unordered pairs `(a, b)` with `a < b` in dimension `d`.
    pub fn pairs_in_dim(&self, d: usize) -> Vec<(CellId, CellId)> {
        self.dim_pairs(d)
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.filter(|&b| a < b).map(|b| (a, b)))
            .collect()
    }
}

/// The boundary of a ball complex together with its involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryStructure {
    pub cells: CellSet,
    pub involution: Involution,
}

impl BoundaryStructure {
    /// Detects the boundary of `complex` and attaches `involution` to it.
    pub fn new(complex: &Complex, involution: Involution) -> Self {
        Self {
            cells: boundary_cells(complex),
            involution,
        }
    }
}

pub(crate) fn scope_cells(complex: &Complex, scope: Scope) -> CellSet {
    match scope {
        Scope::Full => {
            let mut s = CellSet::new();
            for c in complex.all_cells() {
                s.insert(c);
            }
            s
        }
        Scope::Boundary => boundary_cells(complex),
    }
}

/// Empty iff `inv` is a fixed-point-free simplicial involution on its scope.
pub fn validate_involution(complex: &Complex, inv: &Involution) -> ValidationReport {
    use ViolationCode::*;
    let mut r = ValidationReport::new();
    let in_scope = scope_cells(complex, inv.scope);
    if inv.pairs.len() > complex.dim() + 1 {
        r.global(
            OutOfScope,
            format!("pairing given up to dimension {}", inv.pairs.len() - 1),
        );
    }
    for d in 0..=complex.dim() {
        let row = inv.dim_pairs(d);
        if row.len() > complex.count(d) {
            r.global(
                OutOfScope,
                format!(
                    "{} {d}-cells paired, complex has {}",
                    row.len(),
                    complex.count(d)
                ),
            );
        }
        for id in 0..complex.count(d) {
            let here = CellRef::new(d, id);
            let image = row.get(id).copied().flatten();
            let Some(j) = image else {
                if in_scope.contains(here) {
                    r.cell(MissingPairing, d, id, "cell in scope has no partner");
                }
                continue;
            };
            if !in_scope.contains(here) {
                r.cell(OutOfScope, d, id, "cell outside the scope is paired");
                continue;
            }
            if j >= complex.count(d) || !in_scope.contains(CellRef::new(d, j)) {
                r.cell(
                    OutOfScope,
                    d,
                    id,
                    format!("partner {j} is not a cell in scope"),
                );
                continue;
            }
            if j == id {
                r.cell(FixedPoint, d, id, "cell is its own partner");
                continue;
            }
            if row.get(j).copied().flatten() != Some(id) {
                r.cell(
                    NotInvolutive,
                    d,
                    id,
                    format!("partner {j} does not pair back"),
                );
                continue;
            }
            if d == 0 {
                continue;
            }
            let cell = &complex.cells(d)[id];
            let target = &complex.cells(d)[j];
            let verts: Option<BTreeSet<VertexId>> =
                cell.vertices().iter().map(|&v| inv.vertex(v)).collect();
            let facets: Option<BTreeSet<CellId>> = cell
                .facets()
                .iter()
                .map(|&f| inv.dim_pairs(d - 1).get(f).copied().flatten())
                .collect();
            let same = |got: Option<BTreeSet<usize>>, want: &[usize]| {
                got == Some(want.iter().copied().collect())
            };
            if !same(verts, target.vertices()) {
                r.cell(
                    NotSimplicial,
                    d,
                    id,
                    format!("vertices do not map onto those of partner {j}"),
                );
            } else if !same(facets, target.facets()) {
                r.cell(
                    NotSimplicial,
                    d,
                    id,
                    format!("facets do not map onto those of partner {j}"),
                );
            }
        }
    }
    r
}

/// True iff no cell contains a vertex together with its partner.
pub fn antipodal_free_cells(complex: &Complex, inv: &Involution) -> bool {
    first_antipodal_cell(complex, inv).is_none()
}

pub(crate) fn first_antipodal_cell(complex: &Complex, inv: &Involution) -> Option<CellRef> {
    complex.all_cells().find(|&c| {
        let vs = complex.cell(c).vertices();
        vs.iter()
            .any(|&v| inv.vertex(v).is_some_and(|w| vs.contains(&w)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

impl Colour {
    pub fn flip(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
        }
    }
}

/// A colour for every vertex of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwoColouring {
    colours: Vec<Colour>,
}

impl TwoColouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Self { colours }
    }

    pub fn from_fn(n: usize, f: impl FnMut(VertexId) -> Colour) -> Self {
        Self {
            colours: (0..n).map(f).collect(),
        }
    }

    /// From explicit black and white lists over vertices `0..n`.
    pub fn from_lists(
        n: usize,
        black: &[VertexId],
        white: &[VertexId],
    ) -> Result<Self, ValidationReport> {
        let mut colours = vec![None; n];
        let mut r = ValidationReport::new();
        for (list, c) in [(black, Colour::Black), (white, Colour::White)] {
            for &v in list {
                match colours.get_mut(v) {
                    None => r.cell(
                        ViolationCode::UnknownVertex,
                        0,
                        v,
                        "coloured vertex does not exist",
                    ),
                    Some(Some(_)) => {
                        r.cell(ViolationCode::UncolouredVertex, 0, v, "vertex listed twice")
                    }
                    Some(slot) => *slot = Some(c),
                }
            }
        }
        for (v, c) in colours.iter().enumerate() {
            if c.is_none() {
                r.cell(
                    ViolationCode::UncolouredVertex,
                    0,
                    v,
                    "vertex has no colour",
                );
            }
        }
        if r.is_empty() {
            Ok(Self {
                colours: colours.into_iter().map(Option::unwrap).collect(),
            })
        } else {
            Err(r)
        }
    }

    pub fn colour(&self, v: VertexId) -> Colour {
        self.colours[v]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn push(&mut self, c: Colour) {
        self.colours.push(c);
    }

    pub fn set(&mut self, v: VertexId, c: Colour) {
        self.colours[v] = c;
    }

    pub fn flip(&mut self, v: VertexId) {
        self.colours[v] = self.colours[v].flip();
    }

    pub fn inverted(&self) -> TwoColouring {
        Self {
            colours: self.colours.iter().map(|c| c.flip()).collect(),
        }
    }

    pub fn vertices_of(&self, c: Colour) -> Vec<VertexId> {
        (0..self.colours.len())
            .filter(|&v| self.colours[v] == c)
            .collect()
    }

    pub fn bichromatic(&self, a: VertexId, b: VertexId) -> bool {
        self.colours[a] != self.colours[b]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringChecks {
    pub proper: bool,
    /// `None` when no involution was supplied.
    pub antisymmetric: Option<bool>,
}

pub fn colouring_checks(
    complex: &Complex,
    colouring: &TwoColouring,
    inv: Option<&Involution>,
) -> ColouringChecks {
    let r = colouring_report(complex, colouring, inv);
    let total = !r.has(ViolationCode::UncolouredVertex);
    ColouringChecks {
        proper: total && !r.has(ViolationCode::Monochromatic),
        antisymmetric: inv.map(|_| total && !r.has(ViolationCode::NotAntisymmetric)),
    }
}

/// Properness (no monochromatic maximal cell) and, given an involution,
/// antisymmetry on the involution's scope.
pub fn colouring_report(
    complex: &Complex,
    colouring: &TwoColouring,
    inv: Option<&Involution>,
) -> ValidationReport {
    use ViolationCode::*;
    let mut r = ValidationReport::new();
    if colouring.len() != complex.num_vertices() {
        r.global(
            UncolouredVertex,
            format!(
                "{} colours for {} vertices",
                colouring.len(),
                complex.num_vertices()
            ),
        );
        return r;
    }
    for c in complex.maximal_cells() {
        let vs = complex.cell(c).vertices();
        if vs
            .iter()
            .all(|&v| colouring.colour(v) == colouring.colour(vs[0]))
        {
            r.cell(
                Monochromatic,
                c.dim,
                c.id,
                format!("all vertices {:?}", colouring.colour(vs[0])),
            );
        }
    }
    if let Some(inv) = inv {
        for v in 0..complex.num_vertices() {
            if let Some(w) = inv.vertex(v) {
                if w < complex.num_vertices() && !colouring.bichromatic(v, w) {
                    r.cell(
                        NotAntisymmetric,
                        0,
                        v,
                        format!("same colour as partner {w}"),
                    );
                }
            }
        }
    }
    r
}

/// The spanning subgraph of the 1-skeleton made of bichromatic edges.
pub fn associated_graph(complex: &Complex, colouring: &TwoColouring) -> Graph {
    let mut g = Graph::with_labels((0..complex.num_vertices()).map(|v| Label::Index(v as u64)))
        .expect("indices are distinct");
    for e in complex.cells(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if colouring.bichromatic(a, b) {
            g.add_edge(a, b).expect("1-cells are loop-free");
        }
    }
    g
}

/// Identifies each vertex with its partner. The surviving vertex of a pair
/// is the smaller index and keeps its label; parallel edges collapse.
pub fn identify_antipodes(graph: &Graph, pairing: &[usize]) -> Result<Graph> {
    let n = graph.n();
    if pairing.len() != n {
        return Err(Error::BadParameter(format!(
            "pairing covers {} of {n} vertices",
            pairing.len()
        )));
    }
    for v in 0..n {
        let w = pairing[v];
        if w >= n || w == v || pairing[w] != v {
            return Err(Error::BadParameter(format!(
                "pairing is not a free involution at vertex {v}"
            )));
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&v| v < pairing[v]).collect();
    let mut index = vec![0; n];
    for (i, &v) in reps.iter().enumerate() {
        index[v] = i;
        index[pairing[v]] = i;
    }
    let mut q = Graph::with_labels(reps.iter().map(|&v| graph.label(v).clone()))?;
    for (a, b) in graph.edges() {
        if index[a] == index[b] {
            return Err(Error::LoopCreated(a, b));
        }
        q.add_edge(index[a], index[b])?;
    }
    Ok(q)
}

/// The graph on distinct `labels` (in order of first appearance by vertex
/// id) whose edges are the bichromatic 1-cells read through `labels`.
pub fn identified_graph(
    complex: &Complex,
    colouring: &TwoColouring,
    labels: &[Label],
) -> Result<Graph> {
    let mut g = Graph::new();
    for l in labels {
        if g.index_of(l).is_none() {
            g.add_vertex(l.clone())?;
        }
    }
    for e in complex.cells(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if colouring.bichromatic(a, b) {
            if labels[a] == labels[b] {
                return Err(Error::LoopCreated(a, b));
            }
            g.add_edge_by_label(&labels[a], &labels[b])?;
        }
    }
    Ok(g)
}
