use std::collections::HashMap;

use super::{Cell, CellId, CellRef, CellSet, Complex, Vertex, VertexId};
use crate::{Error, Result};

/// Incremental, single-writer construction of a [`Complex`].
///
/// Ids are handed out in insertion order, so a deterministic sequence of
/// calls always yields the same complex.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    complex: Complex,
    /// First cell registered for each sorted vertex set.
    by_vertices: HashMap<Vec<VertexId>, CellId>,
}

/// Maps each coned cell to the cell `cone(apex, cell)`.
#[derive(Clone, Debug, Default)]
pub struct ConeMap {
    pub apex: VertexId,
    map: HashMap<CellRef, CellId>,
}

impl ConeMap {
    pub fn get(&self, c: CellRef) -> Option<CellRef> {
        self.map.get(&c).map(|&id| CellRef::new(c.dim + 1, id))
    }

    /// The new cells, in no particular order.
    pub fn cones(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.map.iter().map(|(c, &id)| CellRef::new(c.dim + 1, id))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Continues building on top of an existing complex; existing ids are kept.
    pub fn from_complex(complex: Complex) -> Self {
        let mut by_vertices = HashMap::new();
        for d in 1..complex.cells.len() {
            for (id, c) in complex.cells[d].iter().enumerate() {
                by_vertices.entry(c.vertices.clone()).or_insert(id);
            }
        }
        Self {
            complex,
            by_vertices,
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn build(self) -> Complex {
        self.complex
    }

    pub fn add_vertex(&mut self, label: Option<String>, coords: Option<Vec<f64>>) -> VertexId {
        let v = self.complex.vertices.len();
        self.complex.vertices.push(Vertex { label, coords });
        if self.complex.cells.is_empty() {
            self.complex.cells.push(Vec::new());
        }
        self.complex.cells[0].push(Cell::new(vec![v], vec![]));
        v
    }

    /// Appends a `dim`-cell with the given vertices and facet ids
    /// (`dim >= 1`). Vertices are sorted and facets reordered so that facet
    /// `k` omits vertex `k`.
    pub fn add_cell(
        &mut self,
        dim: usize,
        vertices: &[VertexId],
        facets: &[CellId],
    ) -> Result<CellId> {
        if dim == 0 {
            return Err(Error::BadDimension {
                dim,
                min: 1,
                max: usize::MAX,
            });
        }
        if vertices.len() != dim + 1 {
            return Err(Error::VertexArityMismatch {
                dim,
                expected: dim + 1,
                actual: vertices.len(),
            });
        }
        if facets.len() != dim + 1 {
            return Err(Error::VertexArityMismatch {
                dim,
                expected: dim + 1,
                actual: facets.len(),
            });
        }
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        if let Some(&v) = vs.iter().find(|&&v| v >= self.complex.num_vertices()) {
            return Err(Error::UnknownVertex(v));
        }
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInCell { vertex: w[0] });
        }
        let lower = self.complex.cells(dim - 1);
        let mut ordered: Vec<Option<CellId>> = vec![None; dim + 1];
        for &f in facets {
            let fc = lower.get(f).ok_or(Error::DanglingFacet {
                dim: dim - 1,
                facet: f,
            })?;
            let omitted = omitted_position(&vs, &fc.vertices).ok_or_else(|| {
                Error::FacetCoverage(format!(
                    "facet {f} on {:?} is not a face of {vs:?}",
                    fc.vertices
                ))
            })?;
            if ordered[omitted].replace(f).is_some() {
                return Err(Error::FacetCoverage(format!(
                    "two facets omit vertex {} of {vs:?}",
                    vs[omitted]
                )));
            }
        }
        let facets: Vec<CellId> = ordered
            .into_iter()
            .map(|f| f.expect("all positions filled"))
            .collect();
        if self.complex.cells.len() <= dim {
            self.complex.cells.resize_with(dim + 1, Vec::new);
        }
        let id = self.complex.cells[dim].len();
        self.by_vertices.entry(vs.clone()).or_insert(id);
        self.complex.cells[dim].push(Cell::new(vs, facets));
        Ok(id)
    }

    /// Looks up the first registered cell on this vertex set.
    pub fn find(&self, vertices: &[VertexId]) -> Option<CellRef> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        if vs.len() == 1 {
            return (vs[0] < self.complex.num_vertices()).then(|| CellRef::new(0, vs[0]));
        }
        self.by_vertices
            .get(&vs)
            .map(|&id| CellRef::new(vs.len() - 1, id))
    }

    /// Adds the simplex on `vertices` together with any missing faces,
    /// reusing existing cells found by vertex set. Returns the (possibly
    /// pre-existing) cell.
    pub fn add_simplex(&mut self, vertices: &[VertexId]) -> Result<CellRef> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInCell { vertex: w[0] });
        }
        if vs.is_empty() {
            return Err(Error::VertexArityMismatch {
                dim: 0,
                expected: 1,
                actual: 0,
            });
        }
        if let Some(c) = self.find(&vs) {
            return Ok(c);
        }
        if vs.len() == 1 {
            return Err(Error::UnknownVertex(vs[0]));
        }
        let mut facets = Vec::with_capacity(vs.len());
        for k in 0..vs.len() {
            let mut face = vs.clone();
            face.remove(k);
            facets.push(self.add_simplex(&face)?.id);
        }
        let dim = vs.len() - 1;
        let id = self.add_cell(dim, &vs, &facets)?;
        Ok(CellRef::new(dim, id))
    }

    /// Adds `apex * rho` for every cell `rho` of `cells`, which must be
    /// closed under facets and must not contain `apex`. Cells are coned in
    /// order of dimension, then id.
    pub fn cone(&mut self, apex: VertexId, cells: &CellSet) -> Result<ConeMap> {
        let mut map = HashMap::new();
        let snapshot: Vec<CellRef> = cells.iter().collect();
        for c in snapshot {
            let cell = self.complex.cell(c).clone();
            if cell.contains(apex) {
                return Err(Error::DuplicateVertexInCell { vertex: apex });
            }
            let mut vs = cell.vertices.clone();
            vs.push(apex);
            let mut facets = vec![c.id];
            if c.dim == 0 {
                facets.push(apex);
            } else {
                for &f in &cell.facets {
                    let fc = CellRef::new(c.dim - 1, f);
                    let coned = map.get(&fc).ok_or(Error::DanglingFacet {
                        dim: c.dim,
                        facet: f,
                    })?;
                    facets.push(*coned);
                }
            }
            let id = self.add_cell(c.dim + 1, &vs, &facets)?;
            map.insert(c, id);
        }
        Ok(ConeMap { apex, map })
    }
}

/// Position in `outer` of the single vertex missing from `inner`, if `inner`
/// is `outer` minus exactly one element.
fn omitted_position(outer: &[VertexId], inner: &[VertexId]) -> Option<usize> {
    if inner.len() + 1 != outer.len() {
        return None;
    }
    let mut inner_sorted = inner.to_vec();
    inner_sorted.sort_unstable();
    let mut skipped = None;
    let mut j = 0;
    for (i, &v) in outer.iter().enumerate() {
        if j < inner_sorted.len() && inner_sorted[j] == v {
            j += 1;
        } else if skipped.is_none() {
            skipped = Some(i);
        } else {
            return None;
        }
    }
    if j == inner_sorted.len() {
        skipped
    } else {
        None
    }
}
