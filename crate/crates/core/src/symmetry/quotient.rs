use crate::complex::{CellId, CellRef, Complex, ComplexBuilder};
use crate::{Error, Result};

use super::{first_antipodal_cell, validate_involution, Involution, Scope};

/// An orbit complex together with the map sending each cell to its orbit.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    /// `projection[d][id]` is the quotient cell of the `d`-cell `id`.
    pub projection: Vec<Vec<CellId>>,
}

impl Quotient {
    pub fn project(&self, c: CellRef) -> CellRef {
        CellRef::new(c.dim, self.projection[c.dim][c.id])
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.projection[0][v]
    }
}

/// One cell per orbit, represented by the member with the smaller id; orbit
/// ids are assigned in increasing order of representative.
pub fn quotient(complex: &Complex, inv: &Involution) -> Result<Quotient> {
    if inv.scope() != Scope::Full {
        return Err(Error::NotFree(
            "involution acts on the boundary only".into(),
        ));
    }
    let report = validate_involution(complex, inv);
    if !report.is_empty() {
        return Err(Error::NotFree(report.to_string()));
    }
    if let Some(c) = first_antipodal_cell(complex, inv) {
        return Err(Error::LoopsWouldForm {
            dim: c.dim,
            cell: c.id,
        });
    }
    let mut b = ComplexBuilder::new();
    let mut projection: Vec<Vec<CellId>> = Vec::new();
    for d in 0..=complex.dim() {
        let pairs = inv.dim_pairs(d);
        let mut proj = vec![usize::MAX; complex.count(d)];
        for id in 0..complex.count(d) {
            let partner = pairs[id].expect("validated");
            if id > partner {
                continue;
            }
            let new_id = if d == 0 {
                let v = complex.vertex(id);
                b.add_vertex(v.label.clone(), v.coords.clone())
            } else {
                let cell = &complex.cells(d)[id];
                let verts: Vec<usize> = cell.vertices().iter().map(|&v| projection[0][v]).collect();
                let facets: Vec<usize> = cell
                    .facets()
                    .iter()
                    .map(|&f| projection[d - 1][f])
                    .collect();
                b.add_cell(d, &verts, &facets)?
            };
            proj[id] = new_id;
            proj[partner] = new_id;
        }
        projection.push(proj);
    }
    Ok(Quotient {
        complex: b.build(),
        projection,
    })
}
