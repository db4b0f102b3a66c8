use crate::complex::{CellId, CellRef, Complex, ComplexBuilder, VertexId};
use crate::report::ViolationCode;
use crate::{Error, Result};

use super::{
    boundary_cells, colouring_report, validate_involution, Involution, Scope, TwoColouring,
};

/// Two copies of a ball glued along their boundaries through the boundary
/// involution, with the full involution swapping the copies.
#[derive(Clone, Debug)]
pub struct Doubled {
    pub complex: Complex,
    pub involution: Involution,
    pub colouring: TwoColouring,
    /// For each vertex of the result, the ball vertex it copies.
    pub origin: Vec<VertexId>,
}

/// Glues the ball to a copy of itself, identifying each boundary cell of the
/// copy with the partner of its original. The first copy keeps its ids and
/// colours; interior cells of the second copy get fresh ids and inverted
/// colours.
///
/// With coordinates on every vertex, a point `p` of the first copy is lifted
/// to `(p, h)` and its copy to `(−p, −h)`, where `h = sqrt(max(0, 1 − |p|²))`.
pub fn double(ball: &Complex, boundary: &Involution, colouring: &TwoColouring) -> Result<Doubled> {
    if boundary.scope() != Scope::Boundary {
        return Err(Error::BoundaryNotSymmetric(
            "involution is not boundary-scoped".into(),
        ));
    }
    let report = validate_involution(ball, boundary);
    if !report.is_empty() {
        return Err(Error::BoundaryNotSymmetric(report.to_string()));
    }
    let anti = colouring_report(ball, colouring, Some(boundary));
    if anti.has(ViolationCode::NotAntisymmetric) || anti.has(ViolationCode::UncolouredVertex) {
        return Err(Error::ColouringNotBoundaryAntisymmetric(anti.to_string()));
    }
    let on_boundary = boundary_cells(ball);
    let lift = ball.has_coords();
    let mut first = ball.clone();
    if lift {
        for v in 0..ball.num_vertices() {
            first.set_coords(v, Some(lifted(ball.coords(v).unwrap(), 1.0)));
        }
    }
    let mut b = ComplexBuilder::from_complex(first);
    let mut col = colouring.clone();
    let mut origin: Vec<VertexId> = (0..ball.num_vertices()).collect();
    // copy[d][id]: the cell of the result standing for the second copy of `id`
    let mut copy: Vec<Vec<CellId>> = Vec::new();
    for d in 0..=ball.dim() {
        let mut row = vec![usize::MAX; ball.count(d)];
        for (id, slot) in row.iter_mut().enumerate() {
            if on_boundary.contains(CellRef::new(d, id)) {
                *slot = boundary.dim_pairs(d)[id].expect("validated");
                continue;
            }
            *slot = if d == 0 {
                let v = ball.vertex(id);
                let label = v.label.as_ref().map(|l| format!("{l}'"));
                let coords = lift.then(|| lifted(ball.coords(id).unwrap(), -1.0));
                col.push(colouring.colour(id).flip());
                origin.push(id);
                b.add_vertex(label, coords)
            } else {
                let cell = &ball.cells(d)[id];
                let verts: Vec<usize> = cell.vertices().iter().map(|&v| copy[0][v]).collect();
                let facets: Vec<usize> = cell.facets().iter().map(|&f| copy[d - 1][f]).collect();
                b.add_cell(d, &verts, &facets)?
            };
        }
        copy.push(row);
    }
    let complex = b.build();
    let mut pairs: Vec<Vec<Option<CellId>>> = Vec::new();
    for (d, images) in copy.iter().enumerate() {
        let mut row = vec![None; complex.count(d)];
        for (id, &c) in images.iter().enumerate() {
            row[id] = Some(c);
            if c >= ball.count(d) {
                row[c] = Some(id);
            }
        }
        pairs.push(row);
    }
    Ok(Doubled {
        complex,
        involution: Involution::from_parts(Scope::Full, pairs),
        colouring: col,
        origin,
    })
}

fn lifted(p: &[f64], sign: f64) -> Vec<f64> {
    let norm2: f64 = p.iter().map(|x| x * x).sum();
    let h = (1.0 - norm2).max(0.0).sqrt();
    p.iter()
        .map(|x| sign * x)
        .chain(std::iter::once(sign * h))
        .collect()
}

/// Scales every vertex to unit length.
pub fn radially_normalize(complex: &Complex) -> Result<Complex> {
    let mut out = complex.clone();
    for v in 0..complex.num_vertices() {
        let p = complex.coords(v).ok_or(Error::MissingCoordinates(v))?;
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotOnUnitSphere { vertex: v, norm });
        }
        out.set_coords(v, Some(p.iter().map(|x| x / norm).collect()));
    }
    Ok(out)
}
