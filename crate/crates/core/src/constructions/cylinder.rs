//! The cylinder ball whose boundary-identified associated graph is
//! `K_{2r+3}`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::complex::{CellId, Complex, ComplexBuilder, VertexId};
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::symmetry::{BoundaryStructure, Colour, Involution, Scope, TwoColouring};
use crate::{Error, Result};

use super::{AuditOptions, SymmetricBall};

const TOL: f64 = 1e-9;

struct Ids {
    m: usize,
}

impl Ids {
    fn x(&self, i: usize) -> VertexId {
        i % self.m
    }
    fn y(&self, i: usize) -> VertexId {
        self.m + i % self.m
    }
    fn top(&self) -> VertexId {
        2 * self.m
    }
    fn bottom(&self) -> VertexId {
        2 * self.m + 1
    }
    fn origin(&self) -> VertexId {
        2 * self.m + 2
    }
}

fn failed(stage: &str, detail: String) -> Error {
    let mut r = ValidationReport::new();
    r.global(ViolationCode::BoundaryMismatch, detail);
    Error::VerificationFailed {
        stage: stage.into(),
        report: r,
    }
}

/// Builds the ball for `r >= 1`. The construction is only known to work for
/// `r >= 3`; smaller `r` is attempted and rejected if any audit fails.
pub fn cylinder_complete(r: usize) -> Result<SymmetricBall> {
    if r == 0 {
        return Err(Error::BadParameter("cylinder needs r >= 1".into()));
    }
    let m = 2 * r + 1;
    let ids = Ids { m };
    let mut b = ComplexBuilder::new();
    for (family, z, shift) in [("x", 1.0, 0.0), ("y", -1.0, PI)] {
        for i in 0..m {
            let t = 2.0 * PI * i as f64 / m as f64 + shift;
            b.add_vertex(
                Some(format!("{family}_{i}")),
                Some(vec![t.cos(), t.sin(), z]),
            );
        }
    }
    b.add_vertex(Some("x".into()), Some(vec![0.0, 0.0, 1.0]));
    b.add_vertex(Some("y".into()), Some(vec![0.0, 0.0, -1.0]));
    b.add_vertex(Some("o".into()), Some(vec![0.0, 0.0, 0.0]));

    let mut layer: Vec<CellId> = Vec::new();
    for j in 1..r {
        for a in 0..m {
            let c = b.add_simplex(&[
                ids.x(a),
                ids.x(a + 1),
                ids.y(a + r + j),
                ids.y(a + r + j + 1),
            ])?;
            layer.push(c.id);
        }
    }
    let inner = inner_triangles(&ids, r);
    let visible = inner_boundary_by_visibility(b.complex(), &layer);
    let closed_form: BTreeSet<[VertexId; 3]> = inner.iter().copied().collect();
    if visible != closed_form {
        return Err(failed(
            "inner-boundary",
            format!(
                "{} faces visible from the origin, closed form has {}",
                visible.len(),
                closed_form.len()
            ),
        ));
    }
    let mut coned = inner;
    for a in 0..m {
        coned.push(sorted3(ids.top(), ids.x(a), ids.x(a + 1)));
        coned.push(sorted3(ids.bottom(), ids.y(a), ids.y(a + 1)));
    }
    for t in &coned {
        b.add_simplex(&[t[0], t[1], t[2], ids.origin()])?;
    }
    let complex = b.build();

    let colouring = TwoColouring::from_fn(complex.num_vertices(), |v| {
        if v < m || v == ids.bottom() || v == ids.origin() {
            Colour::Black
        } else {
            Colour::White
        }
    });
    let labels: Vec<Label> = (0..complex.num_vertices())
        .map(|v| match v {
            v if v < 2 * m => Label::Index((v % m) as u64),
            v if v < ids.origin() => Label::Index(m as u64),
            _ => Label::Index(m as u64 + 1),
        })
        .collect();
    let mut pairing: Vec<Option<VertexId>> = vec![None; complex.num_vertices()];
    for i in 0..m {
        pairing[ids.x(i)] = Some(ids.y(i));
        pairing[ids.y(i)] = Some(ids.x(i));
    }
    pairing[ids.top()] = Some(ids.bottom());
    pairing[ids.bottom()] = Some(ids.top());
    let involution = Involution::from_vertex_pairing(&complex, &pairing, Scope::Boundary)
        .map_err(|e| failed("boundary-involution", e.to_string()))?;
    let boundary = BoundaryStructure::new(&complex, involution);
    let ball = SymmetricBall {
        complex,
        boundary,
        colouring,
        labels,
    };
    ball.verify(AuditOptions::default())?;
    Ok(ball)
}

fn sorted3(a: VertexId, b: VertexId, c: VertexId) -> [VertexId; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// `Θ([x_0, x_1, y_{2r}]) ∪ Θ([x_0, y_{2r−1}, y_{2r}])`.
fn inner_triangles(ids: &Ids, r: usize) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for a in 0..ids.m {
        out.push(sorted3(ids.x(a), ids.x(a + 1), ids.y(a + 2 * r)));
        out.push(sorted3(ids.x(a), ids.y(a + 2 * r - 1), ids.y(a + 2 * r)));
    }
    out
}

/// Triangles lying in exactly one of the given 3-cells whose supporting
/// plane strictly separates the origin from that 3-cell's fourth vertex,
/// i.e. the boundary faces of the layer that face the origin.
pub fn inner_boundary_by_visibility(complex: &Complex, tets: &[CellId]) -> BTreeSet<[VertexId; 3]> {
    let mut owner: std::collections::BTreeMap<[VertexId; 3], Vec<VertexId>> = Default::default();
    for &t in tets {
        let vs = complex.cells(3)[t].vertices();
        for skip in 0..4 {
            let f: Vec<VertexId> = (0..4).filter(|&i| i != skip).map(|i| vs[i]).collect();
            owner.entry([f[0], f[1], f[2]]).or_default().push(vs[skip]);
        }
    }
    let p = |v: VertexId| {
        complex
            .coords(v)
            .expect("cylinder vertices have coordinates")
    };
    owner
        .into_iter()
        .filter(|(_, apexes)| apexes.len() == 1)
        .filter(|(f, apexes)| {
            let (a, b, c) = (p(f[0]), p(f[1]), p(f[2]));
            let u = sub(b, a);
            let v = sub(c, a);
            let n = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let side = |q: &[f64]| dot(&n, &sub(q, a));
            let o = side(&[0.0, 0.0, 0.0]);
            let w = side(p(apexes[0]));
            o.abs() > TOL && w.abs() > TOL && o.signum() != w.signum()
        })
        .map(|(f, _)| f)
        .collect()
}

fn sub(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
