//! The simplicial Mycielski lift: a quadrangulation of `P^n` by `G` becomes a
//! ball whose doubling quadrangulates `P^{n+1}` by `M_r(G)`.

use std::collections::HashMap;

use crate::complex::{CellRef, ComplexBuilder, VertexId};
use crate::graph::{mycielskian, Graph};
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::symmetry::{
    colouring_report, first_antipodal_cell, validate_involution, BoundaryStructure, Colour,
    Involution, Scope,
};
use crate::{Error, Result};

use super::{label_report, AuditOptions, SymmetricBall, SymmetricSphere};

/// Graph vertex labels in ascending order.
pub fn default_precedence(g: &Graph) -> Vec<Label> {
    let mut order = g.labels().to_vec();
    order.sort();
    order
}

/// Structural conditions on the input: a valid free involution with no cell
/// meeting a partner pair, a proper antisymmetric colouring, and labels
/// naming orbits.
fn input_report(s: &SymmetricSphere) -> ValidationReport {
    let c = &s.complex;
    let mut r = c.validate();
    if !r.is_empty() {
        return r;
    }
    r.extend(validate_involution(c, &s.involution));
    if s.involution.scope() != Scope::Full {
        r.global(
            ViolationCode::OutOfScope,
            "involution must act on every cell",
        );
    }
    if let Some(cell) = first_antipodal_cell(c, &s.involution) {
        r.cell(
            ViolationCode::AntipodalCell,
            cell.dim,
            cell.id,
            "cell contains a vertex and its partner",
        );
    }
    r.extend(colouring_report(c, &s.colouring, Some(&s.involution)));
    r.extend(label_report(&s.labels, c.num_vertices(), |v| {
        s.involution.vertex(v)
    }));
    r
}

/// Lifts `s` with `r` levels. Vertices of `s` become the top two levels: the
/// black copy of graph vertex `v` is `v^{r+1}` and the white copy `v^r`. For
/// each level `i = r−1, …, 1` and each `v` in `precedence`, a new vertex
/// `v^i` coloured like `v^{i+2}` is coned over the closed star of `v^{i+2}`
/// among active vertices; then `v^i` becomes active and `v^{i+2}` inactive.
/// A final apex `z`, coloured like level 2, is coned over everything active.
///
/// The boundary of the result is `s` itself with unchanged ids; vertex
/// names are rewritten to their levels.
pub fn mycielski_lift(
    s: &SymmetricSphere,
    r: usize,
    precedence: &[Label],
) -> Result<SymmetricBall> {
    if r == 0 {
        return Err(Error::BadParameter("lift needs r >= 1".into()));
    }
    let input = input_report(s);
    if !input.is_empty() {
        return Err(Error::InputNotQuadrangulation(input));
    }
    let g = s.graph()?;
    let mut sorted_order = precedence.to_vec();
    sorted_order.sort();
    if sorted_order != default_precedence(&g) {
        return Err(Error::BadParameter(
            "precedence is not an order on the graph's vertices".into(),
        ));
    }

    let t = &s.complex;
    let top = r + 1;
    // vertex at (graph vertex, level)
    let mut at: HashMap<(&Label, usize), VertexId> = HashMap::new();
    for v in 0..t.num_vertices() {
        let level = if s.colouring.colour(v) == Colour::Black {
            top
        } else {
            r
        };
        at.insert((&s.labels[v], level), v);
    }
    let colour_of_level = |level: usize| {
        if (top - level) % 2 == 0 {
            Colour::Black
        } else {
            Colour::White
        }
    };

    let mut base = t.clone();
    for v in 0..t.num_vertices() {
        let level = if s.colouring.colour(v) == Colour::Black {
            top
        } else {
            r
        };
        base.set_label(
            v,
            Some(Label::level(s.labels[v].clone(), level as u32).to_string()),
        );
    }
    let mut b = ComplexBuilder::from_complex(base);
    let mut colouring = s.colouring.clone();
    let mut labels: Vec<Label> = s
        .labels
        .iter()
        .map(|l| Label::level(l.clone(), r as u32))
        .collect();
    let mut active = vec![true; t.num_vertices()];
    let mut incidence = t.vertex_incidence();
    let coords = t.has_coords();

    for i in (1..r).rev() {
        for v in precedence {
            let src = at[&(v, i + 2)];
            let position = coords.then(|| {
                let scale = 1.0 - i as f64 / (r + 2) as f64;
                b.complex()
                    .coords(src)
                    .unwrap()
                    .iter()
                    .map(|x| scale * x)
                    .collect()
            });
            let name = Label::level(v.clone(), i as u32);
            let new = b.add_vertex(Some(name.to_string()), position);
            let mut seeds = vec![CellRef::new(0, src)];
            seeds.extend(
                incidence[src]
                    .iter()
                    .copied()
                    .filter(|&c| b.complex().cell(c).vertices().iter().all(|&w| active[w])),
            );
            let star = b.complex().closure(seeds);
            let cone = b.cone(new, &star)?;
            incidence.push(Vec::new());
            for c in cone.cones() {
                for &w in b.complex().cell(c).vertices() {
                    incidence[w].push(c);
                }
            }
            colouring.push(colour_of_level(i + 2));
            labels.push(name);
            active.push(true);
            active[src] = false;
            at.insert((v, i), new);
        }
    }

    let width = t.coords(0).map_or(0, |p| p.len());
    let keep = b.complex().induced_cells(&active);
    let z = b.add_vertex(
        Some(Label::Apex.to_string()),
        coords.then(|| vec![0.0; width]),
    );
    b.cone(z, &keep)?;
    colouring.push(colour_of_level(2));
    labels.push(Label::Apex);
    let complex = b.build();

    let mut pairs: Vec<Vec<Option<usize>>> = Vec::new();
    for d in 0..=complex.dim() {
        let mut row = s.involution.dim_pairs(d).to_vec();
        row.resize(complex.count(d), None);
        pairs.push(row);
    }
    let boundary = BoundaryStructure::new(&complex, Involution::from_parts(Scope::Boundary, pairs));
    let ball = SymmetricBall {
        complex,
        boundary,
        colouring,
        labels,
    };
    ball.verify(AuditOptions::default())?;

    let expected = mycielskian(&g, r as u32)?;
    if !ball.graph()?.same_labelled(&expected) {
        let mut rep = ValidationReport::new();
        rep.global(
            ViolationCode::GraphMismatch,
            "identified graph differs from the generalized Mycielskian",
        );
        return Err(Error::VerificationFailed {
            stage: "mycielskian".into(),
            report: rep,
        });
    }
    Ok(ball)
}
