use crate::complex::{CellSet, ComplexBuilder};
use crate::label::Label;
use crate::symmetry::{Colour, Involution, Scope};
use crate::Result;

use super::{AuditOptions, SymmetricSphere};

/// The join with a black point and a white point, which are partners and
/// share a fresh graph label one past the largest index label in use.
/// Coordinates, when present, gain a last axis carrying the two poles.
pub fn suspension(s: &SymmetricSphere) -> Result<SymmetricSphere> {
    let t = &s.complex;
    let next = s
        .labels
        .iter()
        .filter_map(|l| {
            if let Label::Index(i) = l {
                Some(i + 1)
            } else {
                None
            }
        })
        .max()
        .unwrap_or(0);
    let label = Label::Index(next);
    let mut base = t.clone();
    let coords = t.has_coords();
    if coords {
        for v in 0..t.num_vertices() {
            let mut p = t.coords(v).unwrap().to_vec();
            p.push(0.0);
            base.set_coords(v, Some(p));
        }
    }
    let width = t.coords(0).map_or(0, |p| p.len());
    let pole = |sign: f64| -> Option<Vec<f64>> {
        coords.then(|| {
            let mut p = vec![0.0; width + 1];
            p[width] = sign;
            p
        })
    };
    let mut all = CellSet::new();
    for c in t.all_cells() {
        all.insert(c);
    }
    let mut b = ComplexBuilder::from_complex(base);
    let north = b.add_vertex(Some(format!("{label}+")), pole(1.0));
    let south = b.add_vertex(Some(format!("{label}-")), pole(-1.0));
    let up = b.cone(north, &all)?;
    let down = b.cone(south, &all)?;
    let complex = b.build();

    let mut pairs: Vec<Vec<Option<usize>>> = (0..=complex.dim())
        .map(|d| vec![None; complex.count(d)])
        .collect();
    pairs[0][north] = Some(south);
    pairs[0][south] = Some(north);
    for c in t.all_cells() {
        let image = s.involution.cell(c).expect("full involution");
        pairs[c.dim][c.id] = Some(image.id);
        let (a, b) = (up.get(c).unwrap(), down.get(image).unwrap());
        pairs[a.dim][a.id] = Some(b.id);
        pairs[b.dim][b.id] = Some(a.id);
    }
    let mut colouring = s.colouring.clone();
    colouring.push(Colour::Black);
    colouring.push(Colour::White);
    let mut labels = s.labels.clone();
    labels.push(label.clone());
    labels.push(label);
    let out = SymmetricSphere {
        complex,
        involution: Involution::from_parts(Scope::Full, pairs),
        colouring,
        labels,
    };
    out.verify(AuditOptions::default())?;
    Ok(out)
}
