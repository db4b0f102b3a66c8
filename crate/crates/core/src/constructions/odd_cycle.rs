use std::f64::consts::PI;

use crate::complex::ComplexBuilder;
use crate::label::Label;
use crate::symmetry::{Colour, Involution, Scope, TwoColouring};
use crate::{Error, Result};

use super::{AuditOptions, SymmetricSphere};

/// The `2(2k+1)`-cycle on the unit circle with the antipodal map. Colours
/// alternate around the cycle, which is antisymmetric because `2k+1` is odd;
/// vertex `i` is labelled `i mod (2k+1)`, so the identified graph is
/// `C_{2k+1}` in cycle order.
pub fn odd_cycle_sphere(k: usize) -> Result<SymmetricSphere> {
    if k == 0 {
        return Err(Error::BadParameter("odd cycle needs k >= 1".into()));
    }
    let m = 2 * k + 1;
    let len = 2 * m;
    let mut b = ComplexBuilder::new();
    for i in 0..len {
        let t = 2.0 * PI * i as f64 / len as f64;
        b.add_vertex(Some(format!("c{i}")), Some(vec![t.cos(), t.sin()]));
    }
    for i in 0..len {
        b.add_simplex(&[i, (i + 1) % len])?;
    }
    let complex = b.build();
    let pairing: Vec<_> = (0..len).map(|i| Some((i + m) % len)).collect();
    let involution = Involution::from_vertex_pairing(&complex, &pairing, Scope::Full)?;
    let colouring = TwoColouring::from_fn(len, |i| {
        if i % 2 == 0 {
            Colour::Black
        } else {
            Colour::White
        }
    });
    let labels = (0..len).map(|i| Label::Index((i % m) as u64)).collect();
    let s = SymmetricSphere {
        complex,
        involution,
        colouring,
        labels,
    };
    s.verify(AuditOptions::default())?;
    Ok(s)
}
