//! Necessary combinatorial and homological conditions for a complex to
//! triangulate a sphere, a ball, or a real projective space.

use crate::complex::{CellRef, CellSet, Complex};
use crate::homology::betti_numbers;
use crate::report::{ValidationReport, ViolationCode};

/// The face closure of the (n−1)-cells lying in exactly one n-cell.
pub fn boundary_cells(complex: &Complex) -> CellSet {
    let n = complex.dim();
    if n == 0 {
        return CellSet::new();
    }
    let co = complex.cofacets(n - 1);
    complex.closure(
        (0..co.len())
            .filter(|&f| co[f].len() == 1)
            .map(|f| CellRef::new(n - 1, f)),
    )
}

fn check_pure(complex: &Complex, n: usize, r: &mut ValidationReport) {
    if complex.dim() != n {
        r.global(
            ViolationCode::NotPure,
            format!("dimension {} instead of {n}", complex.dim()),
        );
        return;
    }
    for c in complex.maximal_cells() {
        if c.dim != n {
            r.cell(
                ViolationCode::NotPure,
                c.dim,
                c.id,
                format!("maximal cell of dimension {} < {n}", c.dim),
            );
        }
    }
}

/// Each (n−1)-cell must lie in a number of n-cells within `allowed`.
fn check_ridges(complex: &Complex, n: usize, allowed: &[usize], r: &mut ValidationReport) {
    if n == 0 || complex.dim() != n {
        return;
    }
    for (f, co) in complex.cofacets(n - 1).iter().enumerate() {
        if !allowed.contains(&co.len()) {
            r.cell(
                ViolationCode::NotPseudomanifold,
                n - 1,
                f,
                format!("lies in {} top cells", co.len()),
            );
        }
    }
}

fn check_betti(label: &str, got: &[usize], want: &[usize], r: &mut ValidationReport) {
    if got != want {
        r.global(
            ViolationCode::BettiMismatch,
            format!("{label} Betti numbers {got:?}, expected {want:?}"),
        );
    }
}

fn sphere_betti(n: usize) -> Vec<usize> {
    if n == 0 {
        return vec![2];
    }
    let mut b = vec![0; n + 1];
    b[0] = 1;
    b[n] = 1;
    b
}

/// Pure of dimension `n`, every ridge in exactly two top cells, and mod-2
/// Betti numbers `(1, 0, …, 0, 1)`.
pub fn sphere_audit(complex: &Complex, n: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_pure(complex, n, &mut r);
    check_ridges(complex, n, &[2], &mut r);
    if r.is_empty() {
        check_betti("sphere", &betti_numbers(complex), &sphere_betti(n), &mut r);
    }
    r
}

/// Pure of dimension `n`, every ridge in one or two top cells, Betti numbers
/// of a point, and a boundary with the Betti numbers of the (n−1)-sphere.
/// When `declared` is given it must equal the detected boundary.
pub fn ball_audit(complex: &Complex, n: usize, declared: Option<&CellSet>) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_pure(complex, n, &mut r);
    check_ridges(complex, n, &[1, 2], &mut r);
    if !r.is_empty() {
        return r;
    }
    let mut point = vec![0; n + 1];
    point[0] = 1;
    check_betti("ball", &betti_numbers(complex), &point, &mut r);
    let boundary = boundary_cells(complex);
    if let Some(declared) = declared {
        for c in boundary.iter().filter(|&c| !declared.contains(c)) {
            r.cell(
                ViolationCode::BoundaryMismatch,
                c.dim,
                c.id,
                "boundary cell missing from declared boundary",
            );
        }
        for c in declared.iter().filter(|&c| !boundary.contains(c)) {
            r.cell(
                ViolationCode::BoundaryMismatch,
                c.dim,
                c.id,
                "declared boundary cell is interior",
            );
        }
    }
    if n >= 1 {
        let (sub, _) = complex.subcomplex(&boundary);
        let inner = sphere_audit(&sub, n - 1);
        if !inner.is_empty() {
            r.global(
                ViolationCode::BoundaryMismatch,
                format!("boundary is not a {}-sphere: {inner}", n - 1),
            );
        }
    }
    r
}

/// Pure of dimension `n`, every ridge in two top cells, and all mod-2 Betti
/// numbers equal to 1.
pub fn projective_audit(complex: &Complex, n: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_pure(complex, n, &mut r);
    check_ridges(complex, n, &[2], &mut r);
    if r.is_empty() {
        check_betti(
            "projective",
            &betti_numbers(complex),
            &vec![1; n + 1],
            &mut r,
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::library::{cross_polytope, octahedron, rp2_six_vertex, simplex_boundary};
    use crate::complex::ComplexBuilder;

    fn solid_tetrahedron() -> Complex {
        let mut b = ComplexBuilder::new();
        for _ in 0..4 {
            b.add_vertex(None, None);
        }
        b.add_simplex(&[0, 1, 2, 3]).unwrap();
        b.build()
    }

    #[test]
    fn spheres_pass() {
        assert!(sphere_audit(&octahedron(), 2).is_empty());
        assert!(sphere_audit(&cross_polytope(3), 3).is_empty());
        assert!(sphere_audit(&simplex_boundary(4), 4).is_empty());
    }

    #[test]
    fn projective_plane_is_not_a_sphere() {
        let rp2 = rp2_six_vertex();
        assert!(sphere_audit(&rp2, 2).has(ViolationCode::BettiMismatch));
        assert!(projective_audit(&rp2, 2).is_empty());
    }

    #[test]
    fn solid_simplex_is_a_ball() {
        let t = solid_tetrahedron();
        assert_eq!(boundary_cells(&t).count(2), 4);
        assert!(ball_audit(&t, 3, None).is_empty());
        assert!(sphere_audit(&t, 3).has(ViolationCode::NotPseudomanifold));
    }

    #[test]
    fn declared_boundary_must_match() {
        let t = solid_tetrahedron();
        let mut declared = boundary_cells(&t);
        declared.insert(CellRef::new(3, 0));
        assert!(ball_audit(&t, 3, Some(&declared)).has(ViolationCode::BoundaryMismatch));
    }

    #[test]
    fn wrong_dimension_is_not_pure() {
        assert!(sphere_audit(&octahedron(), 3).has(ViolationCode::NotPure));
    }
}
