//! Small standard complexes used as fixtures and as inputs to the CLI.

use super::{Complex, ComplexBuilder};

/// Boundary of the `(n+1)`-dimensional cross-polytope, a symmetric
/// triangulation of the `n`-sphere on `2(n+1)` vertices. Vertex `2i` sits at
/// `+e_i`, vertex `2i+1` at `-e_i`, so the antipodal pairing is `2i <-> 2i+1`.
pub fn cross_polytope(n: usize) -> Complex {
    let mut b = ComplexBuilder::new();
    for i in 0..=n {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; n + 1];
            c[i] = sign;
            let name = if sign > 0.0 {
                format!("+e{i}")
            } else {
                format!("-e{i}")
            };
            b.add_vertex(Some(name), Some(c));
        }
    }
    // one vertex from each antipodal pair
    for mask in 0u32..(1 << (n + 1)) {
        let vs: Vec<usize> = (0..=n)
            .map(|i| 2 * i + ((mask >> i) & 1) as usize)
            .collect();
        b.add_simplex(&vs)
            .expect("cross-polytope facets are simplices");
    }
    b.build()
}

/// Boundary of the octahedron (the 2-dimensional cross-polytope boundary).
pub fn octahedron() -> Complex {
    cross_polytope(2)
}

/// Boundary of the `(n+1)`-simplex: a triangulation of the `n`-sphere.
pub fn simplex_boundary(n: usize) -> Complex {
    let mut b = ComplexBuilder::new();
    for _ in 0..n + 2 {
        b.add_vertex(None, None);
    }
    for skip in 0..n + 2 {
        let vs: Vec<usize> = (0..n + 2).filter(|&v| v != skip).collect();
        b.add_simplex(&vs).expect("faces of a simplex");
    }
    b.build()
}

/// The minimal 6-vertex triangulation of the real projective plane.
pub fn rp2_six_vertex() -> Complex {
    const TRIANGLES: [[usize; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    let mut b = ComplexBuilder::new();
    for _ in 0..6 {
        b.add_vertex(None, None);
    }
    for t in TRIANGLES {
        b.add_simplex(&t).expect("triangle");
    }
    b.build()
}

/// A single edge with its two endpoints.
pub fn single_edge() -> Complex {
    let mut b = ComplexBuilder::new();
    b.add_vertex(None, None);
    b.add_vertex(None, None);
    b.add_simplex(&[0, 1]).unwrap();
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
        assert_eq!(simplex_boundary(2).f_vector(), vec![4, 6, 4]);
        assert_eq!(rp2_six_vertex().f_vector(), vec![6, 15, 10]);
        assert_eq!(cross_polytope(3).f_vector(), vec![8, 24, 32, 16]);
    }

    #[test]
    fn rp2_is_a_closed_surface() {
        let c = rp2_six_vertex();
        let co = c.cofacets(1);
        assert!(co.iter().all(|t| t.len() == 2));
        assert_eq!(c.euler_characteristic(), 1);
    }
}
