//! Mod-2 chains, boundary operators and homology.

mod bitmatrix;

pub use bitmatrix::{rank_gf2, BitMatrix, BitVec, EchelonSolver};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};

/// A formal sum of `dim`-cells with coefficients in Z2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ChainZ2 {
    pub dim: usize,
    #[serde(rename = "cells")]
    pub support: BTreeSet<CellId>,
}

impl ChainZ2 {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            support: BTreeSet::new(),
        }
    }

    /// Sum of the listed cells; a cell listed twice cancels.
    pub fn from_cells(dim: usize, cells: impl IntoIterator<Item = CellId>) -> Self {
        let mut c = Self::zero(dim);
        for id in cells {
            c.toggle(id);
        }
        c
    }

    pub fn toggle(&mut self, id: CellId) {
        if !self.support.remove(&id) {
            self.support.insert(id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &ChainZ2) -> Result<ChainZ2> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let support = self
            .support
            .symmetric_difference(&other.support)
            .copied()
            .collect();
        Ok(ChainZ2 {
            dim: self.dim,
            support,
        })
    }

    fn to_bits(&self, len: usize) -> BitVec {
        BitVec::from_ones(len, self.support.iter().copied())
    }

    fn check_in(&self, complex: &Complex) -> Result<()> {
        if self.dim > complex.dim() {
            return Err(Error::BadDimension {
                dim: self.dim,
                min: 0,
                max: complex.dim(),
            });
        }
        let count = complex.count(self.dim);
        if let Some(&bad) = self.support.iter().find(|&&id| id >= count) {
            return Err(Error::Parse(format!(
                "chain refers to missing {}-cell {bad}",
                self.dim
            )));
        }
        Ok(())
    }
}

/// The matrix of `∂_p`: rows are (p−1)-cells, columns are p-cells.
pub fn boundary_matrix(complex: &Complex, p: usize) -> Result<BitMatrix> {
    if p == 0 || p > complex.dim() {
        return Err(Error::BadDimension {
            dim: p,
            min: 1,
            max: complex.dim(),
        });
    }
    let mut m = BitMatrix::zeros(complex.count(p - 1), complex.count(p));
    for (j, cell) in complex.cells(p).iter().enumerate() {
        for &f in cell.facets() {
            m.flip(f, j);
        }
    }
    Ok(m)
}

/// Transpose of [`boundary_matrix`], built directly: one sparse row per p-cell.
fn facet_rows(complex: &Complex, p: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(complex.count(p), complex.count(p - 1));
    for (j, cell) in complex.cells(p).iter().enumerate() {
        for &f in cell.facets() {
            m.flip(j, f);
        }
    }
    m
}

/// `∂_p` of a chain; the boundary of a 0-chain is zero.
pub fn boundary(complex: &Complex, chain: &ChainZ2) -> Result<ChainZ2> {
    chain.check_in(complex)?;
    if chain.dim == 0 {
        return Ok(ChainZ2::zero(0));
    }
    let mut out = ChainZ2::zero(chain.dim - 1);
    for &id in &chain.support {
        for &f in complex.cells(chain.dim)[id].facets() {
            out.toggle(f);
        }
    }
    Ok(out)
}

pub fn is_cycle(complex: &Complex, chain: &ChainZ2) -> Result<bool> {
    Ok(boundary(complex, chain)?.is_zero())
}

/// Ranks of `∂_0 .. ∂_{n+1}`, with the two outer maps zero.
pub fn boundary_ranks(complex: &Complex) -> Vec<usize> {
    let n = complex.dim();
    let mut ranks = vec![0; n + 2];
    for (p, r) in ranks.iter_mut().enumerate().take(n + 1).skip(1) {
        *r = rank_gf2(&facet_rows(complex, p));
    }
    ranks
}

pub fn betti_z2(complex: &Complex, p: usize) -> Result<usize> {
    let n = complex.dim();
    if p > n {
        return Err(Error::BadDimension {
            dim: p,
            min: 0,
            max: n,
        });
    }
    let rank = |q: usize| {
        if q == 0 || q > n {
            0
        } else {
            rank_gf2(&facet_rows(complex, q))
        }
    };
    Ok(complex.count(p) - rank(p) - rank(p + 1))
}

/// All Betti numbers `b_0 .. b_n`.
pub fn betti_numbers(complex: &Complex) -> Vec<usize> {
    let ranks = boundary_ranks(complex);
    (0..=complex.dim())
        .map(|p| complex.count(p) - ranks[p] - ranks[p + 1])
        .collect()
}

/// Decides `c = ∂_{p+1} d` for many p-cycles `c` after one elimination.
pub struct BoundarySolver {
    p: usize,
    num_p_cells: usize,
    solver: Option<EchelonSolver>,
}

impl BoundarySolver {
    pub fn new(complex: &Complex, p: usize) -> Result<Self> {
        if p > complex.dim() {
            return Err(Error::BadDimension {
                dim: p,
                min: 0,
                max: complex.dim(),
            });
        }
        let solver = (p < complex.dim())
            .then(|| EchelonSolver::new(&boundary_matrix(complex, p + 1).unwrap()));
        Ok(Self {
            p,
            num_p_cells: complex.count(p),
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    /// The witness `d`, or `None` when the chain is not a boundary. The
    /// chain is assumed to be a cycle of this solver's dimension.
    pub fn solve(&self, chain: &ChainZ2) -> Option<ChainZ2> {
        debug_assert_eq!(chain.dim, self.p);
        match &self.solver {
            None => chain.is_zero().then(|| ChainZ2::zero(self.p + 1)),
            Some(s) => s.solve(&chain.to_bits(self.num_p_cells)).map(|x| ChainZ2 {
                dim: self.p + 1,
                support: x.ones().collect(),
            }),
        }
    }
}

fn require_cycle(complex: &Complex, chain: &ChainZ2) -> Result<()> {
    if !is_cycle(complex, chain)? {
        return Err(Error::NotACycle { dim: chain.dim });
    }
    Ok(())
}

/// A (p+1)-chain whose boundary is `chain`, if one exists.
pub fn is_boundary(complex: &Complex, chain: &ChainZ2) -> Result<Option<ChainZ2>> {
    require_cycle(complex, chain)?;
    Ok(BoundarySolver::new(complex, chain.dim)?.solve(chain))
}

pub fn homologous(complex: &Complex, c1: &ChainZ2, c2: &ChainZ2) -> Result<bool> {
    if c1.dim != c2.dim {
        return Err(Error::DimensionMismatch {
            left: c1.dim,
            right: c2.dim,
        });
    }
    require_cycle(complex, c1)?;
    require_cycle(complex, c2)?;
    Ok(is_boundary(complex, &c1.add(c2)?)?.is_some())
}

/// True when `∂_p ∘ ∂_{p+1} = 0` for every p.
pub fn boundary_squares_to_zero(complex: &Complex) -> bool {
    (1..complex.dim()).all(|p| {
        let a = boundary_matrix(complex, p).unwrap();
        let b = boundary_matrix(complex, p + 1).unwrap();
        a.mul(&b).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::library::{octahedron, rp2_six_vertex, simplex_boundary, single_edge};
    use crate::complex::ComplexBuilder;
    use proptest::prelude::*;

    fn euler_from_betti(b: &[usize]) -> i64 {
        b.iter()
            .enumerate()
            .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    }

    fn edge_id(c: &Complex, a: usize, b: usize) -> usize {
        c.cells(1)
            .iter()
            .position(|e| e.vertices() == [a.min(b), a.max(b)])
            .unwrap()
    }

    #[test]
    fn octahedron_matrices() {
        let o = octahedron();
        let d2 = boundary_matrix(&o, 2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (12, 8));
        assert!((0..8).all(|c| d2.col_count_ones(c) == 3));
        let d1 = boundary_matrix(&o, 1).unwrap();
        assert_eq!(rank_gf2(&d1), 5);
        assert!(boundary_squares_to_zero(&o));
        assert!(matches!(
            boundary_matrix(&o, 3),
            Err(Error::BadDimension { .. })
        ));
        assert!(matches!(
            boundary_matrix(&o, 0),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn single_edge_matrix() {
        let m = boundary_matrix(&single_edge(), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert!(m.get(0, 0) && m.get(1, 0));
    }

    #[test]
    fn betti_of_small_spaces() {
        assert_eq!(betti_numbers(&octahedron()), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&rp2_six_vertex()), vec![1, 1, 1]);
        assert_eq!(betti_numbers(&simplex_boundary(3)), vec![1, 0, 0, 1]);
        assert_eq!(betti_z2(&rp2_six_vertex(), 1).unwrap(), 1);
        for c in [octahedron(), rp2_six_vertex(), simplex_boundary(4)] {
            assert_eq!(
                euler_from_betti(&betti_numbers(&c)),
                c.euler_characteristic()
            );
        }
    }

    #[test]
    fn triangle_boundary_is_bounded_by_that_triangle() {
        let o = octahedron();
        for (t, tri) in o.cells(2).iter().enumerate() {
            let c = ChainZ2::from_cells(1, tri.facets().iter().copied());
            let w = is_boundary(&o, &c).unwrap().unwrap();
            assert_eq!(boundary(&o, &w).unwrap(), c);
            // the last column is free, so its own boundary gets the other hemisphere's worth
            if t + 1 < o.count(2) {
                assert_eq!(w.support.into_iter().collect::<Vec<_>>(), vec![t]);
            } else {
                assert_eq!(w.len(), o.count(2) - 1);
            }
        }
    }

    #[test]
    fn equator_is_bounded_by_a_hemisphere() {
        let o = octahedron();
        // +e0, +e1, -e0, -e1
        let eq = [0, 2, 1, 3];
        let c = ChainZ2::from_cells(1, (0..4).map(|i| edge_id(&o, eq[i], eq[(i + 1) % 4])));
        let w = is_boundary(&o, &c).unwrap().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(boundary(&o, &w).unwrap(), c);
        let hemisphere_apex = o.cells(2)[*w.support.first().unwrap()]
            .vertices()
            .iter()
            .copied()
            .find(|v| v / 2 == 2);
        let apex = hemisphere_apex.unwrap();
        assert!(w.support.iter().all(|&t| o.cells(2)[t].contains(apex)));
    }

    #[test]
    fn non_cycles_are_rejected() {
        let o = octahedron();
        let c = ChainZ2::from_cells(1, [0]);
        assert!(matches!(
            is_boundary(&o, &c),
            Err(Error::NotACycle { dim: 1 })
        ));
        let z = ChainZ2::zero(2);
        assert!(matches!(
            homologous(&o, &c, &z),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn top_dimension_has_only_the_zero_boundary() {
        // a 5-cycle as a 1-dimensional complex
        let mut b = ComplexBuilder::new();
        for _ in 0..5 {
            b.add_vertex(None, None);
        }
        for i in 0..5 {
            b.add_simplex(&[i, (i + 1) % 5]).unwrap();
        }
        let c5 = b.build();
        let cyc = ChainZ2::from_cells(1, 0..5);
        assert_eq!(is_boundary(&c5, &cyc).unwrap(), None);
        assert_eq!(
            is_boundary(&c5, &ChainZ2::zero(1)).unwrap(),
            Some(ChainZ2::zero(2))
        );
    }

    #[test]
    fn disjoint_triangles_are_homologous_on_the_octahedron() {
        let o = octahedron();
        let t0 = &o.cells(2)[0];
        let opposite: Vec<usize> = t0.vertices().iter().map(|v| v ^ 1).collect();
        let t1 = o
            .cells(2)
            .iter()
            .find(|t| t.vertices() == opposite.as_slice())
            .unwrap();
        let a = ChainZ2::from_cells(1, t0.facets().iter().copied());
        let b = ChainZ2::from_cells(1, t1.facets().iter().copied());
        assert!(homologous(&o, &a, &b).unwrap());
        assert!(homologous(&o, &a, &a).unwrap());
    }

    #[test]
    fn projective_plane_has_a_nontrivial_loop() {
        let rp2 = rp2_six_vertex();
        // triangles fill everything except for a non-bounding loop through 0,1,2? find one by search
        let solver = BoundarySolver::new(&rp2, 1).unwrap();
        let n1 = rp2.count(1);
        let mut found = false;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let ids = [(a, b), (b, c), (a, c)];
                    if rp2.cells(2).iter().any(|t| t.vertices() == [a, b, c]) {
                        continue;
                    }
                    let cyc = ChainZ2::from_cells(1, ids.iter().map(|&(x, y)| edge_id(&rp2, x, y)));
                    assert!(cyc.support.iter().all(|&e| e < n1));
                    found |= solver.solve(&cyc).is_none();
                }
            }
        }
        assert!(found, "some empty triangle must be a non-bounding loop");
    }

    #[test]
    fn chain_json_shape() {
        let c = ChainZ2::from_cells(1, [4, 2]);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"dim":1,"cells":[2,4]}"#
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        // sums of triangle boundaries are boundaries, and homology is transitive on them
        #[test]
        fn homologous_is_an_equivalence(picks in proptest::collection::vec(proptest::collection::btree_set(0usize..10, 0..6), 3)) {
            let rp2 = rp2_six_vertex();
            let chains: Vec<ChainZ2> = picks.iter().enumerate().map(|(i, ts)| {
                let mut c = ChainZ2::zero(1);
                for &t in ts {
                    for &f in rp2.cells(2)[t].facets() { c.toggle(f); }
                }
                // odd-indexed chains get the non-bounding generator added
                if i % 2 == 1 {
                    let gen = ChainZ2::from_cells(1, [edge_id(&rp2, 0, 1), edge_id(&rp2, 1, 3), edge_id(&rp2, 0, 3)]);
                    c = c.add(&gen).unwrap();
                }
                c
            }).collect();
            let h = |a: &ChainZ2, b: &ChainZ2| homologous(&rp2, a, b).unwrap();
            prop_assert!(h(&chains[0], &chains[2]));
            prop_assert_eq!(h(&chains[0], &chains[1]), h(&chains[1], &chains[0]));
            if h(&chains[0], &chains[1]) && h(&chains[1], &chains[2]) {
                prop_assert!(h(&chains[0], &chains[2]));
            }
        }
    }
}
