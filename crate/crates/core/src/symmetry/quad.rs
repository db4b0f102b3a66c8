//! Predicates on a set of 1-cells `G`: the quadrangulation condition, the
//! parity of closed walks against their homology class, the simplicial map
//! into the box complex, and the edge-length fineness test.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CellRef, Complex, VertexId};
use crate::graph::{box_membership, Graph};
use crate::homology::{betti_z2, BoundarySolver, ChainZ2};
use crate::report::{ValidationReport, ViolationCode};
use crate::{Error, Result};

use super::{Colour, Quotient, TwoColouring};

/// A set of 1-cells of one complex, read as the edges of a graph on its
/// vertices. Parallel 1-cells are distinct members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    cells: BTreeSet<CellId>,
}

impl EdgeSet {
    pub fn new(cells: impl IntoIterator<Item = CellId>) -> Self {
        Self {
            cells: cells.into_iter().collect(),
        }
    }

    /// The bichromatic 1-cells.
    pub fn bichromatic(complex: &Complex, colouring: &TwoColouring) -> Self {
        Self::new((0..complex.count(1)).filter(|&e| {
            let vs = complex.cells(1)[e].vertices();
            colouring.bichromatic(vs[0], vs[1])
        }))
    }

    /// Every 1-cell whose endpoints are adjacent in `g`, where graph vertex
    /// `i` is complex vertex `i`.
    pub fn from_graph(complex: &Complex, g: &Graph) -> Self {
        Self::new((0..complex.count(1)).filter(|&e| {
            let vs = complex.cells(1)[e].vertices();
            vs[1] < g.n() && g.has_edge(vs[0], vs[1])
        }))
    }

    /// The image of the set in a quotient.
    pub fn project(&self, q: &Quotient) -> Self {
        Self::new(self.cells.iter().map(|&e| q.projection[1][e]))
    }

    pub fn contains(&self, e: CellId) -> bool {
        self.cells.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells.iter().copied()
    }

    /// Simple graph on the complex's vertices (labels `Index(v)`).
    pub fn to_graph(&self, complex: &Complex) -> Graph {
        let mut g =
            Graph::with_labels((0..complex.num_vertices()).map(|v| crate::Label::Index(v as u64)))
                .expect("indices are distinct");
        for e in self.iter() {
            let vs = complex.cells(1)[e].vertices();
            g.add_edge(vs[0], vs[1]).expect("1-cells are loop-free");
        }
        g
    }
}

/// The 1-cells in the face closure of a cell.
fn one_faces(complex: &Complex, c: CellRef) -> BTreeSet<CellId> {
    if c.dim == 0 {
        return BTreeSet::new();
    }
    let mut layer: BTreeSet<CellId> = [c.id].into();
    for d in (2..=c.dim).rev() {
        layer = layer
            .iter()
            .flat_map(|&id| complex.cells(d)[id].facets().iter().copied())
            .collect();
    }
    layer
}

/// Empty iff every maximal cell sees, among its own 1-faces in `edges`, a
/// complete bipartite graph on all of its vertices with at least one edge.
pub fn quadrangulation_check(complex: &Complex, edges: &EdgeSet) -> ValidationReport {
    let mut r = ValidationReport::new();
    for c in complex.maximal_cells() {
        let verts = complex.cell(c).vertices();
        let pairs: BTreeSet<(VertexId, VertexId)> = one_faces(complex, c)
            .into_iter()
            .filter(|&e| edges.contains(e))
            .map(|e| {
                let vs = complex.cells(1)[e].vertices();
                (vs[0], vs[1])
            })
            .collect();
        if let Err((code, detail)) = complete_bipartite(verts, &pairs) {
            r.cell(code, c.dim, c.id, detail);
        }
    }
    r
}

fn complete_bipartite(
    verts: &[VertexId],
    pairs: &BTreeSet<(VertexId, VertexId)>,
) -> Result<(), (ViolationCode, String)> {
    if pairs.is_empty() {
        return Err((ViolationCode::NoEdge, "no edge of G in this cell".into()));
    }
    let mut side: BTreeMap<VertexId, bool> = BTreeMap::new();
    let mut queue = VecDeque::from([(verts[0], false)]);
    while let Some((v, s)) = queue.pop_front() {
        if let Some(&t) = side.get(&v) {
            if t != s {
                return Err((
                    ViolationCode::NotBipartite,
                    "G restricted to the cell has an odd cycle".into(),
                ));
            }
            continue;
        }
        side.insert(v, s);
        for &(a, b) in pairs {
            if a == v {
                queue.push_back((b, !s));
            } else if b == v {
                queue.push_back((a, !s));
            }
        }
    }
    if side.len() < verts.len() {
        return Err((
            ViolationCode::NotBipartite,
            "G restricted to the cell is disconnected".into(),
        ));
    }
    let left = side.values().filter(|&&s| s).count();
    if pairs.len() != left * (verts.len() - left) {
        return Err((
            ViolationCode::NotBipartite,
            "G restricted to the cell misses a cross edge".into(),
        ));
    }
    Ok(())
}

/// Empty iff every 2-cell has exactly 0 or 2 of its edges in `edges`.
pub fn parity_audit(complex: &Complex, edges: &EdgeSet) -> ValidationReport {
    let mut r = ValidationReport::new();
    for (id, t) in complex.cells(2).iter().enumerate() {
        let k = t.facets().iter().filter(|&&e| edges.contains(e)).count();
        if k % 2 == 1 {
            r.cell(
                ViolationCode::ParityViolation,
                2,
                id,
                format!("{k} edges of G"),
            );
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleParity {
    pub length: usize,
    /// Length mod 2.
    pub parity: u8,
    /// 0 if the cycle bounds, 1 otherwise.
    pub homology_class: u8,
    pub consistent: bool,
}

/// Checks many closed walks against one complex after a single elimination.
pub struct CycleAuditor<'a> {
    complex: &'a Complex,
    edges: &'a EdgeSet,
    solver: BoundarySolver,
    /// Whether a bounding walk forces odd length too: `b_1 = 1` and `G` is
    /// not bipartite.
    strict: bool,
}

impl<'a> CycleAuditor<'a> {
    pub fn new(complex: &'a Complex, edges: &'a EdgeSet) -> Result<Self> {
        if complex.dim() < 1 {
            return Err(Error::BadDimension {
                dim: complex.dim(),
                min: 1,
                max: usize::MAX,
            });
        }
        let solver = BoundarySolver::new(complex, 1)?;
        let strict =
            betti_z2(complex, 1)? == 1 && !crate::graph::is_bipartite(&edges.to_graph(complex));
        Ok(Self {
            complex,
            edges,
            solver,
            strict,
        })
    }

    pub fn check(&self, walk: &[CellId]) -> Result<CycleParity> {
        closed_walk_start(self.complex, self.edges, walk)?;
        let chain = ChainZ2::from_cells(1, walk.iter().copied());
        let bounds = self.solver.solve(&chain).is_some();
        let odd = walk.len() % 2 == 1;
        let consistent = if bounds { !odd } else { !self.strict || odd };
        Ok(CycleParity {
            length: walk.len(),
            parity: odd as u8,
            homology_class: (!bounds) as u8,
            consistent,
        })
    }
}

/// The start vertex of `walk` read as a closed walk through `edges`.
fn closed_walk_start(complex: &Complex, edges: &EdgeSet, walk: &[CellId]) -> Result<VertexId> {
    let bad = |msg: String| Err(Error::NotAClosedWalk(msg));
    let Some(&first) = walk.first() else {
        return bad("empty walk".into());
    };
    for &e in walk {
        if e >= complex.count(1) {
            return bad(format!("1-cell {e} does not exist"));
        }
        if !edges.contains(e) {
            return bad(format!("1-cell {e} is not an edge of G"));
        }
    }
    let ends = complex.cells(1)[first].vertices();
    'start: for &start in ends {
        let mut at = start;
        for &e in walk {
            let vs = complex.cells(1)[e].vertices();
            at = if vs[0] == at {
                vs[1]
            } else if vs[1] == at {
                vs[0]
            } else {
                continue 'start;
            };
        }
        if at == start {
            return Ok(start);
        }
    }
    bad("consecutive edges do not close up".into())
}

pub fn cycle_parity_vs_homology(
    complex: &Complex,
    edges: &EdgeSet,
    walk: &[CellId],
) -> Result<CycleParity> {
    CycleAuditor::new(complex, edges)?.check(walk)
}

/// Random closed walks along `edges`: a random walk of up to `2|V|` steps,
/// closed by a shortest path back to its start.
pub fn sample_closed_walks(
    complex: &Complex,
    edges: &EdgeSet,
    count: usize,
    seed: u64,
) -> Vec<Vec<CellId>> {
    let mut adj: Vec<Vec<(VertexId, CellId)>> = vec![Vec::new(); complex.num_vertices()];
    for e in edges.iter() {
        let vs = complex.cells(1)[e].vertices();
        adj[vs[0]].push((vs[1], e));
        adj[vs[1]].push((vs[0], e));
    }
    let starts: Vec<VertexId> = (0..adj.len()).filter(|&v| !adj[v].is_empty()).collect();
    if starts.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = (2 * complex.num_vertices()).max(2);
    (0..count)
        .map(|_| {
            let start = starts[rng.gen_range(0..starts.len())];
            let mut walk = Vec::new();
            let mut at = start;
            for _ in 0..rng.gen_range(1..=max_len) {
                let (next, e) = adj[at][rng.gen_range(0..adj[at].len())];
                walk.push(e);
                at = next;
            }
            walk.extend(path_back(&adj, at, start));
            walk
        })
        .collect()
}

fn path_back(adj: &[Vec<(VertexId, CellId)>], from: VertexId, to: VertexId) -> Vec<CellId> {
    let mut prev: Vec<Option<(VertexId, CellId)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        if v == to {
            break;
        }
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                q.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let (p, e) = prev[at].expect("start and end lie in one component");
        path.push(e);
        at = p;
    }
    path.reverse();
    path
}

/// Checks the map `v ↦ (g(v), c(v))` into the box complex of `graph`: each
/// cell's black and white images must span a box simplex, and partner
/// vertices must go to the same graph vertex with opposite colours.
pub fn verify_z2_map_to_box(
    complex: &Complex,
    colouring: &TwoColouring,
    graph: &Graph,
    to_graph: &[usize],
    pairing: &[Option<VertexId>],
) -> ValidationReport {
    let mut r = ValidationReport::new();
    for v in 0..complex.num_vertices() {
        match pairing.get(v).copied().flatten() {
            None => r.cell(ViolationCode::NotEquivariant, 0, v, "vertex has no partner"),
            Some(w) if to_graph[v] != to_graph[w] => r.cell(
                ViolationCode::NotEquivariant,
                0,
                v,
                format!("partner {w} maps to another graph vertex"),
            ),
            Some(w) if !colouring.bichromatic(v, w) => r.cell(
                ViolationCode::NotEquivariant,
                0,
                v,
                format!("partner {w} has the same colour"),
            ),
            Some(_) => {}
        }
    }
    for c in complex.all_cells() {
        let mut a1 = BTreeSet::new();
        let mut a2 = BTreeSet::new();
        for &v in complex.cell(c).vertices() {
            match colouring.colour(v) {
                Colour::Black => a1.insert(to_graph[v]),
                Colour::White => a2.insert(to_graph[v]),
            };
        }
        let (a1, a2): (Vec<_>, Vec<_>) = (a1.into_iter().collect(), a2.into_iter().collect());
        if !box_membership(graph, &a1, &a2) {
            r.cell(
                ViolationCode::NotInBoxComplex,
                c.dim,
                c.id,
                format!("({a1:?}, {a2:?}) is not a box simplex"),
            );
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fineness {
    pub max_bichromatic_edge_length: f64,
    pub threshold: f64,
    pub fine: bool,
}

pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Whether every bichromatic 1-cell is shorter than `2/sqrt(n+3)`, for a
/// complex on the unit sphere.
pub fn fineness_check(complex: &Complex, colouring: &TwoColouring, n: usize) -> Result<Fineness> {
    for v in 0..complex.num_vertices() {
        let p = complex.coords(v).ok_or(Error::MissingCoordinates(v))?;
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotOnUnitSphere { vertex: v, norm });
        }
    }
    let threshold = 2.0 / ((n + 3) as f64).sqrt();
    let mut max = 0.0f64;
    for e in complex.cells(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if colouring.bichromatic(a, b) {
            let (p, q) = (complex.coords(a).unwrap(), complex.coords(b).unwrap());
            let d = p
                .iter()
                .zip(q)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            max = max.max(d);
        }
    }
    Ok(Fineness {
        max_bichromatic_edge_length: max,
        threshold,
        fine: max < threshold,
    })
}
