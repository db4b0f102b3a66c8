//! Finite simple graphs with stable labels, graph families, homomorphisms,
//! box-complex membership and an exact chromatic-number solver.

pub mod boxcx;
pub mod chromatic;
pub mod dimacs;
pub mod families;
pub mod hom;
pub mod props;

use std::collections::{BTreeSet, HashMap};

use crate::label::Label;
use crate::{Error, Result};

pub use boxcx::{box_membership, common_neighbours};
pub use chromatic::{
    chromatic_number, Budget, ChromaticCertificate, LowerBoundWitness, SolverOptions,
};
pub use families::{complete, cycle, kneser, mycielski_graph, mycielskian, schrijver};
pub use hom::{lift_homomorphism, schrijver_homomorphism, verify_homomorphism, Homomorphism};
pub use props::{is_bipartite, odd_girth};

/// A simple graph. Vertices are dense indices `0..n` with unique labels.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    adj: Vec<BTreeSet<usize>>,
    edges: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_labels(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut g = Self::new();
        for l in labels {
            g.add_vertex(l)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: Label) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(Error::BadParameter(format!(
                "duplicate vertex label {label}"
            )));
        }
        let v = self.labels.len();
        self.index.insert(label.clone(), v);
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        Ok(v)
    }

    /// Adds the edge `ab`; returns whether it was new.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Err(Error::BadParameter(format!(
                "loop at vertex {}",
                self.labels[a]
            )));
        }
        if a >= self.n() || b >= self.n() {
            return Err(Error::BadParameter(format!("edge {a}-{b} out of range")));
        }
        let new = self.adj[a].insert(b);
        self.adj[b].insert(a);
        if new {
            self.edges += 1;
        }
        Ok(new)
    }

    pub fn add_edge_by_label(&mut self, a: &Label, b: &Label) -> Result<bool> {
        let ia = self
            .index_of(a)
            .ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
        let ib = self
            .index_of(b)
            .ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
        self.add_edge(ia, ib)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbour_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    /// Edges as ordered label pairs; two graphs with equal label sets and
    /// equal labelled edge sets are the same graph up to vertex order.
    pub fn labelled_edges(&self) -> BTreeSet<(Label, Label)> {
        self.edges()
            .map(|(a, b)| {
                let (la, lb) = (self.labels[a].clone(), self.labels[b].clone());
                if la <= lb {
                    (la, lb)
                } else {
                    (lb, la)
                }
            })
            .collect()
    }

    pub fn same_labelled(&self, other: &Graph) -> bool {
        let mine: BTreeSet<&Label> = self.labels.iter().collect();
        let theirs: BTreeSet<&Label> = other.labels.iter().collect();
        mine == theirs && self.labelled_edges() == other.labelled_edges()
    }

    /// Replaces every label through `f`; the images must stay distinct.
    pub fn relabel(&self, mut f: impl FnMut(usize, &Label) -> Label) -> Result<Graph> {
        let mut g = Graph::with_labels(self.labels.iter().enumerate().map(|(i, l)| f(i, l)))?;
        for (a, b) in self.edges() {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(a, b)| self.adj[a].intersection(&self.adj[b]).next().is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_bookkeeping() {
        let mut g = Graph::with_labels((0..4).map(Label::Index)).unwrap();
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        g.add_edge(2, 3).unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_vertex(Label::Index(3)).is_err());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn labelled_equality_ignores_vertex_order() {
        let mut a = Graph::with_labels([Label::Index(0), Label::Index(1), Label::Apex]).unwrap();
        a.add_edge(0, 2).unwrap();
        let mut b = Graph::with_labels([Label::Apex, Label::Index(1), Label::Index(0)]).unwrap();
        b.add_edge(2, 0).unwrap();
        assert!(a.same_labelled(&b));
        b.add_edge(1, 0).unwrap();
        assert!(!a.same_labelled(&b));
    }
}
