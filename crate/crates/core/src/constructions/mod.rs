//! The constructions as executable builders, each returning only
//! after its output passes every audit.

mod cylinder;
mod lift;
mod odd_cycle;
mod pipelines;
mod suspension;

pub use cylinder::{cylinder_complete, inner_boundary_by_visibility};
pub use lift::{default_precedence, mycielski_lift};
pub use odd_cycle::odd_cycle_sphere;
pub use pipelines::{complete_graph_pipeline, mycielski_tower, schrijver_pipeline};
pub use suspension::suspension;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, VertexId};
use crate::graph::Graph;
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::symmetry::{
    associated_graph, ball_audit, colouring_report, double, first_antipodal_cell, identified_graph,
    identify_antipodes, parity_audit, projective_audit, quadrangulation_check, quotient,
    sample_closed_walks, sphere_audit, validate_involution, verify_z2_map_to_box,
    BoundaryStructure, CycleAuditor, EdgeSet, Involution, Scope, TwoColouring,
};
use crate::{Error, Result};

/// A 2-coloured sphere with a free simplicial involution; `labels[v]` is the
/// vertex of the identified graph that `v` projects to.
#[derive(Clone, Debug)]
pub struct SymmetricSphere {
    pub complex: Complex,
    pub involution: Involution,
    pub colouring: TwoColouring,
    pub labels: Vec<Label>,
}

/// A 2-coloured ball whose boundary carries a free involution.
#[derive(Clone, Debug)]
pub struct SymmetricBall {
    pub complex: Complex,
    pub boundary: BoundaryStructure,
    pub colouring: TwoColouring,
    pub labels: Vec<Label>,
}

/// Either kind of construction output.
#[derive(Clone, Debug)]
pub enum Quadrangulation {
    Sphere(SymmetricSphere),
    Ball(SymmetricBall),
}

impl Quadrangulation {
    /// Dimension of the projective space quadrangulated.
    pub fn projective_dimension(&self) -> usize {
        match self {
            Quadrangulation::Sphere(s) => s.dim(),
            Quadrangulation::Ball(b) => b.dim(),
        }
    }

    pub fn complex(&self) -> &Complex {
        match self {
            Quadrangulation::Sphere(s) => &s.complex,
            Quadrangulation::Ball(b) => &b.complex,
        }
    }

    pub fn colouring(&self) -> &TwoColouring {
        match self {
            Quadrangulation::Sphere(s) => &s.colouring,
            Quadrangulation::Ball(b) => &b.colouring,
        }
    }

    pub fn labels(&self) -> &[Label] {
        match self {
            Quadrangulation::Sphere(s) => &s.labels,
            Quadrangulation::Ball(b) => &b.labels,
        }
    }

    pub fn involution(&self) -> &Involution {
        match self {
            Quadrangulation::Sphere(s) => &s.involution,
            Quadrangulation::Ball(b) => &b.boundary.involution,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        identified_graph(self.complex(), self.colouring(), self.labels())
    }

    pub fn audit(&self, opts: AuditOptions) -> AuditReport {
        match self {
            Quadrangulation::Sphere(s) => s.audit(opts),
            Quadrangulation::Ball(b) => b.audit(opts),
        }
    }

    /// The symmetric sphere itself, or the doubled ball.
    pub fn sphere(&self) -> Result<SymmetricSphere> {
        match self {
            Quadrangulation::Sphere(s) => Ok(s.clone()),
            Quadrangulation::Ball(b) => b.double(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub name: String,
    pub passed: bool,
    pub violations: ValidationReport,
}

/// Outcomes of an audit run, in the order the audits were made. A run
/// stops at the first failing audit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn first_failure(&self) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| !e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn into_result(self) -> Result<AuditReport> {
        match self.first_failure() {
            None => Ok(self),
            Some(e) => Err(Error::VerificationFailed {
                stage: e.name.clone(),
                report: e.violations.clone(),
            }),
        }
    }

    /// Records an outcome; returns whether it passed.
    fn record(&mut self, name: &str, violations: ValidationReport) -> bool {
        let passed = violations.is_empty();
        self.entries.push(AuditEntry {
            name: name.to_string(),
            passed,
            violations,
        });
        passed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Closed walks sampled for the parity/homology comparison.
    pub walks: usize,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            walks: 100,
            seed: 0,
        }
    }
}

fn single(code: ViolationCode, detail: impl Into<String>) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.global(code, detail);
    r
}

/// Each label must name exactly one orbit: a partner pair, or for a ball a
/// single interior vertex.
fn label_report(
    labels: &[Label],
    n: usize,
    partner: impl Fn(VertexId) -> Option<VertexId>,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    if labels.len() != n {
        r.global(
            ViolationCode::UnknownLabel,
            format!("{} labels for {n} vertices", labels.len()),
        );
        return r;
    }
    let mut classes: HashMap<&Label, Vec<VertexId>> = HashMap::new();
    for (v, l) in labels.iter().enumerate() {
        classes.entry(l).or_default().push(v);
    }
    for v in 0..n {
        let class = &classes[&labels[v]];
        let ok = match partner(v) {
            Some(w) => class.len() == 2 && class.contains(&w),
            None => class.len() == 1,
        };
        if !ok {
            r.cell(
                ViolationCode::GraphMismatch,
                0,
                v,
                format!("label {} does not name exactly this orbit", labels[v]),
            );
        }
    }
    r
}

impl SymmetricSphere {
    /// Dimension of the sphere, and of the projective space it covers.
    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// The associated graph with partner vertices identified, on `labels`.
    pub fn graph(&self) -> Result<Graph> {
        identified_graph(&self.complex, &self.colouring, &self.labels)
    }

    /// Graph vertex index of every complex vertex.
    pub fn graph_index(&self, g: &Graph) -> Result<Vec<usize>> {
        self.labels
            .iter()
            .map(|l| {
                g.index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    pub fn audit(&self, opts: AuditOptions) -> AuditReport {
        let mut rep = AuditReport::default();
        self.audit_into(&mut rep, "", opts);
        rep
    }

    /// Runs [`SymmetricSphere::audit`] and fails on the first violation.
    pub fn verify(&self, opts: AuditOptions) -> Result<AuditReport> {
        self.audit(opts).into_result()
    }

    fn audit_into(&self, rep: &mut AuditReport, prefix: &str, opts: AuditOptions) -> Option<()> {
        let name = |s: &str| format!("{prefix}{s}");
        let c = &self.complex;
        let n = c.dim();
        rep.record(&name("complex"), c.validate()).then_some(())?;
        rep.record(&name("sphere"), sphere_audit(c, n))
            .then_some(())?;
        let mut inv = validate_involution(c, &self.involution);
        if self.involution.scope() != Scope::Full {
            inv.global(
                ViolationCode::OutOfScope,
                "sphere involution must act on every cell",
            );
        }
        if let Some(cell) = first_antipodal_cell(c, &self.involution) {
            inv.cell(
                ViolationCode::AntipodalCell,
                cell.dim,
                cell.id,
                "cell contains a vertex and its partner",
            );
        }
        rep.record(&name("involution"), inv).then_some(())?;
        rep.record(
            &name("labels"),
            label_report(&self.labels, c.num_vertices(), |v| {
                self.involution.vertex(v)
            }),
        )
        .then_some(())?;
        rep.record(
            &name("colouring"),
            colouring_report(c, &self.colouring, Some(&self.involution)),
        )
        .then_some(())?;

        let q = match quotient(c, &self.involution) {
            Ok(q) => q,
            Err(e) => {
                rep.record(
                    &name("quotient"),
                    single(ViolationCode::NotPseudomanifold, e.to_string()),
                );
                return None;
            }
        };
        let mut qr = q.complex.validate();
        qr.extend(projective_audit(&q.complex, n));
        rep.record(&name("quotient"), qr).then_some(())?;
        let edges = EdgeSet::bichromatic(c, &self.colouring).project(&q);
        rep.record(
            &name("quadrangulation"),
            quadrangulation_check(&q.complex, &edges),
        )
        .then_some(())?;
        rep.record(&name("parity"), parity_audit(&q.complex, &edges))
            .then_some(())?;

        let graph = match self.graph() {
            Ok(g) => g,
            Err(e) => {
                rep.record(
                    &name("commutation"),
                    single(ViolationCode::GraphMismatch, e.to_string()),
                );
                return None;
            }
        };
        rep.record(&name("commutation"), self.commutation(&q, &edges, &graph))
            .then_some(())?;
        let to_graph = self.graph_index(&graph).expect("labels are graph vertices");
        let z2 = verify_z2_map_to_box(
            c,
            &self.colouring,
            &graph,
            &to_graph,
            self.involution.vertex_pairing(),
        );
        rep.record(&name("z2-map"), z2).then_some(())?;

        let mut cyc = ValidationReport::new();
        match CycleAuditor::new(&q.complex, &edges) {
            Err(e) => cyc.global(ViolationCode::CycleInconsistent, e.to_string()),
            Ok(aud) => {
                for (i, walk) in sample_closed_walks(&q.complex, &edges, opts.walks, opts.seed)
                    .iter()
                    .enumerate()
                {
                    match aud.check(walk) {
                        Ok(p) if p.consistent => {}
                        Ok(p) => cyc.global(
                            ViolationCode::CycleInconsistent,
                            format!(
                                "walk {i}: length {}, homology class {}",
                                p.length, p.homology_class
                            ),
                        ),
                        Err(e) => {
                            cyc.global(ViolationCode::CycleInconsistent, format!("walk {i}: {e}"))
                        }
                    }
                }
            }
        }
        rep.record(&name("cycles"), cyc).then_some(())
    }

    /// The identified graph read three ways must agree: through the labels,
    /// by identifying partners in the associated graph, and from the
    /// projected edges of the quotient.
    fn commutation(
        &self,
        q: &crate::symmetry::Quotient,
        edges: &EdgeSet,
        graph: &Graph,
    ) -> ValidationReport {
        let mut r = ValidationReport::new();
        let c = &self.complex;
        let pairing: Vec<usize> = self
            .involution
            .vertex_pairing()
            .iter()
            .map(|p| p.expect("validated"))
            .collect();
        let by_pairs = identify_antipodes(&associated_graph(c, &self.colouring), &pairing)
            .and_then(|g| g.relabel(|_, l| self.labels[index_label(l)].clone()));
        match by_pairs {
            Ok(g) if g.same_labelled(graph) => {}
            Ok(_) => r.global(
                ViolationCode::GraphMismatch,
                "identifying partners gives a different graph",
            ),
            Err(e) => r.global(ViolationCode::GraphMismatch, e.to_string()),
        }
        let mut rep_of = vec![0; q.complex.num_vertices()];
        for v in (0..c.num_vertices()).rev() {
            rep_of[q.vertex(v)] = v;
        }
        let from_quotient: std::collections::BTreeSet<(Label, Label)> = edges
            .iter()
            .map(|e| {
                let vs = q.complex.cells(1)[e].vertices();
                let (a, b) = (
                    self.labels[rep_of[vs[0]]].clone(),
                    self.labels[rep_of[vs[1]]].clone(),
                );
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        if from_quotient != graph.labelled_edges() {
            r.global(
                ViolationCode::GraphMismatch,
                "quotient edges give a different graph",
            );
        }
        r
    }
}

/// `associated_graph` labels vertex `v` as `Index(v)`.
fn index_label(l: &Label) -> usize {
    match l {
        Label::Index(i) => *i as usize,
        other => unreachable!("associated graph label {other}"),
    }
}

impl SymmetricBall {
    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Glues two copies along the boundary; copies keep their original's label.
    pub fn double(&self) -> Result<SymmetricSphere> {
        let d = double(&self.complex, &self.boundary.involution, &self.colouring)?;
        let labels = d.origin.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(SymmetricSphere {
            complex: d.complex,
            involution: d.involution,
            colouring: d.colouring,
            labels,
        })
    }

    pub fn graph(&self) -> Result<Graph> {
        identified_graph(&self.complex, &self.colouring, &self.labels)
    }

    pub fn audit(&self, opts: AuditOptions) -> AuditReport {
        let mut rep = AuditReport::default();
        let c = &self.complex;
        let n = c.dim();
        let ok = rep.record("complex", c.validate())
            && rep.record("ball", ball_audit(c, n, Some(&self.boundary.cells)))
            && rep.record("boundary-involution", {
                let mut r = validate_involution(c, &self.boundary.involution);
                if self.boundary.involution.scope() != Scope::Boundary {
                    r.global(
                        ViolationCode::OutOfScope,
                        "ball involution must act on the boundary only",
                    );
                }
                r
            })
            && rep.record(
                "labels",
                label_report(&self.labels, c.num_vertices(), |v| {
                    self.boundary.involution.vertex(v)
                }),
            )
            && rep.record(
                "colouring",
                colouring_report(c, &self.colouring, Some(&self.boundary.involution)),
            );
        if ok {
            match self.double() {
                Ok(s) => {
                    s.audit_into(&mut rep, "doubled ", opts);
                }
                Err(e) => {
                    rep.record(
                        "doubled",
                        single(ViolationCode::BoundaryMismatch, e.to_string()),
                    );
                }
            }
        }
        rep
    }

    pub fn verify(&self, opts: AuditOptions) -> Result<AuditReport> {
        self.audit(opts).into_result()
    }
}
