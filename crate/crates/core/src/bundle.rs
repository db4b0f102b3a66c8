//! Bundles: a directory holding a construction's complex, involution,
//! colouring, identified graph and audit report, plus an optional
//! homomorphism. Verification re-derives everything from the files alone.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use crate::constructions::{
    AuditEntry, AuditOptions, AuditReport, Quadrangulation, SymmetricBall, SymmetricSphere,
};
use crate::graph::{verify_homomorphism, Graph, Homomorphism};
use crate::io::{
    colouring_lists, colouring_to_json, complex_from_json, complex_to_json, fibres,
    graph_from_json, graph_to_json, homomorphism_from_json, homomorphism_to_json,
    involution_from_json, involution_to_json, labels_from_fibres, read_json, to_canonical_string,
};
use crate::report::{ValidationReport, ViolationCode};
use crate::symmetry::{BoundaryStructure, Scope, TwoColouring};
use crate::Result;

pub const COMPLEX: &str = "complex.json";
pub const INVOLUTION: &str = "involution.json";
pub const COLOURING: &str = "colouring.json";
pub const GRAPH: &str = "graph.json";
pub const REPORT: &str = "report.json";
pub const HOMOMORPHISM: &str = "homomorphism.json";

/// A construction output ready to be written.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub construction: String,
    pub parameters: BTreeMap<String, u64>,
    pub quadrangulation: Quadrangulation,
    pub homomorphism: Option<Homomorphism>,
}

fn kind(q: &Quadrangulation) -> &'static str {
    match q {
        Quadrangulation::Sphere(_) => "sphere",
        Quadrangulation::Ball(_) => "ball",
    }
}

fn report_json(
    construction: &str,
    parameters: &BTreeMap<String, u64>,
    q: &Quadrangulation,
    graph: Option<&Graph>,
    audits: &AuditReport,
) -> Value {
    let graph = graph.map_or(Value::Null, |g| json!({"vertices": g.n(), "edges": g.m()}));
    json!({
        "construction": construction,
        "parameters": parameters,
        "kind": kind(q),
        "projective_dimension": q.projective_dimension(),
        "graph": graph,
        "passed": audits.passed(),
        "audits": audits,
    })
}

/// Every file of the bundle as `(name, contents)`, in a fixed order.
pub fn render_bundle(
    b: &Bundle,
    opts: AuditOptions,
) -> Result<(Vec<(&'static str, String)>, AuditReport)> {
    let q = &b.quadrangulation;
    let audits = q.audit(opts);
    let graph = q.graph()?;
    let f = fibres(&graph, q.labels())?;
    let mut files = vec![
        (COMPLEX, to_canonical_string(&complex_to_json(q.complex()))),
        (
            INVOLUTION,
            to_canonical_string(&involution_to_json(q.involution())),
        ),
        (
            COLOURING,
            to_canonical_string(&colouring_to_json(q.colouring())),
        ),
        (GRAPH, to_canonical_string(&graph_to_json(&graph, Some(&f)))),
        (
            REPORT,
            to_canonical_string(&report_json(
                &b.construction,
                &b.parameters,
                q,
                Some(&graph),
                &audits,
            )),
        ),
    ];
    if let Some(h) = &b.homomorphism {
        files.push((HOMOMORPHISM, to_canonical_string(&homomorphism_to_json(h))));
    }
    Ok((files, audits))
}

/// Writes the bundle into `dir`, creating it if needed, and returns the
/// audit outcomes recorded in `report.json`.
pub fn write_bundle(dir: &Path, b: &Bundle, opts: AuditOptions) -> Result<AuditReport> {
    let (files, audits) = render_bundle(b, opts)?;
    std::fs::create_dir_all(dir)?;
    for (name, text) in files {
        std::fs::write(dir.join(name), text)?;
    }
    Ok(audits)
}

/// What a bundle directory holds. A colouring file that does not colour
/// every vertex exactly once is kept as its report so verification can
/// record it as a failed audit instead of a parse error.
#[derive(Clone, Debug)]
pub struct LoadedBundle {
    pub construction: Option<String>,
    pub quadrangulation: std::result::Result<Quadrangulation, ValidationReport>,
    pub graph: Graph,
    pub homomorphism: Option<Homomorphism>,
}

pub fn read_bundle(dir: &Path) -> Result<LoadedBundle> {
    let complex = complex_from_json(&read_json(&dir.join(COMPLEX))?)?;
    let involution = involution_from_json(&read_json(&dir.join(INVOLUTION))?, &complex)?;
    let (black, white) = colouring_lists(&read_json(&dir.join(COLOURING))?)?;
    let graph_json = read_json(&dir.join(GRAPH))?;
    let graph = graph_from_json(&graph_json)?;
    let labels = labels_from_fibres(&graph_json, &graph, complex.num_vertices())?;
    let homomorphism = match dir.join(HOMOMORPHISM) {
        p if p.exists() => Some(homomorphism_from_json(&read_json(&p)?)?),
        _ => None,
    };
    let construction = read_json(&dir.join(REPORT)).ok().and_then(|r| {
        r.get("construction")
            .and_then(Value::as_str)
            .map(str::to_string)
    });
    let quadrangulation =
        TwoColouring::from_lists(complex.num_vertices(), &black, &white).map(|colouring| {
            match involution.scope() {
                Scope::Full => Quadrangulation::Sphere(SymmetricSphere {
                    complex,
                    involution,
                    colouring,
                    labels,
                }),
                Scope::Boundary => {
                    let boundary = BoundaryStructure::new(&complex, involution);
                    Quadrangulation::Ball(SymmetricBall {
                        complex,
                        boundary,
                        colouring,
                        labels,
                    })
                }
            }
        });
    Ok(LoadedBundle {
        construction,
        quadrangulation,
        graph,
        homomorphism,
    })
}

fn entry(name: &str, violations: ValidationReport) -> AuditEntry {
    AuditEntry {
        name: name.to_string(),
        passed: violations.is_empty(),
        violations,
    }
}

/// Re-runs every audit on a bundle read back from disk, then checks that
/// `graph.json` is the identified graph and that any homomorphism verifies
/// and starts at that graph.
pub fn verify_bundle(dir: &Path, opts: AuditOptions) -> Result<AuditReport> {
    let b = read_bundle(dir)?;
    let q = match b.quadrangulation {
        Ok(q) => q,
        Err(r) => {
            return Ok(AuditReport {
                entries: vec![entry("colouring", r)],
            })
        }
    };
    let mut rep = q.audit(opts);
    if !rep.passed() {
        return Ok(rep);
    }
    let mut r = ValidationReport::new();
    match q.graph() {
        Ok(g) if g.same_labelled(&b.graph) => {}
        Ok(_) => r.global(
            ViolationCode::GraphMismatch,
            "graph.json differs from the identified graph",
        ),
        Err(e) => r.global(ViolationCode::GraphMismatch, e.to_string()),
    }
    rep.entries.push(entry("graph-file", r));
    if let Some(h) = &b.homomorphism {
        let mut r = verify_homomorphism(h);
        if !h.source.same_labelled(&b.graph) {
            r.global(
                ViolationCode::GraphMismatch,
                "homomorphism source differs from graph.json",
            );
        }
        rep.entries.push(entry("homomorphism", r));
    }
    Ok(rep)
}

/// The report a verification run prints: the same shape as `report.json`.
pub fn verification_json(dir: &Path, rep: &AuditReport) -> Value {
    let b = read_bundle(dir).ok();
    let construction = b
        .as_ref()
        .and_then(|b| b.construction.clone())
        .unwrap_or_default();
    match b.map(|b| (b.quadrangulation, b.graph)) {
        Some((Ok(q), g)) => report_json(&construction, &BTreeMap::new(), &q, Some(&g), rep),
        _ => json!({"construction": construction, "passed": rep.passed(), "audits": rep}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cylinder_complete, odd_cycle_sphere, schrijver_pipeline};

    fn sphere_bundle() -> Bundle {
        Bundle {
            construction: "odd-cycle".into(),
            parameters: BTreeMap::from([("k".to_string(), 2)]),
            quadrangulation: Quadrangulation::Sphere(odd_cycle_sphere(2).unwrap()),
            homomorphism: None,
        }
    }

    #[test]
    fn write_then_verify() {
        let dir = std::env::temp_dir().join(format!("pq-bundle-{}", std::process::id()));
        let b = Bundle {
            construction: "schrijver".into(),
            parameters: BTreeMap::new(),
            quadrangulation: Quadrangulation::Sphere(schrijver_pipeline(6, 2).unwrap().0),
            homomorphism: Some(schrijver_pipeline(6, 2).unwrap().1),
        };
        assert!(write_bundle(&dir, &b, AuditOptions::default())
            .unwrap()
            .passed());
        let rep = verify_bundle(&dir, AuditOptions::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.get("homomorphism").is_some());
        assert!(rep.get("graph-file").unwrap().passed);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rendering_is_deterministic() {
        let (a, _) = render_bundle(&sphere_bundle(), AuditOptions::default()).unwrap();
        let (b, _) = render_bundle(&sphere_bundle(), AuditOptions::default()).unwrap();
        assert_eq!(a, b);
        let report: Value = serde_json::from_str(&a[4].1).unwrap();
        assert_eq!(report["kind"], "sphere");
        assert_eq!(report["graph"]["vertices"], 5);
    }

    #[test]
    fn ball_bundle_reads_back_as_ball() {
        let dir = std::env::temp_dir().join(format!("pq-ball-{}", std::process::id()));
        let b = Bundle {
            construction: "cylinder".into(),
            parameters: BTreeMap::from([("r".to_string(), 3)]),
            quadrangulation: Quadrangulation::Ball(cylinder_complete(3).unwrap()),
            homomorphism: None,
        };
        write_bundle(&dir, &b, AuditOptions::default()).unwrap();
        let loaded = read_bundle(&dir).unwrap();
        assert!(matches!(
            loaded.quadrangulation,
            Ok(Quadrangulation::Ball(_))
        ));
        assert_eq!(loaded.graph.n(), 9);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
