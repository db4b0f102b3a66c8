use proptest::prelude::*;

use projquad_core::bundle::{read_bundle, render_bundle, verify_bundle, write_bundle, Bundle};
use projquad_core::constructions::{
    cylinder_complete, mycielski_tower, odd_cycle_sphere, schrijver_pipeline, suspension,
    AuditOptions, Quadrangulation,
};
use projquad_core::graph::{
    chromatic_number, mycielskian, schrijver, schrijver_homomorphism, verify_homomorphism,
    SolverOptions,
};
use projquad_core::homology::{betti_numbers, boundary_squares_to_zero};
use projquad_core::io::{graph_from_json, graph_to_json};
use projquad_core::symmetry::quotient;
use projquad_core::{Graph, Label};

/// Smallest k admitting a proper k-colouring, by trying every assignment.
fn chi_brute(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<_> = g.edges().collect();
    (1..=n)
        .find(|&k| {
            let mut col = vec![0usize; n];
            loop {
                if edges.iter().all(|&(a, b)| col[a] != col[b]) {
                    return true;
                }
                let mut i = 0;
                while i < n && col[i] == k - 1 {
                    col[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                col[i] += 1;
            }
        })
        .unwrap()
}

fn chi(g: &Graph) -> usize {
    chromatic_number(g, &SolverOptions::default()).unwrap().chi
}

fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::with_labels((0..n).map(|i| Label::Index(i as u64))).unwrap();
    for &(a, b) in edges {
        if a % n != b % n {
            g.add_edge(a % n, b % n).unwrap();
        }
    }
    g
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |e| graph_from_edges(n, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_brute_force(g in arb_graph()) {
        prop_assert_eq!(chi(&g), chi_brute(&g));
    }

    #[test]
    fn mycielskian_adds_at_most_one_colour(g in arb_graph(), r in 1u32..4) {
        let m = mycielskian(&g, r).unwrap();
        let (cg, cm) = (chi(&g), chi(&m));
        prop_assert!(cm >= cg);
        prop_assert!(cm <= cg + 1);
    }

    #[test]
    fn graph_json_round_trips(g in arb_graph()) {
        let back = graph_from_json(&graph_to_json(&g, None)).unwrap();
        prop_assert!(back.same_labelled(&g));
    }

    #[test]
    fn audits_pass_for_every_walk_seed(seed in any::<u64>(), k in 1usize..4) {
        let s = odd_cycle_sphere(k).unwrap();
        let opts = AuditOptions { walks: 20, seed };
        prop_assert!(s.audit(opts).passed());
    }
}

#[test]
fn homomorphisms_do_not_decrease_chromatic_number() {
    for (n, k) in [(6, 2), (7, 2), (8, 2), (8, 3)] {
        let h = schrijver_homomorphism(n, k).unwrap();
        assert!(verify_homomorphism(&h).is_empty());
        assert!(chi(&h.source) <= chi(&h.target), "({n},{k})");
    }
}

#[test]
fn quadrangulated_graphs_need_n_plus_two_colours() {
    let mut cases = vec![
        (odd_cycle_sphere(2).unwrap(), 3),
        (suspension(&odd_cycle_sphere(1).unwrap()).unwrap(), 4),
        (mycielski_tower(5).unwrap(), 5),
        (schrijver_pipeline(7, 2).unwrap().0, 5),
    ];
    cases.push((cylinder_complete(3).unwrap().double().unwrap(), 9));
    for (s, expected) in cases {
        let g = s.graph().unwrap();
        let c = chi(&g);
        assert_eq!(c, expected);
        assert!(c >= s.dim() + 2);
    }
}

#[test]
fn schrijver_pipeline_graph_is_sg_target_when_lifted_once() {
    // SG(5,2) is C5; one lift lands in SG(6,2) with the Grötzsch graph as source
    let (s, h) = schrijver_pipeline(6, 2).unwrap();
    assert!(h.target.same_labelled(&schrijver(6, 2).unwrap()));
    assert!(s.graph().unwrap().same_labelled(&h.source));
    assert_eq!(chi(&h.target), 4);
}

#[test]
fn quotients_of_built_spheres_are_projective() {
    for s in [
        odd_cycle_sphere(3).unwrap(),
        mycielski_tower(5).unwrap(),
        cylinder_complete(4).unwrap().double().unwrap(),
    ] {
        assert!(boundary_squares_to_zero(&s.complex));
        let q = quotient(&s.complex, &s.involution).unwrap();
        assert_eq!(betti_numbers(&q.complex), vec![1; s.dim() + 1]);
        assert_eq!(q.complex.num_vertices() * 2, s.complex.num_vertices());
    }
}

#[test]
fn bundles_are_reproducible_and_reverify() {
    let tmp = tempfile::tempdir().unwrap();
    let b = Bundle {
        construction: "cylinder".into(),
        parameters: [("r".to_string(), 4)].into(),
        quadrangulation: Quadrangulation::Ball(cylinder_complete(4).unwrap()),
        homomorphism: None,
    };
    let (first, _) = render_bundle(&b, AuditOptions::default()).unwrap();
    let (second, _) = render_bundle(&b, AuditOptions::default()).unwrap();
    assert_eq!(first, second);
    assert!(write_bundle(tmp.path(), &b, AuditOptions::default())
        .unwrap()
        .passed());
    assert!(
        verify_bundle(tmp.path(), AuditOptions { walks: 50, seed: 7 })
            .unwrap()
            .passed()
    );
    let loaded = read_bundle(tmp.path()).unwrap();
    assert_eq!(loaded.construction.as_deref(), Some("cylinder"));
    assert_eq!(loaded.graph.n(), 11);
}
