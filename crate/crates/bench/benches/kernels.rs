use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use projquad_bench::random_matrix;
use projquad_core::constructions::{cylinder_complete, mycielski_tower, AuditOptions};
use projquad_core::graph::{chromatic_number, mycielski_graph, schrijver, SolverOptions};
use projquad_core::homology::{betti_numbers, rank_gf2};

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_gf2");
    for n in [64, 256, 1024] {
        let m = random_matrix(n, n, 0.1, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| rank_gf2(black_box(m)))
        });
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let tower = mycielski_tower(6).unwrap();
    c.bench_function("betti M6 sphere", |b| {
        b.iter(|| betti_numbers(black_box(&tower.complex)))
    });
}

fn chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic_number");
    let graphs = [
        ("M5", mycielski_graph(5).unwrap()),
        ("M6", mycielski_graph(6).unwrap()),
        ("SG(8,3)", schrijver(8, 3).unwrap()),
    ];
    for (name, g) in &graphs {
        for threads in [1, 4] {
            let opts = SolverOptions {
                threads,
                ..SolverOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(*name, threads), g, |b, g| {
                b.iter(|| chromatic_number(black_box(g), &opts).unwrap().chi)
            });
        }
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    c.bench_function("cylinder r=4 build+audit", |b| {
        b.iter(|| {
            cylinder_complete(black_box(4))
                .unwrap()
                .audit(AuditOptions::default())
                .passed()
        })
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = rank, homology, chromatic, constructions
}
criterion_main!(kernels);
