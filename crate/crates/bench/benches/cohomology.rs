use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nlie_bench::{adjoint_workloads, standard_differential};
use nlie_core::complexes::{Complex, ComplexKind};
use nlie_core::linalg::rank;

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_differential");
    for (name, rep) in adjoint_workloads() {
        for kind in [ComplexKind::Standard, ComplexKind::Alternate, ComplexKind::Leibniz] {
            let cx = Complex::new(&rep, kind).unwrap();
            group.bench_with_input(BenchmarkId::new(kind.to_string(), name), &cx, |b, cx| {
                b.iter(|| cx.matrix(black_box(2)))
            });
        }
    }
    group.finish();
}

fn exact_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(20);
    for (name, rep) in adjoint_workloads() {
        let d = standard_differential(&rep, 2);
        group.bench_with_input(BenchmarkId::new("standard_degree_2", name), &d, |b, d| b.iter(|| rank(black_box(d))));
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology");
    group.sample_size(10);
    for (name, rep) in adjoint_workloads() {
        let cx = Complex::new(&rep, ComplexKind::Standard).unwrap();
        group.bench_function(BenchmarkId::new("standard_degree_1", name), |b| b.iter(|| cx.cohomology(1, false).dim_h));
    }
    group.finish();
}

criterion_group!(benches, assembly, exact_rank, cohomology);
criterion_main!(benches);
