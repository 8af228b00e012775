use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fmlattice::catalog::search_theorem_applicable;
use fmlattice::general::FmSetup;
use fmlattice::lattice::SurfaceKind;
use fmlattice::par::Exec;
use fmlattice::sweep::{isometry_sweep, normalization_sweep, SweepParams};

fn strategies() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn bench_isometry(c: &mut Criterion) {
    let mut g = c.benchmark_group("isometry_sweep");
    g.sample_size(10);
    let p = SweepParams {
        samples: 2000,
        ..Default::default()
    };
    for (name, exec) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, p.samples), &p, |b, p| {
            b.iter(|| black_box(isometry_sweep(p, exec)))
        });
    }
    g.finish();
}

fn bench_normalization(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalization_sweep");
    g.sample_size(10);
    let p = SweepParams {
        samples: 200,
        ..Default::default()
    };
    for (name, exec) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, p.samples), &p, |b, p| {
            b.iter(|| black_box(normalization_sweep(p, 10, exec)))
        });
    }
    g.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search_theorem_applicable");
    g.sample_size(10);
    let setup = FmSetup::new(SurfaceKind::K3, 2, -1, 3).unwrap();
    for bound in [10u64, 25] {
        for (name, exec) in strategies() {
            g.bench_with_input(BenchmarkId::new(name, bound), &bound, |b, &bound| {
                b.iter(|| black_box(search_theorem_applicable(&setup, bound, 50, exec).unwrap()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bench_isometry, bench_normalization, bench_search);
criterion_main!(benches);
