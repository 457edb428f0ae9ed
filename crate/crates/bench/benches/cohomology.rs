use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use unram_bench::group;
use unram_core::Engine;

// A fresh engine per iteration, so nothing is served from the memo.
fn finite(c: &mut Criterion) {
    let mut g = c.benchmark_group("H^n(G, Z/|G|)");
    for (name, n) in
        [("dihedral:8", 3), ("quaternion:16", 3), ("heisenberg:3", 3), ("witness:64", 2), ("symmetric:4", 3)]
    {
        let grp = group(name);
        let m = grp.order() as u64;
        g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
            b.iter(|| Engine::new().cohomology(&grp, n, m).unwrap())
        });
    }
    g.finish();
}

fn stable(c: &mut Criterion) {
    let mut g = c.benchmark_group("H^n(G, Q/Z)");
    for (name, n) in [("dihedral:16", 3), ("abelian:4,4", 2), ("witness:64", 2)] {
        let grp = group(name);
        let m = grp.order() as u64;
        g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| Engine::new().stable(&grp, n, m).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, finite, stable);
criterion_main!(benches);
