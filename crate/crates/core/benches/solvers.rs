//! Compares the solvers on a single-thread pool against the default pool.
//! With `--no-default-features` both variants run the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use carnot_core::catalog;
use carnot_core::format::ranges_to_layers;
use carnot_core::grading::{is_stratifiable, verify_stratification};
use carnot_core::liealg::{derivation_algebra, jacobi_defect};
use carnot_core::tanaka::{degree_zero_derivations, ultrarigidity_check};

#[cfg(feature = "parallel")]
fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", one), ("default", all)]
}

#[cfg(feature = "parallel")]
fn run<R>(pool: &rayon::ThreadPool, f: impl FnOnce() -> R + Send) -> R
where
    R: Send,
{
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn pools() -> Vec<(&'static str, ())> {
    vec![("sequential", ())]
}

#[cfg(not(feature = "parallel"))]
fn run<R>(_: &(), f: impl FnOnce() -> R) -> R {
    f()
}

fn solvers(c: &mut Criterion) {
    let e1 = catalog::get("example1_16").unwrap();
    let e2 = catalog::get("example2_17").unwrap();
    let h = catalog::get("deformed_h_16").unwrap();
    let s2 = verify_stratification(
        &e2.algebra,
        &ranges_to_layers(17, e2.declared_layers.as_ref().unwrap()),
    )
    .unwrap();

    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("jacobi/example2_17", name), &pool, |b, p| {
            b.iter(|| run(p, || jacobi_defect(&e2.algebra)))
        });
        group.bench_with_input(BenchmarkId::new("derivations/example1_16", name), &pool, |b, p| {
            b.iter(|| run(p, || derivation_algebra(&e1.algebra).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("stratifiable/deformed_h_16", name), &pool, |b, p| {
            b.iter(|| run(p, || is_stratifiable(&h.algebra).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("g0/example2_17", name), &pool, |b, p| {
            b.iter(|| run(p, || degree_zero_derivations(&e2.algebra, &s2).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("rigid/example2_17", name), &pool, |b, p| {
            b.iter(|| run(p, || ultrarigidity_check(&e2.algebra, &s2).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, solvers);
criterion_main!(benches);
