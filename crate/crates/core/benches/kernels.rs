//! Parallel against sequential on the three searches that fan out over the
//! pool. "sequential" is a one-thread rayon pool; building with
//! `--no-default-features` removes rayon altogether.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cancellative_core::extremal::{cancellative_subsets, max_cancellative, SearchOptions, TripleIndex};
use cancellative_core::steiner::{enumerate_sts, CatalogOptions};
use cancellative_core::Budget;

#[cfg(feature = "parallel")]
fn pools() -> Vec<(String, rayon::ThreadPool)> {
    // at least 4 so the comparison exists on small machines too
    let wide = std::thread::available_parallelism().map_or(1, |n| n.get()).max(4);
    [1, wide]
        .into_iter()
        .map(|t| {
            let name = if t == 1 { "sequential".to_string() } else { format!("parallel-{t}") };
            (name, rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap())
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn run_on<R>(pool: &rayon::ThreadPool, f: impl FnOnce() -> R + Send) -> R
where
    R: Send,
{
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
struct Inline;

#[cfg(not(feature = "parallel"))]
fn pools() -> Vec<(String, Inline)> {
    vec![("no-rayon".to_string(), Inline)]
}

#[cfg(not(feature = "parallel"))]
fn run_on<R>(_: &Inline, f: impl FnOnce() -> R) -> R {
    f()
}

fn kernels(c: &mut Criterion) {
    let pools = pools();
    let uncached = CatalogOptions { use_cache: false, ..CatalogOptions::default() };

    let mut g = c.benchmark_group("sts-13");
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_on(pool, || enumerate_sts(black_box(13), &uncached).unwrap().len()))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("max-cancellative-8");
    g.sample_size(10);
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_on(pool, || max_cancellative(black_box(8), &SearchOptions::default()).unwrap().optimum))
        });
    }
    g.finish();

    let index = TripleIndex::new(6).unwrap();
    let mut g = c.benchmark_group("subset-scan-6");
    g.sample_size(10);
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_on(pool, || cancellative_subsets(&index, &Budget::unlimited()).unwrap().len()))
        });
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
