//! Wall time of the two ways to build the matrix of `φ_T`, next to the
//! operation counts printed once per size.

use std::sync::Arc;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use drinfeld::gf::FieldCtx;
use drinfeld::instances::random_module;
use drinfeld::meval::{ore_matrix, ore_matrix_uncached, MatrixMethod};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut g = c.benchmark_group("ore_matrix");
    for d in [8, 16, 32, 64] {
        let ctx = Arc::new(FieldCtx::standard(2, d).unwrap());
        let phi = random_module(&ctx, 2, &mut rng);
        let f = phi.phi_t();
        let (_, naive) = ctx.measure(|| ore_matrix(&ctx, f, MatrixMethod::Naive));
        let (_, multi) = ctx.measure(|| ore_matrix_uncached(&ctx, f));
        eprintln!("d = {d}: naive {naive:?}, multipoint {multi:?}");
        g.bench_with_input(BenchmarkId::new("naive", d), &d, |b, _| {
            b.iter(|| ore_matrix(&ctx, f, MatrixMethod::Naive))
        });
        g.bench_with_input(BenchmarkId::new("multipoint", d), &d, |b, _| {
            b.iter(|| ore_matrix_uncached(&ctx, f))
        });
        // tree built once and cached on the context
        g.bench_with_input(BenchmarkId::new("multipoint-cached", d), &d, |b, _| {
            b.iter(|| ore_matrix(&ctx, f, MatrixMethod::Multipoint))
        });
    }
    g.finish();
}

criterion_group!(
    name = group;
    config = Criterion::default()
        .warm_up_time(Duration::from_millis(300))
        .measurement_time(Duration::from_secs(1))
        .sample_size(10);
    targets = bench
);
criterion_main!(group);
