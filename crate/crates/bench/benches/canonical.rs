use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qfock::canonical::canonical_block;
use qfock::fock::FockSpace;
use qfock::involution::bar_matrix_block;
use qfock::laurent::SplitSign;

// The degree-8 component (0,0) block at ranks (2,2) is the largest table in
// the golden fixtures (16 x 16).  A fresh space per iteration keeps the
// straightening memo cold so the timings stay comparable.
fn bench_involution_block(c: &mut Criterion) {
    let mut group = c.benchmark_group("involution");
    group.sample_size(10);
    group.bench_function("bar matrix d=8 (0,0) at (2,2)", |b| {
        b.iter(|| {
            let mut space = FockSpace::new(2, 2);
            black_box(bar_matrix_block(&mut space, 0, 8, &[0, 0]).unwrap())
        })
    });
    group.finish();
}

fn bench_canonical_block(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical");
    group.sample_size(10);
    group.bench_function("canonical block d=8 (0,0) at (2,2)", |b| {
        b.iter(|| {
            let mut space = FockSpace::new(2, 2);
            black_box(canonical_block(&mut space, 0, 8, SplitSign::Plus, &[0, 0]).unwrap())
        })
    });
    group.finish();
}

criterion_group!(benches, bench_involution_block, bench_canonical_block);
criterion_main!(benches);
