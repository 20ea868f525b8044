use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use b0lab::catalog;
use b0lab::multiplier::{self, B0Options};
use b0lab::pquotient::{p_quotient, FpPresentation};
use b0lab::PcGroup;

fn phi10(p: u32) -> PcGroup {
    PcGroup::new(catalog::build_phi10(p, "(1^5)").unwrap()).unwrap()
}

fn collection(c: &mut Criterion) {
    let mut group = c.benchmark_group("collection");
    for p in [3, 5, 7] {
        let g = phi10(p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let elems: Vec<_> = (0..256)
            .map(|_| (0..5).map(|_| rng.gen_range(0..p as u8)).collect::<Vec<_>>())
            .collect();
        group.bench_with_input(BenchmarkId::new("phi10_mul", p), &elems, |b, elems| {
            let mut i = 0;
            b.iter(|| {
                i = (i + 1) % (elems.len() - 1);
                black_box(g.mul(&elems[i], &elems[i + 1]))
            })
        });
    }
    group.finish();
}

fn pquotient(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_quotient");
    group.sample_size(20);
    for p in [3, 5] {
        let f = FpPresentation::from_pc(&catalog::build_phi10(p, "(1^5)").unwrap());
        group.bench_with_input(BenchmarkId::new("phi10", p), &f, |b, f| b.iter(|| p_quotient(black_box(f), p, 10).unwrap()));
    }
    group.finish();
}

fn b0_tensor(c: &mut Criterion) {
    let mut group = c.benchmark_group("b0_tensor");
    group.sample_size(10);
    for (name, g) in catalog::catalog(3)
        .unwrap()
        .into_iter()
        .filter(|e| ["Phi1(1,1,1,1,1)", "Phi6(221)a", "Phi10(1^5)"].contains(&e.id.name().as_str()))
        .map(|e| (e.id.name(), PcGroup::new(e.presentation).unwrap()))
    {
        group.bench_function(BenchmarkId::new("p3", name), |b| {
            b.iter(|| multiplier::b0_tensor(black_box(&g), B0Options::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, collection, pquotient, b0_tensor);
criterion_main!(benches);
