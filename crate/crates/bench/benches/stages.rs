use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use volseg_bench::noisy_phantom;
use volseg_core::levelset::{cv_step, CvState};
use volseg_core::{
    close_mask, gaussian_blur3d, mask_to_sdf, region_grow, segment_pipeline, similarity,
    ChanVeseParams, GrowParams, PipelineConfig, SeedPoint, StructuringElement,
};

fn filters(c: &mut Criterion) {
    let mut group = c.benchmark_group("filters");
    for n in [32usize, 64] {
        let (vol, truth) = noisy_phantom(n, 1);
        group.bench_with_input(BenchmarkId::new("gaussian_blur3d", n), &vol, |b, vol| {
            b.iter(|| gaussian_blur3d(vol, 1.5).unwrap())
        });
        let se = StructuringElement::new(21).unwrap();
        group.bench_with_input(BenchmarkId::new("close_mask", n), &truth, |b, m| {
            b.iter(|| close_mask(m, se))
        });
        group.bench_with_input(BenchmarkId::new("mask_to_sdf", n), &truth, |b, m| {
            b.iter(|| mask_to_sdf(m).unwrap())
        });
    }
    group.finish();
}

fn growing(c: &mut Criterion) {
    let (vol, _) = noisy_phantom(64, 2);
    let blurred = gaussian_blur3d(&vol, 1.5).unwrap();
    let seed = SeedPoint::new(32, 32, 32);
    c.bench_function("region_grow/64", |b| {
        b.iter(|| region_grow(&blurred, seed, GrowParams::default()).unwrap())
    });
}

fn level_set(c: &mut Criterion) {
    let (vol, truth) = noisy_phantom(64, 3);
    let blurred = gaussian_blur3d(&vol, 1.5).unwrap();
    let params = ChanVeseParams::default();
    let state = CvState::new(&blurred, mask_to_sdf(&truth).unwrap()).unwrap();
    c.bench_function("cv_step/64", |b| {
        b.iter(|| cv_step(&blurred, &state, &params).unwrap())
    });
    c.bench_function("similarity/64", |b| {
        b.iter(|| similarity(&truth, &truth).unwrap())
    });
}

fn pipeline(c: &mut Criterion) {
    let (vol, _) = noisy_phantom(64, 4);
    let config = PipelineConfig::new(SeedPoint::new(32, 32, 32));
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("segment/64", |b| {
        b.iter(|| segment_pipeline(&vol, &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, filters, growing, level_set, pipeline);
criterion_main!(benches);
