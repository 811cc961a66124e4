//! Benchmarks comparing the data-parallel scans against their sequential
//! baselines. With the default `parallel` feature the public entry points
//! run on rayon; the `*_seq` variants are the single-threaded baselines.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use moebius_dense::diophantine::{
    independence_certificate, independence_certificate_seq, solve_ratio, solve_ratio_seq,
    RatioBounds,
};
use moebius_dense::mat2::proj_distance;
use moebius_dense::orbits::dense_orbit_sample;
use moebius_dense::par::{map_range, map_range_seq};
use moebius_dense::systems;
use moebius_dense::words::{evaluate, Word};

fn bench_ratio_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("ratio_scan");
    let bounds = RatioBounds {
        max_k: 2_000_000,
        max_l: 1_000_000,
    };
    let target = std::f64::consts::PI;
    g.bench_function("parallel", |b| {
        b.iter(|| solve_ratio(target, 2.0, 3.0, 2e-7, bounds).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| solve_ratio_seq(target, 2.0, 3.0, 2e-7, bounds).unwrap())
    });
    g.finish();
}

fn bench_certificate(c: &mut Criterion) {
    let mut g = c.benchmark_group("independence_certificate");
    let theta1 = 2f64.ln() / 3f64.ln();
    let theta2 = std::f64::consts::E;
    g.bench_function("parallel", |b| {
        b.iter(|| independence_certificate(theta1, theta2, 800).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| independence_certificate_seq(theta1, theta2, 800).unwrap())
    });
    g.finish();
}

fn random_words(count: usize) -> Vec<Word> {
    let mut state = 0x243f_6a88_85a3_08d3u64;
    (0..count)
        .map(|_| {
            let mut w = Word::empty();
            for _ in 0..40 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let sym = if state >> 63 == 0 { "R" } else { "S" };
                let exp = 1 + ((state >> 32) % 3) as u32;
                w.push(sym, exp);
            }
            w
        })
        .collect()
}

fn bench_word_batch(c: &mut Criterion) {
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let words = random_words(512);
    let id = moebius_dense::ProjectiveMap::identity();
    let run_par = |words: &[Word]| -> f64 {
        map_range(0, words.len() as i64, |i| {
            let e = evaluate(&words[i as usize], &sys).unwrap();
            proj_distance(&e.projective, &id)
        })
        .into_iter()
        .sum()
    };
    let run_seq = |words: &[Word]| -> f64 {
        map_range_seq(0, words.len() as i64, |i| {
            let e = evaluate(&words[i as usize], &sys).unwrap();
            proj_distance(&e.projective, &id)
        })
        .into_iter()
        .sum()
    };
    let mut g = c.benchmark_group("word_batch_evaluation");
    g.bench_function("parallel", |b| {
        b.iter_batched(|| words.clone(), |w| run_par(&w), BatchSize::LargeInput)
    });
    g.bench_function("sequential", |b| {
        b.iter_batched(|| words.clone(), |w| run_seq(&w), BatchSize::LargeInput)
    });
    g.finish();
}

fn bench_orbit_coverage(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_coverage");
    g.sample_size(10);
    g.bench_function("grid_21_depth_18", |b| {
        b.iter(|| dense_orbit_sample(1.0, 2.0, 18, 21, (0.0, 1.0)).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_ratio_scan,
    bench_certificate,
    bench_word_batch,
    bench_orbit_coverage
);
criterion_main!(benches);
