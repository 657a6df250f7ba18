//! Timings for the hot paths: weight generation, the direct steady solve,
//! one-dimensional and ADI marches, Toeplitz matvec strategies, and the
//! spectral scan.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fracdiff::coeffs::{fused_weights, FracOrder, Tempering};
use fracdiff::evolution::{adi_solve_2d, cn_solve_1d, AdiVariant};
use fracdiff::harness::{find_problem, ProblemParams};
use fracdiff::linalg::ToeplitzMatvec;
use fracdiff::operators::SchemeOrder;
use fracdiff::spectral::{linspace, stability_scan};
use fracdiff::steady::solve_steady;

fn bench_weights(c: &mut Criterion) {
    let alpha = FracOrder::new(1.5).unwrap();
    let tempering = Tempering::new(1.5).unwrap();
    c.bench_function("fused_weights_4096", |b| {
        b.iter(|| fused_weights(alpha, tempering, black_box(1.0 / 4096.0), 4096).unwrap())
    });
}

fn bench_steady(c: &mut Criterion) {
    let spec = find_problem("example2_1").unwrap();
    let params = ProblemParams {
        alpha: 1.5,
        beta: 0.0,
        lambda: 0.0,
    };
    let problem = spec.steady(params, 128).unwrap();
    c.bench_function("steady_order4_m128", |b| {
        b.iter(|| solve_steady(black_box(&problem), SchemeOrder::Four).unwrap())
    });
}

fn bench_cn_march(c: &mut Criterion) {
    let spec = find_problem("example6_1").unwrap();
    let params = ProblemParams {
        alpha: 1.5,
        beta: 0.0,
        lambda: 1.5,
    };
    let problem = spec.evolution_1d(params, 64, 64).unwrap();
    let mut group = c.benchmark_group("evolution");
    group.sample_size(20);
    group.bench_function("cn_m64_n64", |b| {
        b.iter(|| cn_solve_1d(black_box(&problem)).unwrap())
    });
    group.finish();
}

fn bench_adi_march(c: &mut Criterion) {
    let spec = find_problem("example6_3").unwrap();
    let params = ProblemParams {
        alpha: 1.1,
        beta: 1.5,
        lambda: 0.0,
    };
    let problem = spec.evolution_2d(params, 16, 8).unwrap();
    let mut group = c.benchmark_group("adi");
    group.sample_size(20);
    for (label, variant) in [
        ("douglas_m16_n8", AdiVariant::Douglas),
        ("dyakonov_m16_n8", AdiVariant::Dyakonov),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| adi_solve_2d(black_box(&problem), variant).unwrap())
        });
    }
    group.finish();
}

fn bench_toeplitz(c: &mut Criterion) {
    let n = 1024;
    let alpha = FracOrder::new(1.5).unwrap();
    let weights = fused_weights(alpha, Tempering::zero(), 1.0 / n as f64, n + 1).unwrap();
    let w = weights.w();
    let col: Vec<f64> = (0..n).map(|i| w[i + 1]).collect();
    let mut row = vec![0.0; n];
    row[0] = w[1];
    row[1] = w[0];
    let matvec = ToeplitzMatvec::new(&col, &row).unwrap();
    let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
    let mut group = c.benchmark_group("toeplitz_1024");
    group.bench_function("dense", |b| {
        b.iter(|| matvec.apply_dense(black_box(&x)).unwrap())
    });
    group.bench_function("fft", |b| {
        b.iter(|| matvec.apply_fft(black_box(&x)).unwrap())
    });
    group.finish();
}

fn bench_spectral(c: &mut Criterion) {
    let alphas = linspace(1.0, 2.0, 21);
    let sigmas = linspace(0.0, std::f64::consts::PI, 91);
    let ratios = [0.1, 1.0, 10.0];
    c.bench_function("stability_scan_21x91", |b| {
        b.iter(|| stability_scan(black_box(&alphas), black_box(&sigmas), &ratios))
    });
}

criterion_group!(
    benches,
    bench_weights,
    bench_steady,
    bench_cn_march,
    bench_adi_march,
    bench_toeplitz,
    bench_spectral
);
criterion_main!(benches);
