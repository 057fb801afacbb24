use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semitoric::minors::verify_initial_seed;
use semitoric::par::Execution;
use semitoric::rootdata::{RootDatum, Series, Weight, WeylGroup};
use semitoric::semitoric::{all_pairs_scan, Chart, CoordinateSystem};
use semitoric::zcrystal::{LambdaCrystal, WordContext, DEFAULT_CRYSTAL_CAP};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn crystal(c: &mut Criterion) {
    let d = RootDatum::new(Series::A, 3).unwrap();
    let ctx = WordContext::new(&d, &[1, 2, 1, 3, 2, 1]).unwrap();
    let lam = Weight(vec![2, 2, 2]);
    let mut group = c.benchmark_group("crystal_a3_222");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| LambdaCrystal::generate_with(&ctx, &lam, DEFAULT_CRYSTAL_CAP, exec).unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for (label, series, rank, word, lam) in [
        ("a2_22", Series::A, 2, vec![1, 2, 1], vec![2, 2]),
        ("b2_11", Series::B, 2, vec![1, 2, 1, 2], vec![1, 1]),
        ("a3_111", Series::A, 3, vec![1, 2, 1, 3, 2, 1], vec![1, 1, 1]),
    ] {
        let d = RootDatum::new(series, rank).unwrap();
        let g = WeylGroup::new(&d).unwrap();
        let ctx = WordContext::new(&d, &word).unwrap();
        let chart = Chart::new(&ctx, &Weight(lam), CoordinateSystem::String, 3).unwrap();
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(label, name), |b| b.iter(|| all_pairs_scan(&chart, &g, exec).unwrap()));
        }
    }
    group.finish();
}

fn minors(c: &mut Criterion) {
    let d = RootDatum::new(Series::A, 3).unwrap();
    let mut group = c.benchmark_group("minors_a3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_initial_seed(&d, &[1, 2, 1, 3, 2, 1], None, 200, 1, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, crystal, scan, minors);
criterion_main!(benches);
