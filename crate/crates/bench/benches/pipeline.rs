use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hadamard_core::fock::{field_strength, path_ordered_holonomy, ControlPath, ControlPoint, Direction, FockSpace};
use hadamard_core::noise::{monte_carlo_fidelity, sample_report};
use hadamard_core::{hadamard_gate, hadamard_loops, NoiseFamily, NoiseSpec};

fn analytic(c: &mut Criterion) {
    c.bench_function("hadamard_gate", |b| b.iter(|| hadamard_gate(black_box(1.3), black_box(0.7)).unwrap()));

    let noise = NoiseSpec::new(NoiseFamily::Uniform, 0.01);
    let mut group = c.benchmark_group("fidelity_report");
    for grid in [256, 4096] {
        let noise = NoiseSpec { grid, ..noise };
        group.bench_with_input(BenchmarkId::from_parameter(grid), &noise, |b, n| {
            b.iter(|| sample_report(1.0, 1.0, n, black_box(7)).unwrap())
        });
    }
    group.finish();

    c.bench_function("monte_carlo_200", |b| {
        b.iter(|| monte_carlo_fidelity(1.0, 1.0, &noise, 200, black_box(1)).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_strength");
    for dim in [32, 64, 96] {
        let space = FockSpace::new(dim).unwrap();
        let p = ControlPoint::new(0.3, 0.0, 0.5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &space, |b, s| {
            b.iter(|| field_strength(&p, Direction::X, Direction::R1, 1e-3, s).unwrap())
        });
    }
    group.finish();

    let space = FockSpace::new(64).unwrap();
    let (_, c2) = hadamard_loops(1.0, 1.0, 0.0, 0.0).unwrap();
    let path = ControlPath::from_rect(&c2);
    let mut group = c.benchmark_group("path_holonomy");
    group.sample_size(10);
    group.bench_function("c_ii_n64_40_steps", |b| b.iter(|| path_ordered_holonomy(&path, 40, &space, 1e-3).unwrap()));
    group.finish();
}

criterion_group!(benches, analytic, oracle);
criterion_main!(benches);
