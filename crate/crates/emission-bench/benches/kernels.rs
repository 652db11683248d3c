//! Microbenchmarks for the numerical kernels: exact angular coefficients,
//! the windowed detuning quadratures behind the energy budget, the radial
//! field integrals, the emission-pattern quadrature, and the mode-bath
//! integrator.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use emission_bench::{small_bath, stretched, transition, RATIO};
use emission_core::modebath::simulate;
use emission_core::observables::{energies_quadrature, field_angmom_z_numeric};
use emission_core::radial::q_alpha;
use emission_core::{clebsch_gordan, HalfIntegerJ, WwaScheme};

fn angular_coefficients(c: &mut Criterion) {
    let j5 = HalfIntegerJ::integer(5);
    let j1 = HalfIntegerJ::integer(1);
    let j6 = HalfIntegerJ::integer(6);
    c.bench_function("clebsch_gordan 5,3;1,1 -> 6,4", |b| {
        b.iter(|| {
            clebsch_gordan(
                black_box(j5),
                black_box(6),
                black_box(j1),
                black_box(2),
                black_box(j6),
                black_box(8),
            )
        })
    });
}

fn detuning_quadrature(c: &mut Criterion) {
    let scheme = WwaScheme::modified();
    c.bench_function("energies_quadrature modified tau=1", |b| {
        b.iter(|| energies_quadrature(black_box(1.0), black_box(scheme), black_box(RATIO)))
    });
}

fn radial_integrals(c: &mut Criterion) {
    let scheme = WwaScheme::modified();
    let mut group = c.benchmark_group("q_alpha");
    for &x in &[5.0, 50.0, 500.0] {
        group.bench_function(format!("x={x}"), |b| {
            b.iter(|| {
                q_alpha(
                    black_box(1),
                    black_box(x),
                    black_box(1.0),
                    black_box(scheme),
                    black_box(RATIO),
                )
            })
        });
    }
    group.finish();
}

fn emission_pattern(c: &mut Criterion) {
    let spec = transition();
    let state = stretched(&spec);
    c.bench_function("field_angmom_z_numeric H=2->G=1", |b| {
        b.iter(|| field_angmom_z_numeric(black_box(&spec), black_box(&state), black_box(1.0)))
    });
}

fn mode_bath(c: &mut Criterion) {
    let grid = small_bath();
    c.bench_function("simulate 1000 modes to tau=1", |b| {
        b.iter(|| simulate(black_box(&grid), black_box(1.0), black_box(0.005)))
    });
}

criterion_group!(
    kernels,
    angular_coefficients,
    detuning_quadrature,
    radial_integrals,
    emission_pattern,
    mode_bath
);
criterion_main!(kernels);
