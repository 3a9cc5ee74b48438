//! Performance-sensitive kernels: exact polynomial products, field
//! application, differential assembly with rank, the deformation solver,
//! and flat-section truncated exponentials.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use folcoh_bench::{mixed_with_focus, sampler, triple_hyperbolic};
use folcoh_core::cohomology::cohomology;
use folcoh_core::decompose::solve_deformation;
use folcoh_core::foliated::assemble_matrix;
use folcoh_core::homotopy::RegularModel;
use folcoh_core::kostant::{flat_section, ConnectionPotential};

fn bench_poly_mul(c: &mut Criterion) {
    let basis = triple_hyperbolic();
    let mut s = sampler();
    let a = s.polynomial(basis.coords(), 8, 30, false);
    let b = s.polynomial(basis.coords(), 8, 30, false);
    c.bench_function("poly_mul_deg8_6vars", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b));
    });
}

fn bench_field_apply(c: &mut Criterion) {
    let basis = mixed_with_focus();
    let mut s = sampler();
    let p = s.polynomial(basis.coords(), 8, 40, false);
    c.bench_function("focus_radial_apply_deg8", |bench| {
        bench.iter(|| basis.apply_field(2, black_box(&p)).unwrap());
    });
}

fn bench_differential_matrix(c: &mut Criterion) {
    let basis = triple_hyperbolic();
    c.bench_function("assemble_matrix_k1_d6", |bench| {
        bench.iter(|| assemble_matrix(black_box(&basis), 1, 6));
    });
}

fn bench_cohomology_slice(c: &mut Criterion) {
    let basis = triple_hyperbolic();
    c.bench_function("cohomology_k1_d8", |bench| {
        bench.iter(|| cohomology(black_box(&basis), 1, 8, true).unwrap());
    });
}

fn bench_deformation_solver(c: &mut Criterion) {
    let basis = mixed_with_focus();
    let mut s = sampler();
    c.bench_function("solve_deformation_n3_deg6", |bench| {
        bench.iter_batched(
            || s.cocycle(&basis, 3, 6).0,
            |cochain| solve_deformation(&cochain).unwrap(),
            BatchSize::SmallInput,
        );
    });
}

fn bench_flat_section(c: &mut Criterion) {
    let model = RegularModel::new(4, 2).unwrap();
    let mut s = sampler();
    let g = s.regular_form(&model, 0, 3);
    let pot = ConnectionPotential::new(g.d_f()).unwrap();
    c.bench_function("flat_section_order8", |bench| {
        bench.iter(|| flat_section(black_box(&pot), 8).unwrap());
    });
}

criterion_group!(
    benches,
    bench_poly_mul,
    bench_field_apply,
    bench_differential_matrix,
    bench_cohomology_slice,
    bench_deformation_solver,
    bench_flat_section
);
criterion_main!(benches);
