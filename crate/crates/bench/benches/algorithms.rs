//! Timings of the main algorithms at the sizes the acceptance battery uses.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use spectra_core::numerics::sw1::{monodromy, Loop};
use spectra_core::su_adjoint::{branch_residues, pn_solve, SpectralFamily};
use spectra_core::symplectic::{aks_sweep, OrbitPoint2Sphere};
use spectra_core::toda::{toda_charpoly, LieType};
use spectra_core::vacua::{generic_data, vacua_from_covers};
use spectra_core::weierstrass::EllipticCurveModel;

fn exact(c: &mut Criterion) {
    let e = EllipticCurveModel::symbolic();
    c.bench_function("xk_basis 12", |b| b.iter(|| e.xk_basis(black_box(12)).unwrap()));
    c.bench_function("pn_solve 6", |b| b.iter(|| pn_solve(black_box(6), &e).unwrap()));
    c.bench_function("toda_charpoly A4", |b| b.iter(|| toda_charpoly(LieType::A, black_box(4)).unwrap()));
    c.bench_function("aks_sweep 4x10", |b| b.iter(|| aks_sweep(black_box(4), 10, 0)));
}

fn numeric(c: &mut Criterion) {
    let fam = SpectralFamily::new(3, &EllipticCurveModel::symbolic()).unwrap();
    let u = [Complex64::new(0.3, -0.1), Complex64::new(-0.2, 0.4)];
    c.bench_function("branch_residues n=3", |b| {
        b.iter(|| branch_residues(&fam, Complex64::new(0.5, 0.2), Complex64::new(-0.3, 0.1), black_box(&u)).unwrap())
    });
    c.bench_function("monodromy at infinity", |b| b.iter(|| monodromy(Loop::Infinity, Loop::Infinity.default_radius(), black_box(400)).unwrap()));
    let data = generic_data().unwrap();
    c.bench_function("vacua_from_covers n=3", |b| b.iter(|| vacua_from_covers(&data, black_box(3)).unwrap()));
    let sphere = OrbitPoint2Sphere::new(vec![2.0, 0.5, -2.5], (0, 2)).unwrap();
    c.bench_function("kks sphere integral", |b| b.iter(|| black_box(&sphere).integral()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = exact, numeric
}
criterion_main!(benches);
