use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pschur::linalg::{algebra_closure, commutant};
use pschur::schur::{
    all_orbits, levi_basis, phi_of_group_element, theta_elements, xi_multiply, xi_to_matrix,
    XiElement,
};
use pschur::{MatrixQ, Rational};

fn sample_matrix(m: usize, shift: i64) -> MatrixQ {
    MatrixQ::from_entries(
        m,
        m,
        (0..m * m).map(|k| {
            let v = ((k as i64 * 7 + shift) % 11) - 5;
            (k / m, k % m, Rational::from_int(v))
        }),
    )
}

fn orbit_matrices(m: usize, r: usize) -> Vec<MatrixQ> {
    all_orbits(m, r)
        .iter()
        .map(|o| xi_to_matrix(&XiElement::basis(o)))
        .collect()
}

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for m in [8usize, 16, 27] {
        let a = sample_matrix(m, 3);
        group.bench_with_input(BenchmarkId::from_parameter(m), &a, |b, a| {
            b.iter(|| black_box(a).rref())
        });
    }
    group.finish();
}

fn xi_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("xi_multiply");
    for (m, r) in [(2usize, 3usize), (3, 2), (3, 3)] {
        let g = phi_of_group_element(&sample_matrix(m, 1), r);
        let h = phi_of_group_element(&sample_matrix(m, 4), r);
        group.bench_function(format!("m{m}_r{r}"), |b| {
            b.iter(|| xi_multiply(black_box(&g), black_box(&h)))
        });
    }
    group.finish();
}

fn commutants(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutant");
    group.sample_size(10);
    for (m, r) in [(2usize, 2usize), (3, 2), (2, 3)] {
        let gens = orbit_matrices(m, r);
        let size = m.pow(r as u32);
        group.bench_function(format!("schur_m{m}_r{r}"), |b| {
            b.iter(|| commutant(size, black_box(&gens)))
        });
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    for (n, r) in [(1usize, 2usize), (2, 2), (1, 3)] {
        let theta = theta_elements(n, r).unwrap();
        let mut seed: Vec<MatrixQ> = theta
            .big_theta
            .iter()
            .map(|(_, x)| xi_to_matrix(x))
            .collect();
        seed.extend(
            levi_basis(n, r)
                .iter()
                .map(|o| xi_to_matrix(&XiElement::basis(o))),
        );
        let size = (n + 1).pow(r as u32);
        group.bench_function(format!("parabolic_n{n}_r{r}"), |b| {
            b.iter(|| algebra_closure(size, black_box(&seed)))
        });
    }
    group.finish();
}

criterion_group!(benches, rref, xi_product, commutants, closure);
criterion_main!(benches);
