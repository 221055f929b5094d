//! Benchmarks for the hot kernels: PBW multiplication, exact rank/kernel of
//! sparse matrices, Betti assembly, and the truncated Weyl driver.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use doring_core::betti::{betti_cohomology, truncated_betti};
use doring_core::element::Element;
use doring_core::linalg::SparseMatrix;
use doring_core::presets;
use doring_core::scalar::FieldKind;
use doring_core::symmetric::weyl_reports;

fn bench_multiplication(c: &mut Criterion) {
    let q = FieldKind::Rationals;
    let weyl = presets::weyl(q);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<(Element, Element)> = (0..32)
        .map(|_| {
            (
                presets::random_element(&mut rng, &weyl, 6),
                presets::random_element(&mut rng, &weyl, 6),
            )
        })
        .collect();
    c.bench_function("weyl_multiply_deg6", |b| {
        let mut i = 0;
        b.iter(|| {
            let (u, v) = &pairs[i % pairs.len()];
            i += 1;
            u.mul(v, &weyl)
        })
    });

    let srid = presets::heisenberg_sridharan(q);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs: Vec<(Element, Element)> = (0..32)
        .map(|_| {
            (
                presets::random_element(&mut rng, &srid, 4),
                presets::random_element(&mut rng, &srid, 4),
            )
        })
        .collect();
    c.bench_function("sridharan_multiply_deg4", |b| {
        let mut i = 0;
        b.iter(|| {
            let (u, v) = &pairs[i % pairs.len()];
            i += 1;
            u.mul(v, &srid)
        })
    });
}

fn random_matrix(seed: u64, n: usize, field: FieldKind) -> SparseMatrix {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.2) {
                triplets.push((i, j, field.integer(rng.gen_range(-5i64..=5))));
            }
        }
    }
    SparseMatrix::from_triplets(n, n, field, triplets)
}

fn bench_linalg(c: &mut Criterion) {
    for (name, field) in [
        ("rank_rational_60", FieldKind::Rationals),
        ("rank_fp_60", FieldKind::Fp(10007)),
    ] {
        let m = random_matrix(3, 60, field);
        c.bench_function(name, |b| {
            b.iter_batched(|| m.clone(), |m| m.rank(), BatchSize::SmallInput)
        });
    }
    let m = random_matrix(5, 40, FieldKind::Rationals);
    c.bench_function("kernel_rational_40", |b| {
        b.iter_batched(|| m.clone(), |m| m.kernel_basis(), BatchSize::SmallInput)
    });
}

fn bench_homology(c: &mut Criterion) {
    let q = FieldKind::Rationals;
    c.bench_function("sl2_betti_n3", |b| {
        b.iter(|| {
            let data = presets::sl2(q);
            let m = presets::augmentation_module(&data);
            betti_cohomology(&data, &m, 3).unwrap()
        })
    });
    c.bench_function("weyl_truncated_cap6", |b| {
        b.iter(|| {
            let data = presets::weyl(q);
            weyl_reports(&data, 2, &[6]).unwrap()
        })
    });
    c.bench_function("dual_numbers_truncated_cap5", |b| {
        b.iter(|| {
            let data = presets::dual_numbers(q);
            truncated_betti(&data, 1, &[5], true).unwrap()
        })
    });
}

criterion_group!(benches, bench_multiplication, bench_linalg, bench_homology);
criterion_main!(benches);
