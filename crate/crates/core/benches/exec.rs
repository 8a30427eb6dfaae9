use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ybe_core::abgroup::{aut_from_matrix, FinAbGroup};
use ybe_core::brace::{trivial_brace, FiniteBrace};
use ybe_core::constructions::{construct_newsol_trusted, make_jfamily};
use ybe_core::par::Exec;
use ybe_core::ybcore::{braid_witness, gamma_table};

fn bench_braid(c: &mut Criterion) {
    // j_a = a² over Z/9 with t = id: 81 points.
    let g = FinAbGroup::cyclic(9).unwrap();
    let t = aut_from_matrix(&g, &[vec![1]]).unwrap();
    let pairs: Vec<(usize, usize)> = (0..9).map(|a| (a, a * a % 9)).collect();
    let s = construct_newsol_trusted(&make_jfamily(&g, &t, &pairs).unwrap()).unwrap();
    let n = s.size();
    let gamma = gamma_table(n, s.sigma_table());
    let mut group = c.benchmark_group("braid_check");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), n), &exec, |b, &exec| {
            b.iter(|| assert!(braid_witness(n, s.sigma_table(), &gamma, exec).is_none()))
        });
    }
    group.finish();
}

fn bench_brace_axioms(c: &mut Criterion) {
    let b = trivial_brace(&FinAbGroup::parse("Z4xZ4xZ4").unwrap());
    let (add, mul) = (b.add_table().to_vec(), b.mul_table().to_vec());
    let m = b.size();
    let mut group = c.benchmark_group("brace_validation");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), m), &exec, |bch, &exec| {
            bch.iter(|| FiniteBrace::from_tables(m, add.clone(), mul.clone(), Vec::new(), usize::MAX, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_braid, bench_brace_axioms);
criterion_main!(benches);
