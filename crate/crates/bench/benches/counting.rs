use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use weylpart::{BudgetMode, CohomCounter, PartSet, PartitionCounter};

fn bench_partition_grid(c: &mut Criterion) {
    c.bench_function("partition_count_powers2_m2000_n24", |b| {
        b.iter(|| {
            let mut counter = PartitionCounter::new(PartSet::powers(2).unwrap());
            black_box(counter.count(black_box(2000), black_box(24)).unwrap());
        })
    });

    // shared-memo grid, the shape the sweeps and acceptance checks use
    c.bench_function("partition_grid_powers2_m200_n12", |b| {
        b.iter(|| {
            let mut counter = PartitionCounter::new(PartSet::powers(2).unwrap());
            for m in 1..=200u64 {
                for n in 1..=12u64 {
                    black_box(counter.count(m, n).unwrap());
                }
            }
        })
    });
}

fn bench_cohomology(c: &mut Criterion) {
    c.bench_function("cohom_dim_p3_even_m_to_2000_n10", |b| {
        b.iter(|| {
            let mut counter = CohomCounter::new(3).unwrap();
            for m in (0..=2000u64).step_by(2) {
                black_box(counter.dim(m, 10));
            }
        })
    });

    c.bench_function("cohom_count_p3_target2502_budget17", |b| {
        b.iter(|| {
            let mut counter = CohomCounter::new(3).unwrap();
            black_box(counter.count(2502, 17, BudgetMode::Exact).unwrap());
        })
    });
}

criterion_group!(benches, bench_partition_grid, bench_cohomology);
criterion_main!(benches);
