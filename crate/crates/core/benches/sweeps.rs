use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;

use pytuple_core::chain::{build_chains, ChainMode, ChainStrategy};
use pytuple_core::verify::{run, VerifyBounds, VerifyMode};
use pytuple_core::{Execution, FactorBudget};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (mode, max_leg) in [
        (VerifyMode::TriplesOracle, 150u64),
        (VerifyMode::Predictor, 500),
        (VerifyMode::Counts, 1000),
    ] {
        for (label, exec) in MODES {
            let mut bounds = VerifyBounds::for_mode(mode);
            bounds.max_leg = max_leg;
            bounds.cases = 200;
            bounds.exec = exec;
            group.bench_with_input(
                BenchmarkId::new(mode.name(), label),
                &bounds,
                |b, bounds| b.iter(|| run(mode, bounds).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain");
    group.sample_size(10);
    let seed = BigUint::from(15u32);
    let strategy = ChainStrategy::new(ChainMode::AllBranches);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new("all-branches-depth-3", label), |b| {
            b.iter(|| build_chains(&seed, 3, &strategy, FactorBudget::default(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweeps, bench_chains);
criterion_main!(benches);
