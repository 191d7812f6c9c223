use circaut_bench::{cycle_power, disjoint_cliques, quadratic, workload};
use circaut_core::oracle::{brute_force_aut, ci_counterexample};
use circaut_core::{aut, Method, PermGroup, SearchBudget, SolverConfig};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("aut");
    for (name, x) in workload() {
        group.bench_with_input(BenchmarkId::new("auto", &name), &x, |b, x| {
            b.iter(|| aut(black_box(x), &SolverConfig::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", &name), &x, |b, x| {
            let config = SolverConfig::with_method(Method::Oracle);
            b.iter(|| aut(black_box(x), &config).unwrap())
        });
    }
    group.finish();
}

fn realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize");
    for (name, x) in [
        ("quadratic-31", quadratic(31)),
        ("cycle-power-30", cycle_power(30, 3)),
        ("cliques-30-2", disjoint_cliques(30, 2)),
    ] {
        let description = aut(&x, &SolverConfig::default()).unwrap().description;
        group.bench_function(name, |b| b.iter(|| description.realize().unwrap().order()));
    }
    group.finish();
}

fn schreier_sims(c: &mut Criterion) {
    let mut group = c.benchmark_group("schreier-sims");
    for n in [16, 24, 32] {
        let generators = PermGroup::symmetric(n).generators().to_vec();
        group.bench_with_input(BenchmarkId::new("symmetric", n), &generators, |b, g| {
            b.iter(|| PermGroup::new(n, black_box(g.clone())).unwrap().order())
        });
    }
    let x = disjoint_cliques(24, 4);
    let generators = brute_force_aut(&x, &SearchBudget::default()).unwrap().generators().to_vec();
    group.bench_function("wreath-24", |b| {
        b.iter(|| PermGroup::new(24, black_box(generators.clone())).unwrap().order())
    });
    group.finish();
}

fn ci(c: &mut Criterion) {
    let budget = SearchBudget::default();
    c.bench_function("ci-exhaustive-12", |b| b.iter(|| ci_counterexample(black_box(12), &budget).unwrap()));
}

criterion_group!(benches, solvers, realize, schreier_sims, ci);
criterion_main!(benches);
