use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mukai_walls::oracle::brute_walls_with;
use mukai_walls::surd::rat;
use mukai_walls::walls::{enumerate_walls_on_line_with, wall_atlas_with};
use mukai_walls::{Context, Exec, MukaiVector, PellContext};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_walls_on_line");
    let ctx = Context::new(2).unwrap();
    let v = MukaiVector::from_ints(3, 1, -40);
    let s0 = rat(-7, 3);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| enumerate_walls_on_line_with(&v, &s0, &ctx, e).unwrap())
        });
    }
    g.finish();
}

fn atlas(c: &mut Criterion) {
    let mut g = c.benchmark_group("wall_atlas");
    let pell = PellContext::new(1, 19).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| wall_atlas_with(&pell, -2, 0, e).unwrap())
        });
    }
    g.finish();
}

fn brute(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_walls");
    g.sample_size(10);
    let ctx = Context::new(1).unwrap();
    let v = MukaiVector::from_ints(1, 0, -7);
    let s0 = rat(-5, 2);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| brute_walls_with(&v, &s0, 12, &ctx, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, atlas, brute);
criterion_main!(benches);
