use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use facthom_core::algebras::{preset, random_algebra, PresetKind, RandomAlgebraSpec};
use facthom_core::bar::{hochschild_complex, TruncationPolicy};
use facthom_core::free_config::free_facthom_circle;
use facthom_core::koszul::{bar_dg_coalgebra, cohochschild_complex};
use facthom_core::manifolds::circle_two_ways;
use facthom_core::{ExactMatrix, Field};

fn elimination(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for field in [Field::Rational, Field::prime(101).unwrap()] {
        let n = 60;
        let trips: Vec<_> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|(r, c)| (r * 7 + c * 13) % 5 < 2)
            .map(|(r, c)| (r, c, field.from_i64(((r * 31 + c * 17) % 9) as i64 - 4)))
            .collect();
        let m = ExactMatrix::from_triplets(field, n, n, trips).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(field), &m, |b, m| b.iter(|| black_box(m.rank())));
    }
    g.finish();
}

fn cyclic_bar(c: &mut Criterion) {
    let mut g = c.benchmark_group("cyclic_bar");
    g.sample_size(20);
    let field = Field::Rational;
    let cases = [
        ("squarezero(2,0)", PresetKind::SquareZero { dim: 2, deg: 0 }),
        ("exterior(2,1)", PresetKind::Exterior { dim: 2, deg: 1 }),
        ("truncpoly(3)", PresetKind::TruncPoly { order: 3 }),
    ];
    for (name, kind) in cases {
        let a = preset(field, kind, Some(4)).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| {
                let h = hochschild_complex(&a, TruncationPolicy::new(5)).unwrap();
                black_box(h.homology().unwrap())
            })
        });
    }
    g.finish();
}

fn excision(c: &mut Criterion) {
    let mut g = c.benchmark_group("excision");
    g.sample_size(10);
    for weighted in [false, true] {
        let spec = RandomAlgebraSpec { field: Field::prime(5).unwrap(), dim: 4, weighted, max_degree: 1 };
        let a = random_algebra(spec, 3).unwrap();
        let label = if weighted { "weighted dim 4" } else { "unweighted dim 4" };
        g.bench_function(label, |b| b.iter(|| black_box(circle_two_ways(&a, 4).unwrap())));
    }
    g.finish();
}

fn koszul(c: &mut Criterion) {
    let a = preset(Field::Rational, PresetKind::SquareZero { dim: 2, deg: 0 }, Some(4)).unwrap();
    c.bench_function("cobar of Bar squarezero(2,0)", |b| {
        b.iter(|| {
            let bar = bar_dg_coalgebra(&a, 4).unwrap();
            black_box(cohochschild_complex(&bar).unwrap().homology().unwrap())
        })
    });
}

fn free(c: &mut Criterion) {
    let v = facthom_core::free_config::generator_space(2, 0);
    c.bench_function("free formula dim 2 weight 6", |b| {
        b.iter(|| black_box(free_facthom_circle(Field::Rational, &v, 6).unwrap()))
    });
}

criterion_group!(benches, elimination, cyclic_bar, excision, koszul, free);
criterion_main!(benches);
