use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ftinv::chords::{tower_reduce, ChordDiagram, DiagramSum};
use ftinv::intmat::{IntMatrix, Rat};
use ftinv::links::{bracket_expand_link, FramedLink};
use ftinv::par::Exec;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn all_crossing(n: usize) -> ChordDiagram {
    let w: Vec<usize> = (0..n).chain(0..n).collect();
    ChordDiagram::from_word(&w).unwrap()
}

fn tower(c: &mut Criterion) {
    let mut g = c.benchmark_group("tower_reduce");
    g.sample_size(10);
    for n in [16, 27] {
        let d = all_crossing(n);
        let m = if n >= 27 { 3 } else { 2 };
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &d, |b, d| b.iter(|| tower_reduce(exec, black_box(d), m, 1).unwrap()));
        }
    }
    g.finish();
}

fn bracket(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket_expand_link");
    let link = FramedLink::new(IntMatrix::identity(14)).unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| bracket_expand_link(exec, "M", black_box(&link)).unwrap()));
    }
    g.finish();
}

fn canonical_merge(c: &mut Criterion) {
    let mut g = c.benchmark_group("diagram_sum_from_terms");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let terms: Vec<(ChordDiagram, Rat)> = (0..2000)
        .map(|i| {
            let mut w: Vec<usize> = (0..10).chain(0..10).collect();
            w.shuffle(&mut rng);
            (ChordDiagram::from_word(&w).unwrap(), Rat::from_integer((i % 7 - 3).into()))
        })
        .collect();
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| DiagramSum::from_terms(exec, black_box(&terms))));
    }
    g.finish();
}

criterion_group!(benches, tower, bracket, canonical_merge);
criterion_main!(benches);
