use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use stabgeom::catalog;
use stabgeom::oracle::{code_projector, kl_detect, ErrorSet};
use stabgeom::search::candidates_and_gamma;
use stabgeom::{find_cliques, graph_to_generators, lines_from_matrix, CliqueMode};

fn rref(c: &mut Criterion) {
    let g = catalog::ternary_group().gmatrix().clone();
    c.bench_function("rref ternary 7x22", |b| b.iter(|| black_box(&g).rref()));
}

fn min_dependent(c: &mut Criterion) {
    let s = graph_to_generators(&catalog::nine_cycle()).unwrap();
    let x = lines_from_matrix(s.gmatrix()).unwrap();
    c.bench_function("min_dependent_set 9-cycle", |b| b.iter(|| black_box(&x).min_dependent_set(9)));
}

fn search(c: &mut Criterion) {
    let s = graph_to_generators(&catalog::nine_cycle()).unwrap();
    let x = lines_from_matrix(s.gmatrix()).unwrap();
    let pi = catalog::nine_cycle_restriction();
    let mut group = c.benchmark_group("9-cycle d=3");
    group.sample_size(20);
    group.bench_function("gamma", |b| b.iter(|| candidates_and_gamma(&x, 3, Some(&pi)).unwrap()));
    let gamma = candidates_and_gamma(&x, 3, Some(&pi)).unwrap();
    group.bench_function("exact cliques", |b| b.iter(|| find_cliques(&gamma, CliqueMode::Exact, None).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let s = catalog::pentagon_group();
    let t = catalog::pentagon_coding_set();
    let errs = ErrorSet::up_to_weight(s.modulus(), 5, 1);
    c.bench_function("pentagon projector", |b| b.iter(|| code_projector(&s, &t).unwrap()));
    let pr = code_projector(&s, &t).unwrap();
    c.bench_function("pentagon kl weight 1", |b| b.iter(|| kl_detect(&pr, &errs).unwrap()));
}

criterion_group!(benches, rref, min_dependent, search, oracle);
criterion_main!(benches);
