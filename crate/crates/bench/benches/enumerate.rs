use criterion::{criterion_group, criterion_main, Criterion};
use logdeg::EnumerationBounds;
use logdeg::enumerate_main_graphs;
use std::hint::black_box;

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, labels) in [("two_labels", vec!["1", "2"]), ("three_labels", vec!["1", "2", "3"])] {
        let bounds = EnumerationBounds::new(labels, 3, 3, 2, 0);
        group.bench_function(name, |b| b.iter(|| enumerate_main_graphs(black_box(&bounds)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumerate);
criterion_main!(benches);
