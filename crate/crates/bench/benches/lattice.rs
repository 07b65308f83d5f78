use criterion::{criterion_group, criterion_main, Criterion};
use logdeg::fixtures;
use logdeg::linalg::{hermite_normal_form, smith_normal_form};
use logdeg::{build_maps, compute_invariants, multiplicity_report};
use std::hint::black_box;

fn lattice(c: &mut Criterion) {
    let graphs = [("star", fixtures::star()), ("bipartite_6", fixtures::bipartite(&[2, 3, 4, 5, 6, 7]))];
    for (name, g) in &graphs {
        let maps = build_maps(g).unwrap();
        let rho_bullet = maps.rho_bullet.clone().unwrap();
        c.bench_function(&format!("snf_rho_bullet/{name}"), |b| b.iter(|| smith_normal_form(black_box(&rho_bullet))));
        c.bench_function(&format!("hnf_mu/{name}"), |b| b.iter(|| hermite_normal_form(black_box(&maps.mu))));
        c.bench_function(&format!("invariants/{name}"), |b| b.iter(|| compute_invariants(black_box(g)).unwrap()));
    }
    let star = fixtures::star();
    c.bench_function("multiplicity_report/star", |b| b.iter(|| multiplicity_report(black_box(&star)).unwrap()));
}

criterion_group!(benches, lattice);
criterion_main!(benches);
