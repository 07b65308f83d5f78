//! Enumerated main graphs checked against independent references.

use std::collections::BTreeSet;

use logdeg::degeneration::{enumerate_main_graphs, enumerate_main_graphs_with, is_main, multiplicity_report};
use logdeg::format::{parse_graph, serialize_graph};
use logdeg::gluing::{check_point, fiber_value, monomial_curve_point};
use logdeg::graph::{canonical_form, DecoratedGraph, GraphBuilder, Mode};
use logdeg::oracle::brute_force_isomorphic;
use logdeg::tropical::primitive_generator;
use logdeg::EnumerationBounds;
use num_rational::BigRational;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> (EnumerationBounds, Vec<DecoratedGraph>) {
    let bounds = EnumerationBounds::new(["1", "2"], 3, 3, 2, 0);
    let graphs = enumerate_main_graphs(&bounds).unwrap();
    (bounds, graphs)
}

#[test]
fn output_is_main_and_pairwise_non_isomorphic() {
    let (_, graphs) = small();
    assert!(graphs.len() > 10);
    for g in &graphs {
        assert!(is_main(g).unwrap());
        assert!(multiplicity_report(g).unwrap().lemma51_ok);
        assert_eq!(parse_graph(&serialize_graph(g)).unwrap(), *g);
    }
    for (i, g) in graphs.iter().enumerate() {
        for h in &graphs[i + 1..] {
            assert!(!brute_force_isomorphic(g, h), "{g:?}\n{h:?}");
        }
    }
}

/// Random graph within the small bounds, possibly invalid or not main.
fn random_candidate<R: Rng>(rng: &mut R) -> DecoratedGraph {
    let n = rng.gen_range(1..=3);
    let depths: [&[&str]; 3] = [&["1"], &["2"], &["1", "2"]];
    let mut b = GraphBuilder::new(Mode::Degeneration, ["1", "2"]);
    for v in 0..n {
        b = b.vertex(&format!("v{v}"), 0, depths[rng.gen_range(0..3)]);
    }
    let m = rng.gen_range(n - 1..=3);
    for k in 0..m {
        let (a, c) = if k + 1 < n { (k, k + 1) } else { (rng.gen_range(0..n), rng.gen_range(0..n)) };
        let contact = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        b = b.edge(&format!("e{k}"), &format!("v{a}"), &format!("v{c}"), &contact);
    }
    b.build().unwrap()
}

#[test]
fn every_sampled_main_graph_is_enumerated() {
    let (_, graphs) = small();
    let forms: BTreeSet<_> = graphs.iter().map(canonical_form).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut hits = BTreeSet::new();
    for _ in 0..400_000 {
        let g = random_candidate(&mut rng);
        if let Ok(true) = is_main(&g) {
            let form = canonical_form(&g);
            assert!(forms.contains(&form), "missing {g:?}");
            hits.insert(form);
        }
    }
    // The sampler reaches a good share of the output.
    assert!(hits.len() * 2 > forms.len(), "{} of {}", hits.len(), forms.len());
}

#[test]
fn workers_agree() {
    let (bounds, graphs) = small();
    assert_eq!(enumerate_main_graphs_with(&bounds, 3).unwrap(), graphs);
}

#[test]
fn monomial_curves_lie_on_the_gluing_space() {
    let (_, graphs) = small();
    let taus = [BigRational::from_integer(2.into()), BigRational::new(1.into(), 3.into())];
    for g in &graphs {
        let eta = primitive_generator(g).unwrap();
        let m_red = multiplicity_report(g).unwrap().m_red;
        let exponent: u32 = m_red.try_into().unwrap();
        for tau in &taus {
            let p = monomial_curve_point(g, &eta, tau).unwrap();
            assert!(check_point(g, &p).unwrap());
            for v in 0..g.vertices().len() {
                assert_eq!(fiber_value(g, &p, v).unwrap(), Pow::pow(tau, exponent));
            }
        }
    }
}
