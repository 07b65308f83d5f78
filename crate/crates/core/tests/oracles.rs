//! Fast algorithms against brute-force references on random instances.

mod common;

use logdeg::graph::{automorphism_group_order, canonical_form};
use logdeg::linalg::{
    image_saturation_index, lattice_index_in_ambient, strict_feasible, ColumnKind, Feasibility, Index, IntegerMatrix,
    StrictFeasibilityProblem,
};
use logdeg::oracle::{
    brute_force_automorphism_count, brute_force_isomorphic, coset_ambient_index, determinantal_saturation_index,
    fourier_motzkin_feasible,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, entry: i64) -> IntegerMatrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-entry..=entry)).collect()).collect();
    IntegerMatrix::from_rows_with_cols(&data, cols)
}

#[test]
fn lattice_indices_match_coset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let (mut finite, mut infinite) = (0, 0);
    while finite < 300 {
        let a = random_matrix(&mut rng, 4, 3, 4);
        match lattice_index_in_ambient(&a) {
            Index::Finite(i) if i <= BigInt::from(50) => {
                assert_eq!(coset_ambient_index(&a, 1_000_000), Some(Index::Finite(i)), "{a:?}");
                finite += 1;
            }
            Index::Finite(_) => {}
            Index::Infinite => {
                assert_eq!(coset_ambient_index(&a, 1_000_000), Some(Index::Infinite));
                infinite += 1;
            }
        }
    }
    assert!(infinite > 0);
}

#[test]
fn saturation_indices_match_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut checked = 0;
    while checked < 300 {
        let a = random_matrix(&mut rng, 4, 4, 3);
        let i = image_saturation_index(&a);
        if i <= BigInt::from(50) {
            assert_eq!(determinantal_saturation_index(&a, 100_000), Some(i), "{a:?}");
            checked += 1;
        }
    }
}

#[test]
fn strict_feasibility_matches_fourier_motzkin() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..400 {
        let vars = rng.gen_range(1..=8);
        let rows = rng.gen_range(0..=4);
        let a: Vec<Vec<BigRational>> = (0..rows)
            .map(|_| (0..vars).map(|_| BigRational::from_integer(rng.gen_range(-2..=2).into())).collect())
            .collect();
        let kinds: Vec<ColumnKind> = (0..vars)
            .map(|_| match rng.gen_range(0..4) {
                0 => ColumnKind::Free,
                1 => ColumnKind::Nonnegative,
                _ => ColumnKind::Strict,
            })
            .collect();
        let p = StrictFeasibilityProblem::new(a, kinds).unwrap();
        let reference = fourier_motzkin_feasible(&p, 1_000_000).expect("small systems stay small");
        match strict_feasible(&p) {
            Feasibility::Witness(x) => {
                assert!(reference);
                assert!(p.is_witness(&x));
                yes += 1;
            }
            Feasibility::Certificate(y) => {
                assert!(!reference);
                assert!(p.is_certificate(&y));
                no += 1;
            }
        }
    }
    assert!(yes > 50 && no > 50, "{yes} feasible, {no} infeasible");
}

#[test]
fn automorphism_orders_match_permutation_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    let mut nontrivial = 0;
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 6, 6);
        let brute = brute_force_automorphism_count(&g);
        assert_eq!(automorphism_group_order(&g), BigUint::from(brute), "{g:?}");
        nontrivial += usize::from(brute > 1);
    }
    assert!(nontrivial > 30);
}

#[test]
fn canonical_forms_decide_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(75);
    let (mut same, mut different) = (0, 0);
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 5, 5);
        let h = if rng.gen_bool(0.5) { common::shuffled(&g, &mut rng) } else { common::random_graph(&mut rng, 5, 5) };
        let iso = brute_force_isomorphic(&g, &h.with_renamed_ids(|s| s.to_string()));
        assert_eq!(canonical_form(&g) == canonical_form(&h), iso, "{g:?}\n{h:?}");
        if iso {
            same += 1;
        } else {
            different += 1;
        }
    }
    assert!(same > 50 && different > 50);
}
