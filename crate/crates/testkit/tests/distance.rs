use std::sync::OnceLock;

use signed_grid::distance::{
    apply_moves, distance_polynomials, sorting_sequence, witnessed_generators,
};
use signed_grid::{DistanceFamily, Generators, InflationVector, Limits, Polynomial, SignedPerm};
use signed_grid_testkit::checks;

fn pancake() -> &'static [Polynomial] {
    static POLYS: OnceLock<Vec<Polynomial>> = OnceLock::new();
    POLYS.get_or_init(|| {
        distance_polynomials(DistanceFamily::PrefixReversal, 8, &Limits::default()).unwrap()
    })
}

fn reversal() -> &'static [Polynomial] {
    static POLYS: OnceLock<Vec<Polynomial>> = OnceLock::new();
    POLYS.get_or_init(|| {
        distance_polynomials(DistanceFamily::BlockReversal, 5, &Limits::default()).unwrap()
    })
}

fn ok(result: checks::Check) {
    if let Err(msg) = result {
        panic!("{msg}");
    }
}

#[test]
fn pancake_arrays_through_eight() {
    ok(checks::tables_match(
        DistanceFamily::PrefixReversal,
        pancake(),
        1..=8,
    ));
}

#[test]
fn reversal_arrays_through_five() {
    ok(checks::tables_match(
        DistanceFamily::BlockReversal,
        reversal(),
        1..=5,
    ));
}

#[test]
fn exact_distance_closed_forms_through_eight() {
    ok(checks::exact_distance_forms(pancake(), 8));
}

#[test]
fn gregory_newton_on_exact_distance() {
    ok(checks::gregory_newton(pancake(), 2..=7));
}

#[test]
fn polynomials_agree_with_search() {
    ok(checks::oracle_agreement(
        DistanceFamily::PrefixReversal,
        pancake(),
        6,
    ));
    ok(checks::oracle_agreement(
        DistanceFamily::BlockReversal,
        &reversal()[..=3],
        5,
    ));
}

#[test]
fn classes_are_nested() {
    for polys in [pancake(), reversal()] {
        for pair in polys.windows(2) {
            for n in 1..=8 {
                assert!(pair[0].evaluate_at(n) <= pair[1].evaluate_at(n));
            }
        }
    }
}

#[test]
fn generator_counts_and_lengths() {
    let mut level = Generators::base(DistanceFamily::PrefixReversal);
    let mut factorial = 1;
    for k in 1..=7 {
        level = level.next_level();
        factorial *= k;
        assert_eq!(level.len(), factorial, "k = {k}");
        assert!(level.perms().all(|p| p.len() == k + 1));
    }
    let mut level = Generators::base(DistanceFamily::BlockReversal);
    for k in 1..=3 {
        level = level.next_level();
        assert!(level.perms().all(|p| p.len() == 2 * k + 1));
    }
}

#[test]
fn translated_sequences_sort_every_inflation() {
    for (family, k) in [
        (DistanceFamily::PrefixReversal, 4),
        (DistanceFamily::BlockReversal, 2),
    ] {
        for (idx, (pi, moves)) in witnessed_generators(family, k).unwrap().iter().enumerate() {
            assert!(apply_moves(pi, moves).unwrap().is_identity());
            let sizes: Vec<usize> = (0..pi.len()).map(|i| (i * 7 + idx) % 4).collect();
            let v = InflationVector::new(sizes);
            let sigma = pi.inflate(&v).unwrap();
            let translated = sorting_sequence(&sigma, family, pi, &v, moves).unwrap();
            assert!(translated.len() <= moves.len());
            assert_eq!(
                apply_moves(&sigma, &translated).unwrap(),
                SignedPerm::identity(sigma.len())
            );
        }
    }
}
