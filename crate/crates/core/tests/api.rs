use proptest::prelude::*;
use signed_grid::distance::{apply_moves, sorting_sequence};
use signed_grid::polynomial::{rational, PolynomialRecord};
use signed_grid::{
    complete_and_compact, enumerate, DistanceFamily, Error, InflationVector, Move, PermError,
    PermSet, Polynomial, SignedPerm, SignedWord, Style,
};

fn p(s: &str) -> SignedPerm {
    s.parse().unwrap()
}

#[test]
fn text_encoding() {
    assert_eq!(p("-2 1 3").to_string(), "-2 1 3");
    assert_eq!(p("  -2   1 3 ").to_string(), "-2 1 3");
    assert_eq!(SignedPerm::empty().to_string(), "");
    assert_eq!(p(""), SignedPerm::empty());
    assert!(matches!(
        "1 -1".parse::<SignedPerm>(),
        Err(PermError::RepeatedValue { value: 1 })
    ));
    assert!(matches!(
        "2 0".parse::<SignedPerm>(),
        Err(PermError::ZeroEntry { .. })
    ));
    assert!(matches!(
        "1 4".parse::<SignedPerm>(),
        Err(PermError::NotStandard { .. })
    ));
    assert!(matches!(
        "1 a".parse::<SignedPerm>(),
        Err(PermError::InvalidToken { .. })
    ));
}

#[test]
fn standardizing_words() {
    let w = SignedWord::new(vec![-7, 3, 10]).unwrap();
    assert_eq!(w.standardize(), p("-2 1 3"));
    assert!(SignedWord::new(vec![4, -4]).is_err());
}

#[test]
fn inflation_and_compactify() {
    let v: InflationVector = "3 3".parse().unwrap();
    assert_eq!(p("-1 2").inflate(&v).unwrap(), p("-3 -2 -1 4 5 6"));
    assert_eq!(p("-3 -2 -1 4 5 6").compactify(), (p("-1 2"), v));
    assert_eq!(
        p("2 1").inflate(&InflationVector::new(vec![0, 0])).unwrap(),
        SignedPerm::empty()
    );
    assert!(matches!(
        p("1 2").inflate(&InflationVector::new(vec![1])),
        Err(PermError::LengthMismatch { .. })
    ));
}

#[test]
fn permset_files_round_trip() {
    let s = complete_and_compact(&PermSet::singleton(p("-2 1 3")));
    let text = s.to_lines();
    assert_eq!(text, "\n1\n-1\n-1 2\n-2 1\n-2 1 3\n");
    assert_eq!(PermSet::parse_lines(text.as_bytes()).unwrap(), s);

    let err = PermSet::parse_lines("1\n\n1 2\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
    let err = PermSet::parse_lines("1\n3 1\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Line { line: 2, .. }), "{err}");
}

#[test]
fn empty_inputs() {
    assert!(enumerate(&PermSet::new()).is_zero());
    let eps = PermSet::singleton(SignedPerm::empty());
    assert_eq!(complete_and_compact(&eps), eps);
    assert_eq!(enumerate(&eps).format(Style::CoeffArray), "[]");
}

#[test]
fn polynomial_records() {
    let poly = enumerate(&PermSet::singleton(p("-2 1 3")));
    let json = serde_json::to_string(&poly.to_record()).unwrap();
    assert_eq!(
        json,
        r#"{"basis":"monomial","coeffs":["1","1/2","1/2"],"valid_for":"n>=1"}"#
    );
    let record: PolynomialRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(Polynomial::from_record(&record).unwrap(), poly);
    assert_eq!(poly.coeff(2), rational(1, 2));
}

#[test]
fn sorting_sequence_examples() {
    let pi = p("-2 1 3");
    let v: InflationVector = "1 2 3".parse().unwrap();
    let sigma = p("-3 1 2 4 5 6");
    let s = [Move::Prefix(2), Move::Prefix(1)];
    let translated = sorting_sequence(&sigma, DistanceFamily::PrefixReversal, &pi, &v, &s).unwrap();
    assert_eq!(translated, [Move::Prefix(3), Move::Prefix(2)]);
    assert!(apply_moves(&sigma, &translated).unwrap().is_identity());

    let pi = p("1 -2 3");
    let ones = InflationVector::ones(3);
    let s = [Move::Block(2, 2)];
    let translated = sorting_sequence(&pi, DistanceFamily::BlockReversal, &pi, &ones, &s).unwrap();
    assert_eq!(translated, s);

    let wrong = sorting_sequence(&pi, DistanceFamily::PrefixReversal, &pi, &ones, &s);
    assert!(matches!(wrong, Err(Error::WrongFamily { .. })));
}

fn signed_perm(max_len: usize) -> impl Strategy<Value = SignedPerm> {
    (0..=max_len)
        .prop_flat_map(|n| {
            (
                Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(abs, signs)| {
            let entries = abs
                .into_iter()
                .zip(signs)
                .map(|(a, neg)| if neg { -a } else { a });
            SignedPerm::new(entries.collect()).unwrap()
        })
}

proptest! {
    #[test]
    fn display_parse_round_trip(q in signed_perm(14)) {
        prop_assert_eq!(q.to_string().parse::<SignedPerm>().unwrap(), q);
    }

    #[test]
    fn standardize_is_idempotent(q in signed_perm(10)) {
        let w = SignedWord::new(q.entries().to_vec()).unwrap();
        prop_assert_eq!(w.standardize(), q);
    }

    #[test]
    fn every_permutation_is_in_its_own_class(q in signed_perm(8)) {
        let s = complete_and_compact(&PermSet::singleton(q.clone()));
        prop_assert!(signed_grid::grid_member(&q, &s));
        prop_assert!(s.contains(&q.compactify().0));
    }
}
