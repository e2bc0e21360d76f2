use proptest::collection::vec;
use proptest::prelude::*;
use superglinf::weyl::{apply_word, CartanMatrix, Letter, ParityWord, Root, WeightSet};

fn word() -> impl Strategy<Value = ParityWord> {
    vec(any::<bool>().prop_map(|d| if d { Letter::D } else { Letter::E }), 2..=8).prop_map(ParityWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn odd_reflections_are_involutions(w in word()) {
        for i in 1..=w.nodes() {
            match w.odd_reflection(i) {
                Ok(v) => {
                    prop_assert!(w.is_grey(i).unwrap());
                    prop_assert_eq!(v.odd_reflection(i).unwrap(), w.clone());
                    prop_assert_eq!((v.m(), v.n()), (w.m(), w.n()));
                }
                Err(_) => prop_assert!(!w.is_grey(i).unwrap()),
            }
        }
    }

    #[test]
    fn cartan_diagonal_marks_grey_nodes(w in word()) {
        let a = CartanMatrix::from_word(&w);
        for i in 1..=w.nodes() {
            let grey = w.is_grey(i).unwrap();
            prop_assert_eq!(a.at(i, i) == 0, grey);
            if !grey {
                prop_assert_eq!(a.at(i, i).abs(), 2);
            }
        }
    }

    /// Any finite set is a union of α-strings, and reversing each string is an involution.
    #[test]
    fn string_reflections_square_to_one(
        points in vec(vec(-2i64..=2, 3), 1..12),
        (a, b) in (0usize..3, 0usize..3).prop_filter("distinct", |(a, b)| a != b),
    ) {
        let set = WeightSet::user(2, 1, points).unwrap();
        let r = apply_word(&[Root::difference(3, a, b)], &set);
        let twice: Vec<usize> = r.iter().map(|&i| r[i]).collect();
        prop_assert_eq!(twice, (0..set.len()).collect::<Vec<_>>());
    }

    #[test]
    fn word_json_round_trip(w in word()) {
        let back: ParityWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }
}
