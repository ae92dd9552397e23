mod common;

use common::oracle::oracle_crossings;
use graftlab::hyperbolic::{geodesic_crossings, CrossingOptions, FuchsianModel};
use graftlab::multicurve::CurveCalculus;
use graftlab::word::Word;

const SUITE: [&str; 6] = ["a1", "b1", "a2", "b2", "a1 b1", "a1 a2"];

fn word(model: &FuchsianModel, text: &str) -> Word {
    Word::parse(text, model.surface()).unwrap()
}

fn translation_length(model: &FuchsianModel, w: &Word) -> f64 {
    2.0 * (model.word_matrix(w).trace().abs() / 2.0).acosh()
}

#[test]
fn named_suite_matches_brute_force() {
    let model = FuchsianModel::standard(2).unwrap();
    let opts = CrossingOptions::default();
    for x in SUITE {
        for y in SUITE {
            let (c, d) = (word(&model, x), word(&model, y));
            let fast = geodesic_crossings(&model, &c, &d, &opts).unwrap();
            let slow = oracle_crossings(&model, &c, &d, 10);
            assert!(!slow.truncated, "oracle truncated on ({x}, {y})");
            assert_eq!(fast.len(), slow.crossings, "({x}, {y})");
            let len = translation_length(&model, &c);
            for cr in &fast {
                assert!(
                    slow.params.iter().any(|&p| {
                        let gap = (p - cr.s).rem_euclid(len);
                        gap.min(len - gap) < 1e-6
                    }),
                    "({x}, {y}) crossing at {} not found by the oracle",
                    cr.s
                );
            }
        }
    }
}

#[test]
fn named_values() {
    let calc = CurveCalculus::new(2).unwrap();
    let i = |x: &str, y: &str| {
        let c = calc.curve(x).unwrap();
        let d = calc.curve(y).unwrap();
        calc.curve_intersection(&c, &d).unwrap()
    };
    assert_eq!(i("a1", "b1"), 1);
    assert_eq!(i("a1", "a2"), 0);
    assert_eq!(i("a1", "b2"), 0);
    assert_eq!(i("a1 b1", "a1"), 1);
    assert_eq!(i("a1 b1", "b1"), 1);
    assert_eq!(i("a1 a2", "b1"), 1);
    assert_eq!(i("a1 a2", "b2"), 1);
}

#[test]
fn longer_words_match_brute_force() {
    let model = FuchsianModel::standard(2).unwrap();
    let opts = CrossingOptions::default();
    for (x, y) in [("a1 b1 a2", "b2 a1"), ("a1 a1 b1", "b1 a2 b2"), ("a1 B2 a2", "b1 b1 a2")] {
        let (c, d) = (word(&model, x), word(&model, y));
        let fast = geodesic_crossings(&model, &c, &d, &opts).unwrap();
        let slow = oracle_crossings(&model, &c, &d, 10);
        assert!(!slow.truncated, "oracle truncated on ({x}, {y})");
        assert_eq!(fast.len(), slow.crossings, "({x}, {y})");
    }
}
