mod common;

use common::refinterp::{Outcome, RefInterp};
use common::{agree, differential_corpus, differential_generated, DIFF_FUEL};
use lambek::eval::eval;
use lambek::syntax::parse_expr;
use proptest::prelude::*;

#[test]
fn corpus_agrees() {
    let n = differential_corpus().unwrap();
    assert!(n > 50, "only {n} comparisons");
}

#[test]
fn generated_terms_agree() {
    differential_generated(500, 7).unwrap();
}

#[test]
fn shadowing_and_capture() {
    for src in [
        "(\\x. \\y. x) (\\y. y)",
        "(\\x. \\x. x) #1 #2",
        "(\\f. \\y. f y) (\\x. (x, #3))",
        "match (#1, #2) ((x, y) => match (y, x) ((x, y) => (x, y)))",
        "(\\x. match x {l(y) => (y, x), r(x) => x}) (l(#4))",
    ] {
        let e = parse_expr(src).unwrap();
        agree(src, eval(&e, DIFF_FUEL), RefInterp::new(DIFF_FUEL).eval(&e)).unwrap();
    }
}

#[test]
fn failures_agree() {
    let omega = parse_expr("(\\x. x x) (\\x. x x)").unwrap();
    assert_eq!(
        RefInterp::new(100).eval(&omega).unwrap_err(),
        Outcome::OutOfFuel
    );
    agree("omega", eval(&omega, 100), RefInterp::new(100).eval(&omega)).unwrap();
    let stuck = parse_expr("match () ((x, y) => x)").unwrap();
    agree("stuck", eval(&stuck, 100), RefInterp::new(100).eval(&stuck)).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_batches_agree(seed in any::<u64>()) {
        prop_assert!(differential_generated(5, seed).is_ok(), "{:?}", differential_generated(5, seed));
    }
}
