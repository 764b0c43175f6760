use std::collections::BTreeSet;

use lambek::check::{check_expr, Mode};
use lambek::enumerate::{count_inhabitants, enumerate_inhabitants, SearchBudget};
use lambek::eval::{Evaluator, Value, DEFAULT_FUEL};
use lambek::syntax::{parse_type, pretty_expr, AtomId, Expr, Signature, TypeExpr};
use lambek::types::collapse;
use proptest::prelude::*;

const TABLE: [(&str, [usize; 3]); 6] = [
    ("all a. a ->> a", [1, 1, 1]),
    ("all a. a ->> a ->> a", [0, 0, 2]),
    ("all a. a ->> a ->> a * a", [1, 2, 4]),
    ("all a. a ->> a \\ a * a", [1, 2, 4]),
    ("all a. all b. a ->> b ->> b * a", [0, 1, 1]),
    ("all a. all b. a ->> b ->> a * b", [1, 1, 1]),
];

fn type_vars(ty: &TypeExpr) -> Vec<String> {
    let mut vars = Vec::new();
    let mut cur = ty;
    while let TypeExpr::Forall(v, body) = cur {
        vars.push(v.clone());
        cur = body;
    }
    vars
}

#[test]
fn counting_table() {
    for (src, expected) in TABLE {
        let ty = parse_type(src).unwrap();
        for (mode, want) in Mode::ALL.into_iter().zip(expected) {
            let (n, truncated) = count_inhabitants(&ty, mode, SearchBudget::default()).unwrap();
            assert_eq!((n, truncated), (want, false), "{src} in {mode:?}");
        }
    }
}

#[test]
fn every_inhabitant_typechecks() {
    let sig = Signature::new();
    for (src, _) in TABLE {
        let ty = parse_type(src).unwrap();
        let delta = type_vars(&ty);
        for mode in Mode::ALL {
            for e in enumerate_inhabitants(&ty, mode, SearchBudget::default())
                .unwrap()
                .terms
            {
                let v = check_expr(&delta, &[], &[], &e, &ty, mode, &sig);
                assert!(
                    v.accepted,
                    "{} : {src} in {mode:?}: {:?}",
                    pretty_expr(&e),
                    v.diagnostics
                );
            }
        }
    }
}

#[test]
fn linear_swap_is_the_only_extra_pair() {
    let ty = parse_type("all a. a ->> a ->> a * a").unwrap();
    let found: Vec<String> = enumerate_inhabitants(&ty, Mode::Linear, SearchBudget::default())
        .unwrap()
        .terms
        .iter()
        .map(pretty_expr)
        .collect();
    assert_eq!(found.len(), 2);
    assert!(found.iter().any(|t| t.contains("(x, y)")));
    assert!(found.iter().any(|t| t.contains("(y, x)")));
}

/// First-order types: atoms in, a positive combination of atoms out.
fn arb_result(depth: u32) -> BoxedStrategy<TypeExpr> {
    let atom = prop_oneof![
        Just(TypeExpr::var("a")),
        Just(TypeExpr::var("b")),
        Just(TypeExpr::Unit)
    ];
    atom.prop_recursive(depth, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| TypeExpr::fuse(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| TypeExpr::twist(x, y)),
            (inner.clone(), inner).prop_map(|(x, y)| TypeExpr::sum([("l", x), ("r", y)])),
        ]
    })
    .boxed()
}

fn arb_first_order() -> impl Strategy<Value = TypeExpr> {
    let arrow = prop_oneof![Just(0u8), Just(1u8)];
    (
        prop::collection::vec((prop_oneof![Just("a"), Just("b")], arrow), 0..4),
        arb_result(2),
    )
        .prop_map(|(params, res)| {
            params.into_iter().rev().fold(res, |acc, (v, k)| {
                if k == 0 {
                    TypeExpr::over(TypeExpr::var(v), acc)
                } else {
                    TypeExpr::under(TypeExpr::var(v), acc)
                }
            })
        })
}

fn arity(ty: &TypeExpr) -> usize {
    let mut n = 0;
    let mut cur = ty;
    while let Some((_, _, b)) = cur.as_arrow() {
        n += 1;
        cur = b;
    }
    n
}

fn probe(e: &Expr, args: usize) -> Value {
    let mut ev = Evaluator::new(DEFAULT_FUEL);
    let mut v = ev.eval(e).unwrap();
    for i in 0..args {
        v = ev.apply(&v, &Value::Atom(AtomId(i as u32 + 1))).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_is_sound_and_monotone(ty in arb_first_order()) {
        let sig = Signature::new();
        let mut counts = Vec::new();
        for mode in Mode::ALL {
            let found = enumerate_inhabitants(&ty, mode, SearchBudget::default()).unwrap();
            prop_assert!(!found.truncated);
            for e in &found.terms {
                let v = check_expr(&[], &[], &[], e, &ty, mode, &sig);
                prop_assert!(v.accepted, "{} in {:?}", pretty_expr(e), mode);
            }
            counts.push(found.terms.len());
        }
        prop_assert!(counts[0] <= counts[1] && counts[1] <= counts[2], "{:?}", counts);
    }

    #[test]
    fn inhabitants_are_extensionally_distinct(ty in arb_first_order()) {
        for mode in Mode::ALL {
            let found = enumerate_inhabitants(&ty, mode, SearchBudget::default()).unwrap();
            let outputs: BTreeSet<String> =
                found.terms.iter().map(|e| probe(e, arity(&ty)).to_string()).collect();
            prop_assert_eq!(outputs.len(), found.terms.len());
        }
    }

    #[test]
    fn collapsing_first_does_not_change_counts(ty in arb_first_order()) {
        for mode in [Mode::Linear, Mode::Unrestricted] {
            let direct = count_inhabitants(&ty, mode, SearchBudget::default()).unwrap();
            let collapsed = count_inhabitants(&collapse(&ty, mode), mode, SearchBudget::default()).unwrap();
            prop_assert_eq!(direct, collapsed);
        }
    }
}
