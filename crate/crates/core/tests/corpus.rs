mod common;

use common::{corpus_dir, corpus_programs};
use lambek::check::{check_expr, check_program, Mode};
use lambek::eval::{Evaluator, DEFAULT_FUEL};
use lambek::syntax::{parse_program, pretty_program, Expr, Program};

fn without_pragmas(p: &Program) -> Program {
    let mut p = p.clone();
    p.declarations.iter_mut().for_each(|d| d.mode = None);
    p
}

#[test]
fn corpus_is_large_enough() {
    let n: usize = corpus_programs()
        .iter()
        .map(|(_, p)| p.declarations.len())
        .sum();
    assert!(n >= 12, "{n} declarations");
}

#[test]
fn every_file_round_trips() {
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let p = parse_program(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let again = parse_program(&pretty_program(&p)).unwrap();
        assert_eq!(again, p, "{}", path.display());
    }
}

#[test]
fn every_declaration_is_accepted_in_its_mode() {
    for (file, p) in corpus_programs() {
        for v in check_program(&p, Mode::Ordered) {
            assert!(
                v.verdict.accepted,
                "{file}:{} {:?}",
                v.name, v.verdict.diagnostics
            );
        }
    }
}

#[test]
fn acceptance_is_monotone_in_the_mode() {
    for (file, p) in corpus_programs() {
        let p = without_pragmas(&p);
        let by_mode: Vec<Vec<bool>> = Mode::ALL
            .iter()
            .map(|m| {
                check_program(&p, *m)
                    .iter()
                    .map(|v| v.verdict.accepted)
                    .collect()
            })
            .collect();
        for (i, d) in p.declarations.iter().enumerate() {
            let (o, l, u) = (by_mode[0][i], by_mode[1][i], by_mode[2][i]);
            assert!(
                (!o || l) && (!l || u),
                "{file}:{} ordered={o} linear={l} unrestricted={u}",
                d.name
            );
        }
    }
}

#[test]
fn reversal_at_identity_type_needs_exchange() {
    let text = std::fs::read_to_string(corpus_dir().join("reverse_bad.ord")).unwrap();
    let p = parse_program(&text).unwrap();
    let accepted = |m| check_program(&p, m).iter().all(|v| v.verdict.accepted);
    assert!(!accepted(Mode::Ordered));
    assert!(accepted(Mode::Linear));
    assert!(accepted(Mode::Unrestricted));
}

#[test]
fn closed_values_keep_their_type() {
    let mut checked = 0;
    for (file, p) in corpus_programs() {
        let verdicts = check_program(&p, Mode::Ordered);
        for (d, v) in p.declarations.iter().zip(&verdicts) {
            if d.ty.as_arrow().is_some() || matches!(d.ty, lambek::syntax::TypeExpr::Forall(..)) {
                continue;
            }
            let value = Evaluator::new(DEFAULT_FUEL)
                .with_globals(&p)
                .eval(&Expr::var(&d.name))
                .unwrap();
            let r = check_expr(&[], &[], &[], &value.to_expr(), &d.ty, v.mode, &p.signature);
            assert!(
                r.accepted,
                "{file}:{} evaluated to {value}: {:?}",
                d.name, r.diagnostics
            );
            checked += 1;
        }
    }
    assert!(checked >= 2);
}
