#![allow(dead_code)]

pub mod gen;
pub mod refinterp;

use std::path::PathBuf;

use lambek::syntax::{parse_program, Program};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every corpus file except the negative controls, with its parsed program.
pub fn corpus_programs() -> Vec<(String, Program)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "ord"))
        .filter(|p| !p.file_stem().unwrap().to_string_lossy().ends_with("_bad"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let prog = parse_program(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, prog)
        })
        .collect()
}

use lambek::eval::{EvalError, Evaluator, Value};
use lambek::syntax::{pretty_expr, Expr};
use rand::rngs::StdRng;
use rand::SeedableRng;

use refinterp::{readback, Outcome, RVal, RefInterp};

pub const DIFF_FUEL: u64 = 5_000;

/// `Ok` when both interpreters produced the same value or failed the same way.
pub fn agree(
    subject: &str,
    ev: Result<Value, EvalError>,
    rf: Result<RVal, Outcome>,
) -> Result<(), String> {
    match (ev, rf) {
        (Ok(a), Ok(b)) => {
            let (a, b) = (a.to_expr(), readback(&b));
            if a == b {
                Ok(())
            } else {
                Err(format!(
                    "{subject}: evaluator gave {}, reference gave {}",
                    pretty_expr(&a),
                    pretty_expr(&b)
                ))
            }
        }
        (Err(EvalError::OutOfFuel), Err(Outcome::OutOfFuel))
        | (Err(EvalError::Stuck(_)), Err(Outcome::Stuck)) => Ok(()),
        (a, b) => Err(format!(
            "{subject}: evaluator gave {a:?}, reference gave {b:?}"
        )),
    }
}

/// Compares both interpreters on every corpus declaration, alone and applied
/// to sample arguments of a few sizes. Returns the number of comparisons.
pub fn differential_corpus() -> Result<usize, String> {
    let mut n = 0;
    for (file, p) in corpus_programs() {
        for d in &p.declarations {
            let subject = format!("{file}:{}", d.name);
            let mut ev = Evaluator::new(DIFF_FUEL).with_globals(&p);
            let mut rf = RefInterp::new(DIFF_FUEL).with_globals(&p);
            agree(
                &subject,
                ev.eval(&Expr::var(&d.name)),
                rf.eval(&Expr::var(&d.name)),
            )?;
            n += 1;
            for size in 0..=4 {
                let s = gen::samples(&d.ty, &p.signature, size);
                if s.args.is_empty() {
                    break;
                }
                let mut ev = Evaluator::new(DIFF_FUEL)
                    .with_globals(&p)
                    .with_heads(s.heads.clone());
                let mut rf = RefInterp::new(DIFF_FUEL)
                    .with_globals(&p)
                    .with_heads(s.heads.clone());
                let mut a = ev.eval(&Expr::var(&d.name));
                let mut b = rf.eval(&Expr::var(&d.name));
                for arg in &s.args {
                    a = a.and_then(|f| ev.apply(&f, arg));
                    b = b.and_then(|f| rf.apply(f, gen::to_rval(arg)));
                }
                agree(&format!("{subject} at size {size}"), a, b)?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Compares both interpreters on `count` generated closed terms.
pub fn differential_generated(count: usize, seed: u64) -> Result<(), String> {
    let mut g = gen::TermGen::new(StdRng::seed_from_u64(seed));
    for i in 0..count {
        let e = g.closed_term(5);
        let subject = format!("term {i} `{}`", pretty_expr(&e));
        agree(
            &subject,
            lambek::eval::eval(&e, DIFF_FUEL),
            RefInterp::new(DIFF_FUEL).eval(&e),
        )?;
    }
    Ok(())
}
