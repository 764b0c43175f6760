//! Executable instances of the fundamental theorem: a well-typed closed term
//! is checked to lie in the predicate at its type.

use serde::Serialize;

use super::algebra::{AlgebraKind, Element};
use super::predicate::{Failure, Interpretation, Model, ProbeConfig, Prober};
use super::SemanticsError;
use crate::check::{check_expr, check_program, Mode};
use crate::eval::{erase, Evaluator};
use crate::syntax::{Expr, Program, Signature, TypeExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SmokeVerdict {
    /// Every probe landed in the predicate.
    Holds {
        applications: usize,
    },
    Fails {
        failure: Failure,
    },
    /// The term does not typecheck, so there is nothing to test.
    Vacuous {
        reason: String,
    },
}

impl SmokeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SmokeVerdict::Holds { .. })
    }
}

pub fn fundamental_smoke(
    e: &Expr,
    ty: &TypeExpr,
    mode: Mode,
    sig: &Signature,
) -> Result<SmokeVerdict, SemanticsError> {
    fundamental_smoke_with(e, ty, mode, sig, &ProbeConfig::default())
}

pub fn fundamental_smoke_with(
    e: &Expr,
    ty: &TypeExpr,
    mode: Mode,
    sig: &Signature,
    config: &ProbeConfig,
) -> Result<SmokeVerdict, SemanticsError> {
    let verdict = check_expr(&[], &[], &[], e, ty, mode, sig);
    if !verdict.accepted {
        return Ok(SmokeVerdict::Vacuous {
            reason: first_reason(&verdict.diagnostics),
        });
    }
    let ev = Evaluator::new(config.fuel);
    run(ev, &erase(e), ty, mode, sig, config)
}

/// Smoke test for one declaration of `p`, in its own `@mode` if it has one.
pub fn fundamental_smoke_decl(
    p: &Program,
    name: &str,
    mode: Mode,
    config: &ProbeConfig,
) -> Result<SmokeVerdict, SemanticsError> {
    let decl = p
        .declaration(name)
        .ok_or_else(|| SemanticsError::UnknownDeclaration(name.to_string()))?;
    let verdicts = check_program(p, mode);
    let v = verdicts
        .iter()
        .find(|v| v.name == name)
        .expect("one verdict per declaration");
    if !v.verdict.accepted {
        return Ok(SmokeVerdict::Vacuous {
            reason: first_reason(&v.verdict.diagnostics),
        });
    }
    let ev = Evaluator::new(config.fuel).with_globals(p);
    run(ev, &Expr::var(name), &decl.ty, v.mode, &p.signature, config)
}

fn first_reason(ds: &[crate::check::Diagnostic]) -> String {
    ds.first()
        .map_or_else(|| "rejected".to_string(), |d| d.to_string())
}

fn run(
    mut ev: Evaluator,
    e: &Expr,
    ty: &TypeExpr,
    mode: Mode,
    sig: &Signature,
    config: &ProbeConfig,
) -> Result<SmokeVerdict, SemanticsError> {
    let v = ev.eval(e).map_err(|source| SemanticsError::ProbeFailure {
        argument: "()".into(),
        source,
    })?;
    let alg = config
        .algebra
        .unwrap_or_else(|| AlgebraKind::for_mode(mode))
        .algebra();
    let mut prober = Prober::new(
        Model::new(sig, alg, Interpretation::new()),
        ev,
        config.clone(),
    );
    let verdict = match prober.member(&Element::epsilon(), &v, ty)? {
        None => SmokeVerdict::Holds {
            applications: prober.applications(),
        },
        Some(failure) => SmokeVerdict::Fails { failure },
    };
    Ok(verdict)
}
