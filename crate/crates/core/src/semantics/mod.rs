//! Resource algebras, the logical predicate, and fundamental-theorem smoke
//! tests.

mod algebra;
mod predicate;
mod smoke;

use thiserror::Error;

use crate::eval::EvalError;
use crate::types::TypeError;

pub use algebra::{
    AlgebraKind, Element, FreeCommMonoid, FreeMonoid, Generator, ResourceAlgebra, TrivialMonoid,
};
pub use predicate::{
    make_relation_from_type, predicate_env, predicate_value, probe_function, ClosingEnv, Failure,
    HeadRule, Interpretation, Model, ProbeConfig, Prober, Relation,
};
pub use smoke::{fundamental_smoke, fundamental_smoke_decl, fundamental_smoke_with, SmokeVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("membership at `{0}` is not decidable by structural recursion")]
    UnsupportedType(String),
    #[error("type variable `{0}` has no relation")]
    UnboundTypeVariable(String),
    #[error("closing environment does not cover the context: {0}")]
    CoverageMismatch(String),
    #[error("evaluation failed on argument {argument}: {source}")]
    ProbeFailure { argument: String, source: EvalError },
    #[error("no declaration named `{0}`")]
    UnknownDeclaration(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}
