//! Surface syntax: AST, lexer, parser and pretty-printer.

pub mod ast;
mod lexer;
mod parser;
mod pretty;

use std::fmt;

use thiserror::Error;

pub use ast::{ArrowKind, AtomId, Declaration, Expr, Program, Signature, TypeDef, TypeExpr};
pub use parser::{parse_expr, parse_expr_in, parse_program, parse_type, parse_type_in};
pub use pretty::{pretty_expr, pretty_program, pretty_type};

use crate::types::TypeError;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("`{0}` is defined more than once")]
    DuplicateDefinition(String),
    #[error("unknown type name `{0}`")]
    UnknownTypeName(String),
    #[error("type `{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("definition of `{0}` is not contractive")]
    NonContractive(String),
    #[error("definition of `{0}` is not purely positive")]
    NotPurelyPositive(String),
    #[error("unbound type variable `{var}` in definition of `{def}`")]
    UnboundTypeVariable { def: String, var: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("label `{0}` appears more than once")]
    DuplicateLabel(String),
}

impl ParseErrorKind {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax(_) => "syntax",
            ParseErrorKind::DuplicateDefinition(_) => "duplicate_definition",
            ParseErrorKind::UnknownTypeName(_) => "unknown_type_name",
            ParseErrorKind::ArityMismatch { .. } => "arity_mismatch",
            ParseErrorKind::NonContractive(_) => "non_contractive",
            ParseErrorKind::NotPurelyPositive(_) => "not_purely_positive",
            ParseErrorKind::UnboundTypeVariable { .. } => "unbound_type_variable",
            ParseErrorKind::UnboundVariable(_) => "unbound_variable",
            ParseErrorKind::DuplicateLabel(_) => "duplicate_label",
        }
    }
}

impl From<TypeError> for ParseErrorKind {
    fn from(e: TypeError) -> Self {
        match e {
            TypeError::UnknownTypeName(n) => ParseErrorKind::UnknownTypeName(n),
            TypeError::ArityMismatch {
                name,
                expected,
                found,
            } => ParseErrorKind::ArityMismatch {
                name,
                expected,
                found,
            },
            TypeError::NonContractive(n) => ParseErrorKind::NonContractive(n),
            TypeError::NotPurelyPositive(n) => ParseErrorKind::NotPurelyPositive(n),
            TypeError::UnboundTypeVariable { def, var } => {
                ParseErrorKind::UnboundTypeVariable { def, var }
            }
            TypeError::EmptySum => ParseErrorKind::Syntax("empty sum type".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Pos,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, pos: Pos) -> Self {
        ParseError { kind, pos }
    }
}
