//! Typechecker, evaluator, logical predicate and free-theorem harness for a
//! polymorphic lambda calculus with ordered, linear and unrestricted
//! disciplines.

pub mod check;
pub mod cli;
pub mod enumerate;
pub mod eval;
pub mod semantics;
pub mod syntax;
pub mod theorems;
pub mod types;
