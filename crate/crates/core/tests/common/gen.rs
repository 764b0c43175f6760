//! Random well-typed closed terms over a small simple type language, and
//! sample arguments for corpus declarations.

use lambek::eval::Value;
use lambek::syntax::{AtomId, Expr, Signature, TypeExpr};
use lambek::types::unfold;
use rand::rngs::StdRng;
use rand::Rng;

use super::refinterp::RVal;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    Base,
    Unit,
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    Arr(Box<Ty>, Box<Ty>),
}

/// Small binder pool so that shadowing is common.
const NAMES: [&str; 3] = ["x", "y", "z"];

pub struct TermGen {
    rng: StdRng,
    next_atom: u32,
}

impl TermGen {
    pub fn new(rng: StdRng) -> Self {
        TermGen { rng, next_atom: 1 }
    }

    fn ty(&mut self, depth: u32) -> Ty {
        let pick = if depth == 0 {
            self.rng.gen_range(0..2)
        } else {
            self.rng.gen_range(0..5)
        };
        match pick {
            0 => Ty::Base,
            1 => Ty::Unit,
            2 => Ty::Prod(Box::new(self.ty(depth - 1)), Box::new(self.ty(depth - 1))),
            3 => Ty::Sum(Box::new(self.ty(depth - 1)), Box::new(self.ty(depth - 1))),
            _ => Ty::Arr(Box::new(self.ty(depth - 1)), Box::new(self.ty(depth - 1))),
        }
    }

    fn name(&mut self) -> String {
        NAMES[self.rng.gen_range(0..NAMES.len())].to_string()
    }

    /// A closed, well-typed term of a random type.
    pub fn closed_term(&mut self, depth: u32) -> Expr {
        let ty = self.ty(2);
        self.term(&ty, &mut Vec::new(), depth)
    }

    fn visible<'s>(scope: &'s [(String, Ty)], ty: &Ty) -> Vec<&'s String> {
        let mut seen: Vec<&String> = Vec::new();
        let mut out = Vec::new();
        for (x, t) in scope.iter().rev() {
            if seen.contains(&x) {
                continue;
            }
            seen.push(x);
            if t == ty {
                out.push(x);
            }
        }
        out
    }

    fn intro(&mut self, ty: &Ty, scope: &mut Vec<(String, Ty)>, depth: u32) -> Expr {
        match ty {
            Ty::Base => {
                let vars = Self::visible(scope, ty);
                if !vars.is_empty() && self.rng.gen_bool(0.7) {
                    Expr::var(vars[self.rng.gen_range(0..vars.len())])
                } else {
                    self.next_atom += 1;
                    Expr::Atom(AtomId(self.next_atom))
                }
            }
            Ty::Unit => Expr::UnitVal,
            Ty::Prod(a, b) => Expr::pair(self.term(a, scope, depth), self.term(b, scope, depth)),
            Ty::Sum(a, b) => {
                if self.rng.gen_bool(0.5) {
                    Expr::inj("l", self.term(a, scope, depth))
                } else {
                    Expr::inj("r", self.term(b, scope, depth))
                }
            }
            Ty::Arr(a, b) => {
                let x = self.name();
                scope.push((x.clone(), (**a).clone()));
                let body = self.term(b, scope, depth);
                scope.pop();
                Expr::lam(&x, body)
            }
        }
    }

    fn term(&mut self, ty: &Ty, scope: &mut Vec<(String, Ty)>, depth: u32) -> Expr {
        if depth == 0 {
            return self.intro(ty, scope, 0);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0..=3 => self.intro(ty, scope, d),
            4 => {
                let vars = Self::visible(scope, ty);
                if vars.is_empty() {
                    self.intro(ty, scope, d)
                } else {
                    Expr::var(vars[self.rng.gen_range(0..vars.len())])
                }
            }
            5 | 6 => {
                let a = self.ty(1);
                let f = self.term(
                    &Ty::Arr(Box::new(a.clone()), Box::new(ty.clone())),
                    scope,
                    d,
                );
                Expr::app(f, self.term(&a, scope, d))
            }
            7 => {
                let (a, b) = (self.ty(1), self.ty(1));
                let s = self.term(
                    &Ty::Prod(Box::new(a.clone()), Box::new(b.clone())),
                    scope,
                    d,
                );
                // Patterns never bind one name twice; the parser rejects it.
                let x = self.name();
                let y = loop {
                    let y = self.name();
                    if y != x {
                        break y;
                    }
                };
                scope.push((x.clone(), a));
                scope.push((y.clone(), b));
                let body = self.term(ty, scope, d);
                scope.truncate(scope.len() - 2);
                Expr::match_pair(s, &x, &y, body)
            }
            8 => {
                let s = self.term(&Ty::Unit, scope, d);
                Expr::match_unit(s, self.term(ty, scope, d))
            }
            _ => {
                let (a, b) = (self.ty(1), self.ty(1));
                let s = self.term(&Ty::Sum(Box::new(a.clone()), Box::new(b.clone())), scope, d);
                let mut branches = Vec::new();
                for (l, t) in [("l", a), ("r", b)] {
                    let x = self.name();
                    scope.push((x.clone(), t));
                    branches.push((l.to_string(), x, self.term(ty, scope, d)));
                    scope.pop();
                }
                Expr::MatchSum {
                    scrutinee: Box::new(s),
                    branches: branches.into_iter().map(|(l, x, b)| (l, (x, b))).collect(),
                }
            }
        }
    }
}

/// Values to feed a declaration: one per parameter of its arrow chain.
/// Type variables get atoms; function parameters get symbolic heads.
pub struct Samples {
    pub args: Vec<Value>,
    pub heads: Vec<AtomId>,
    next: u32,
}

pub fn samples(ty: &TypeExpr, sig: &Signature, size: usize) -> Samples {
    let mut s = Samples {
        args: Vec::new(),
        heads: Vec::new(),
        next: 100,
    };
    let mut cur = ty;
    while let TypeExpr::Forall(_, b) = cur {
        cur = b;
    }
    while let Some((_, a, b)) = cur.as_arrow() {
        let v = sample(a, sig, size, &mut s);
        s.args.push(v);
        cur = b;
    }
    s
}

fn sample(ty: &TypeExpr, sig: &Signature, size: usize, s: &mut Samples) -> Value {
    match ty {
        TypeExpr::Var(_) => {
            s.next += 1;
            Value::Atom(AtomId(s.next))
        }
        TypeExpr::Unit => Value::VUnit,
        TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
            let half = size / 2;
            Value::pair(sample(a, sig, half, s), sample(b, sig, size - half, s))
        }
        TypeExpr::Named(n, args) => {
            let body = unfold(n, args, sig).expect("corpus types unfold");
            sample(&body, sig, size, s)
        }
        TypeExpr::Sum(alts) => {
            // The unit alternative ends the structure once the size is spent.
            let (l, t) = alts
                .iter()
                .find(|(_, t)| (size == 0) == (**t == TypeExpr::Unit))
                .unwrap_or_else(|| alts.iter().next().expect("non-empty sum"));
            let inner = if size == 0 { 0 } else { size - 1 };
            Value::inj(l, sample(t, sig, inner, s))
        }
        TypeExpr::Forall(_, b) => sample(b, sig, size, s),
        _ => {
            s.next += 1;
            s.heads.push(AtomId(s.next));
            Value::Atom(AtomId(s.next))
        }
    }
}

pub fn to_rval(v: &Value) -> RVal {
    use std::rc::Rc;
    match v {
        Value::VPair(a, b) => RVal::Pair(Rc::new(to_rval(a)), Rc::new(to_rval(b))),
        Value::VUnit => RVal::Unit,
        Value::VInj(l, b) => RVal::Inj(l.clone(), Rc::new(to_rval(b))),
        Value::Atom(a) => RVal::Atom(*a),
        Value::SymApp(h, args) => RVal::Sym(*h, args.iter().map(to_rval).collect()),
        Value::Closure(..) => panic!("samples are first-order"),
    }
}
