//! Abstract syntax for types, terms, signatures and programs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::check::Mode;

/// Opaque symbol used as a parametric test value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Types.
///
/// Function types store the argument first: `Under(a, b)` is `a \ b` and
/// `Over(a, b)` is `a ->> b`; in both cases `a` is the argument type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Var(String),
    /// Ordered pair whose left component's resources come first.
    Fuse(Box<TypeExpr>, Box<TypeExpr>),
    /// Ordered pair whose right component's resources come first.
    Twist(Box<TypeExpr>, Box<TypeExpr>),
    /// Function taking its argument at the left end of the context.
    Under(Box<TypeExpr>, Box<TypeExpr>),
    /// Function taking its argument at the right end of the context.
    Over(Box<TypeExpr>, Box<TypeExpr>),
    /// Linear function (`-o`).
    Lolli(Box<TypeExpr>, Box<TypeExpr>),
    /// Unrestricted function (`->`).
    UArrow(Box<TypeExpr>, Box<TypeExpr>),
    Sum(BTreeMap<String, TypeExpr>),
    Unit,
    Forall(String, Box<TypeExpr>),
    /// Instantiated type definition; arguments are positional.
    Named(String, Vec<TypeExpr>),
}

impl TypeExpr {
    pub fn var(name: &str) -> Self {
        TypeExpr::Var(name.to_string())
    }
    pub fn fuse(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Fuse(Box::new(a), Box::new(b))
    }
    pub fn twist(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Twist(Box::new(a), Box::new(b))
    }
    pub fn under(arg: TypeExpr, res: TypeExpr) -> Self {
        TypeExpr::Under(Box::new(arg), Box::new(res))
    }
    pub fn over(arg: TypeExpr, res: TypeExpr) -> Self {
        TypeExpr::Over(Box::new(arg), Box::new(res))
    }
    pub fn lolli(arg: TypeExpr, res: TypeExpr) -> Self {
        TypeExpr::Lolli(Box::new(arg), Box::new(res))
    }
    pub fn uarrow(arg: TypeExpr, res: TypeExpr) -> Self {
        TypeExpr::UArrow(Box::new(arg), Box::new(res))
    }
    pub fn forall(var: &str, body: TypeExpr) -> Self {
        TypeExpr::Forall(var.to_string(), Box::new(body))
    }
    pub fn named(name: &str, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Named(name.to_string(), args)
    }
    pub fn sum<I, S>(alts: I) -> Self
    where
        I: IntoIterator<Item = (S, TypeExpr)>,
        S: Into<String>,
    {
        TypeExpr::Sum(alts.into_iter().map(|(l, t)| (l.into(), t)).collect())
    }

    /// Returns the argument kind, argument and result if this is a function type.
    pub fn as_arrow(&self) -> Option<(ArrowKind, &TypeExpr, &TypeExpr)> {
        match self {
            TypeExpr::Under(a, b) => Some((ArrowKind::Under, a, b)),
            TypeExpr::Over(a, b) => Some((ArrowKind::Over, a, b)),
            TypeExpr::Lolli(a, b) => Some((ArrowKind::Lolli, a, b)),
            TypeExpr::UArrow(a, b) => Some((ArrowKind::Unrestricted, a, b)),
            _ => None,
        }
    }
}

/// The four function type constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowKind {
    Under,
    Over,
    Lolli,
    Unrestricted,
}

impl ArrowKind {
    pub fn build(self, arg: TypeExpr, res: TypeExpr) -> TypeExpr {
        match self {
            ArrowKind::Under => TypeExpr::under(arg, res),
            ArrowKind::Over => TypeExpr::over(arg, res),
            ArrowKind::Lolli => TypeExpr::lolli(arg, res),
            ArrowKind::Unrestricted => TypeExpr::uarrow(arg, res),
        }
    }
}

/// Terms. Equality is alpha-equivalence.
#[derive(Clone, Debug)]
pub enum Expr {
    Var(String),
    Lam(String, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    MatchPair {
        scrutinee: Box<Expr>,
        left: String,
        right: String,
        body: Box<Expr>,
    },
    UnitVal,
    MatchUnit {
        scrutinee: Box<Expr>,
        body: Box<Expr>,
    },
    Inj(String, Box<Expr>),
    MatchSum {
        scrutinee: Box<Expr>,
        branches: BTreeMap<String, (String, Expr)>,
    },
    /// Explicit instantiation `e [A]`; erased before evaluation.
    TyInst(Box<Expr>, TypeExpr),
    Atom(AtomId),
}

impl Expr {
    pub fn var(x: &str) -> Self {
        Expr::Var(x.to_string())
    }
    pub fn lam(x: &str, body: Expr) -> Self {
        Expr::Lam(x.to_string(), Box::new(body))
    }
    pub fn app(f: Expr, a: Expr) -> Self {
        Expr::App(Box::new(f), Box::new(a))
    }
    pub fn pair(a: Expr, b: Expr) -> Self {
        Expr::Pair(Box::new(a), Box::new(b))
    }
    pub fn inj(label: &str, e: Expr) -> Self {
        Expr::Inj(label.to_string(), Box::new(e))
    }
    pub fn match_pair(scrutinee: Expr, left: &str, right: &str, body: Expr) -> Self {
        Expr::MatchPair {
            scrutinee: Box::new(scrutinee),
            left: left.to_string(),
            right: right.to_string(),
            body: Box::new(body),
        }
    }
    pub fn match_unit(scrutinee: Expr, body: Expr) -> Self {
        Expr::MatchUnit {
            scrutinee: Box::new(scrutinee),
            body: Box::new(body),
        }
    }
    pub fn match_sum<I>(scrutinee: Expr, branches: I) -> Self
    where
        I: IntoIterator<Item = (&'static str, &'static str, Expr)>,
    {
        Expr::MatchSum {
            scrutinee: Box::new(scrutinee),
            branches: branches
                .into_iter()
                .map(|(l, x, e)| (l.to_string(), (x.to_string(), e)))
                .collect(),
        }
    }
    pub fn ty_inst(e: Expr, ty: TypeExpr) -> Self {
        Expr::TyInst(Box::new(e), ty)
    }

    /// Applies `f` to each argument in turn.
    pub fn apps(f: Expr, args: impl IntoIterator<Item = Expr>) -> Self {
        args.into_iter().fold(f, Expr::app)
    }

    /// Free term variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go<'a>(e: &'a Expr, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
            match e {
                Expr::Var(x) => {
                    if !bound.contains(&x.as_str()) {
                        out.insert(x.clone());
                    }
                }
                Expr::UnitVal | Expr::Atom(_) => {}
                Expr::Lam(x, b) => {
                    bound.push(x);
                    go(b, bound, out);
                    bound.pop();
                }
                Expr::Inj(_, b) | Expr::TyInst(b, _) => go(b, bound, out),
                Expr::App(a, b) | Expr::Pair(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Expr::MatchPair {
                    scrutinee,
                    left,
                    right,
                    body,
                } => {
                    go(scrutinee, bound, out);
                    bound.push(left);
                    bound.push(right);
                    go(body, bound, out);
                    bound.truncate(bound.len() - 2);
                }
                Expr::MatchUnit { scrutinee, body } => {
                    go(scrutinee, bound, out);
                    go(body, bound, out);
                }
                Expr::MatchSum {
                    scrutinee,
                    branches,
                } => {
                    go(scrutinee, bound, out);
                    for (x, b) in branches.values() {
                        bound.push(x);
                        go(b, bound, out);
                        bound.pop();
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => 1,
            Expr::Lam(_, b) | Expr::Inj(_, b) | Expr::TyInst(b, _) => 1 + b.size(),
            Expr::App(a, b) | Expr::Pair(a, b) => 1 + a.size() + b.size(),
            Expr::MatchPair {
                scrutinee, body, ..
            }
            | Expr::MatchUnit { scrutinee, body } => 1 + scrutinee.size() + body.size(),
            Expr::MatchSum {
                scrutinee,
                branches,
            } => 1 + scrutinee.size() + branches.values().map(|(_, e)| e.size()).sum::<usize>(),
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

impl Eq for Expr {}

fn bound_index(env: &[&str], x: &str) -> Option<usize> {
    env.iter().rposition(|y| *y == x)
}

fn alpha_eq<'a>(a: &'a Expr, b: &'a Expr, la: &mut Vec<&'a str>, lb: &mut Vec<&'a str>) -> bool {
    fn under<'a, R>(
        la: &mut Vec<&'a str>,
        lb: &mut Vec<&'a str>,
        xs: &[&'a str],
        ys: &[&'a str],
        k: impl FnOnce(&mut Vec<&'a str>, &mut Vec<&'a str>) -> R,
    ) -> R {
        la.extend_from_slice(xs);
        lb.extend_from_slice(ys);
        let r = k(la, lb);
        la.truncate(la.len() - xs.len());
        lb.truncate(lb.len() - ys.len());
        r
    }
    match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => match (bound_index(la, x), bound_index(lb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Expr::Lam(x, e), Expr::Lam(y, f)) => {
            under(la, lb, &[x.as_str()], &[y.as_str()], |la, lb| {
                alpha_eq(e, f, la, lb)
            })
        }
        (Expr::App(a1, a2), Expr::App(b1, b2)) | (Expr::Pair(a1, a2), Expr::Pair(b1, b2)) => {
            alpha_eq(a1, b1, la, lb) && alpha_eq(a2, b2, la, lb)
        }
        (
            Expr::MatchPair {
                scrutinee: s1,
                left: x1,
                right: y1,
                body: e1,
            },
            Expr::MatchPair {
                scrutinee: s2,
                left: x2,
                right: y2,
                body: e2,
            },
        ) => {
            alpha_eq(s1, s2, la, lb)
                && under(
                    la,
                    lb,
                    &[x1.as_str(), y1.as_str()],
                    &[x2.as_str(), y2.as_str()],
                    |la, lb| alpha_eq(e1, e2, la, lb),
                )
        }
        (Expr::UnitVal, Expr::UnitVal) => true,
        (
            Expr::MatchUnit {
                scrutinee: s1,
                body: e1,
            },
            Expr::MatchUnit {
                scrutinee: s2,
                body: e2,
            },
        ) => alpha_eq(s1, s2, la, lb) && alpha_eq(e1, e2, la, lb),
        (Expr::Inj(l1, e1), Expr::Inj(l2, e2)) => l1 == l2 && alpha_eq(e1, e2, la, lb),
        (
            Expr::MatchSum {
                scrutinee: s1,
                branches: b1,
            },
            Expr::MatchSum {
                scrutinee: s2,
                branches: b2,
            },
        ) => {
            alpha_eq(s1, s2, la, lb)
                && b1.len() == b2.len()
                && b1
                    .iter()
                    .zip(b2.iter())
                    .all(|((l1, (x1, e1)), (l2, (x2, e2)))| {
                        l1 == l2
                            && under(la, lb, &[x1.as_str()], &[x2.as_str()], |la, lb| {
                                alpha_eq(e1, e2, la, lb)
                            })
                    })
        }
        (Expr::TyInst(e1, t1), Expr::TyInst(e2, t2)) => t1 == t2 && alpha_eq(e1, e2, la, lb),
        (Expr::Atom(a), Expr::Atom(b)) => a == b,
        _ => false,
    }
}

/// One equirecursive type definition `name[params] = body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDef {
    pub name: String,
    pub params: Vec<String>,
    pub body: TypeExpr,
}

/// An ordered collection of type definitions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    defs: Vec<TypeDef>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a definition without validating it; see [`crate::types::validate_signature`].
    pub fn push(&mut self, def: TypeDef) {
        self.defs.push(def);
    }

    pub fn get(&self, name: &str) -> Option<&TypeDef> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn defs(&self) -> &[TypeDef] {
        &self.defs
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }
}

/// A top-level `def` or `rec def`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    /// Discipline requested by an `@mode` pragma, if any.
    pub mode: Option<Mode>,
    pub ty: TypeExpr,
    pub recursive: bool,
    pub body: Expr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub signature: Signature,
    pub declarations: Vec<Declaration>,
}

impl Program {
    pub fn declaration(&self, name: &str) -> Option<&Declaration> {
        self.declarations.iter().find(|d| d.name == name)
    }
}
