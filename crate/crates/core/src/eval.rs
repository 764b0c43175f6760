//! Call-by-value big-step evaluation by substitution, with fuel.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{pretty_expr, AtomId, Expr, Program};
use crate::types::fresh_name;

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Nesting limit for non-tail evaluation, so that runaway recursion reports
/// an error instead of overflowing the native stack.
pub const DEFAULT_MAX_DEPTH: usize = 10_000;

const EVAL_STACK_BYTES: usize = 256 << 20;

#[derive(Clone, Debug)]
pub enum Value {
    Closure(String, Expr),
    VPair(Box<Value>, Box<Value>),
    VUnit,
    VInj(String, Box<Value>),
    Atom(AtomId),
    /// Result of applying a symbolic function head.
    SymApp(AtomId, Vec<Value>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Self {
        Value::VPair(Box::new(a), Box::new(b))
    }

    pub fn inj(label: &str, v: Value) -> Self {
        Value::VInj(label.to_string(), Box::new(v))
    }

    /// Embeds the value into the term language.
    pub fn to_expr(&self) -> Expr {
        match self {
            Value::Closure(x, body) => Expr::Lam(x.clone(), Box::new(body.clone())),
            Value::VPair(a, b) => Expr::pair(a.to_expr(), b.to_expr()),
            Value::VUnit => Expr::UnitVal,
            Value::VInj(l, v) => Expr::inj(l, v.to_expr()),
            Value::Atom(a) => Expr::Atom(*a),
            Value::SymApp(h, args) => Expr::apps(Expr::Atom(*h), args.iter().map(Value::to_expr)),
        }
    }

    /// Atoms occurring in the value, in left-to-right order, including
    /// symbolic heads.
    pub fn atoms(&self) -> Vec<AtomId> {
        fn go(v: &Value, out: &mut Vec<AtomId>) {
            match v {
                Value::Atom(a) => out.push(*a),
                Value::SymApp(h, args) => {
                    out.push(*h);
                    args.iter().for_each(|a| go(a, out));
                }
                Value::VPair(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Value::VInj(_, v) => go(v, out),
                Value::VUnit | Value::Closure(..) => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Closure(x, b), Value::Closure(y, c)) => {
                Expr::Lam(x.clone(), Box::new(b.clone()))
                    == Expr::Lam(y.clone(), Box::new(c.clone()))
            }
            (Value::VPair(a1, b1), Value::VPair(a2, b2)) => a1 == a2 && b1 == b2,
            (Value::VUnit, Value::VUnit) => true,
            (Value::VInj(l1, v1), Value::VInj(l2, v2)) => l1 == l2 && v1 == v2,
            (Value::Atom(a), Value::Atom(b)) => a == b,
            (Value::SymApp(h1, a1), Value::SymApp(h2, a2)) => h1 == h2 && a1 == a2,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::SymApp(h, args) => {
                write!(f, "{h}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Value::VPair(a, b) => write!(f, "({a}, {b})"),
            Value::VInj(l, v) => match &**v {
                Value::VUnit => write!(f, "{l}()"),
                Value::VPair(a, b) => write!(f, "{l}({a}, {b})"),
                v => write!(f, "{l}({v})"),
            },
            other => f.write_str(&pretty_expr(&other.to_expr())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("out of fuel")]
    OutOfFuel,
    #[error("evaluation nested more than {0} levels deep")]
    DepthExceeded(usize),
    #[error("stuck: {0}")]
    Stuck(String),
}

/// Removes type instantiations.
pub fn erase(e: &Expr) -> Expr {
    match e {
        Expr::TyInst(b, _) => erase(b),
        Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => e.clone(),
        Expr::Lam(x, b) => Expr::Lam(x.clone(), Box::new(erase(b))),
        Expr::App(a, b) => Expr::app(erase(a), erase(b)),
        Expr::Pair(a, b) => Expr::pair(erase(a), erase(b)),
        Expr::Inj(l, b) => Expr::Inj(l.clone(), Box::new(erase(b))),
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } => Expr::MatchPair {
            scrutinee: Box::new(erase(scrutinee)),
            left: left.clone(),
            right: right.clone(),
            body: Box::new(erase(body)),
        },
        Expr::MatchUnit { scrutinee, body } => Expr::match_unit(erase(scrutinee), erase(body)),
        Expr::MatchSum {
            scrutinee,
            branches,
        } => Expr::MatchSum {
            scrutinee: Box::new(erase(scrutinee)),
            branches: branches
                .iter()
                .map(|(l, (x, b))| (l.clone(), (x.clone(), erase(b))))
                .collect(),
        },
    }
}

/// `[v/x]e`. Values are closed up to global names, and binders never
/// coincide with global names (see [`Evaluator::with_globals`]), so no
/// capture can occur; only shadowing needs care.
pub fn subst(v: &Value, x: &str, e: &Expr) -> Expr {
    subst_expr(&v.to_expr(), x, e)
}

fn subst_expr(v: &Expr, x: &str, e: &Expr) -> Expr {
    match e {
        Expr::Var(y) if y == x => v.clone(),
        Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => e.clone(),
        Expr::Lam(y, _) if y == x => e.clone(),
        Expr::Lam(y, b) => Expr::Lam(y.clone(), Box::new(subst_expr(v, x, b))),
        Expr::App(a, b) => Expr::app(subst_expr(v, x, a), subst_expr(v, x, b)),
        Expr::Pair(a, b) => Expr::pair(subst_expr(v, x, a), subst_expr(v, x, b)),
        Expr::Inj(l, b) => Expr::Inj(l.clone(), Box::new(subst_expr(v, x, b))),
        Expr::TyInst(b, t) => Expr::TyInst(Box::new(subst_expr(v, x, b)), t.clone()),
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } => Expr::MatchPair {
            scrutinee: Box::new(subst_expr(v, x, scrutinee)),
            left: left.clone(),
            right: right.clone(),
            body: Box::new(if left == x || right == x {
                (**body).clone()
            } else {
                subst_expr(v, x, body)
            }),
        },
        Expr::MatchUnit { scrutinee, body } => {
            Expr::match_unit(subst_expr(v, x, scrutinee), subst_expr(v, x, body))
        }
        Expr::MatchSum {
            scrutinee,
            branches,
        } => Expr::MatchSum {
            scrutinee: Box::new(subst_expr(v, x, scrutinee)),
            branches: branches
                .iter()
                .map(|(l, (y, b))| {
                    let b = if y == x {
                        b.clone()
                    } else {
                        subst_expr(v, x, b)
                    };
                    (l.clone(), (y.clone(), b))
                })
                .collect(),
        },
    }
}

/// Renames binders that coincide with any name in `avoid`.
pub fn rename_binders(e: &Expr, avoid: &BTreeSet<String>) -> Expr {
    fn pick(x: &str, avoid: &BTreeSet<String>, env: &mut Vec<(String, String)>) -> String {
        let n = if avoid.contains(x) {
            fresh_name(x, &|n: &str| avoid.contains(n))
        } else {
            x.to_string()
        };
        env.push((x.to_string(), n.clone()));
        n
    }
    fn go(e: &Expr, avoid: &BTreeSet<String>, env: &mut Vec<(String, String)>) -> Expr {
        match e {
            Expr::Var(x) => Expr::Var(
                env.iter()
                    .rev()
                    .find(|(o, _)| o == x)
                    .map(|(_, n)| n.clone())
                    .unwrap_or_else(|| x.clone()),
            ),
            Expr::UnitVal | Expr::Atom(_) => e.clone(),
            Expr::Lam(x, b) => {
                let n = pick(x, avoid, env);
                let b = go(b, avoid, env);
                env.pop();
                Expr::Lam(n, Box::new(b))
            }
            Expr::App(a, b) => Expr::app(go(a, avoid, env), go(b, avoid, env)),
            Expr::Pair(a, b) => Expr::pair(go(a, avoid, env), go(b, avoid, env)),
            Expr::Inj(l, b) => Expr::Inj(l.clone(), Box::new(go(b, avoid, env))),
            Expr::TyInst(b, t) => Expr::TyInst(Box::new(go(b, avoid, env)), t.clone()),
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body,
            } => {
                let s = go(scrutinee, avoid, env);
                let l = pick(left, avoid, env);
                let r = pick(right, avoid, env);
                let b = go(body, avoid, env);
                env.truncate(env.len() - 2);
                Expr::MatchPair {
                    scrutinee: Box::new(s),
                    left: l,
                    right: r,
                    body: Box::new(b),
                }
            }
            Expr::MatchUnit { scrutinee, body } => {
                Expr::match_unit(go(scrutinee, avoid, env), go(body, avoid, env))
            }
            Expr::MatchSum {
                scrutinee,
                branches,
            } => {
                let s = go(scrutinee, avoid, env);
                let branches = branches
                    .iter()
                    .map(|(l, (x, b))| {
                        let n = pick(x, avoid, env);
                        let b = go(b, avoid, env);
                        env.pop();
                        (l.clone(), (n, b))
                    })
                    .collect();
                Expr::MatchSum {
                    scrutinee: Box::new(s),
                    branches,
                }
            }
        }
    }
    go(e, avoid, &mut Vec::new())
}

/// Evaluates a closed, erased term with no symbolic heads and no globals.
pub fn eval(e: &Expr, fuel: u64) -> Result<Value, EvalError> {
    Evaluator::new(fuel).eval(e)
}

/// Evaluation state: remaining fuel, registered symbolic heads, and global
/// definitions available by name.
#[derive(Clone, Debug)]
pub struct Evaluator {
    fuel: u64,
    max_depth: usize,
    depth: usize,
    heads: HashSet<AtomId>,
    globals: HashMap<String, Expr>,
    global_names: BTreeSet<String>,
}

impl Evaluator {
    pub fn new(fuel: u64) -> Self {
        Evaluator {
            fuel,
            max_depth: DEFAULT_MAX_DEPTH,
            depth: 0,
            heads: HashSet::new(),
            globals: HashMap::new(),
            global_names: BTreeSet::new(),
        }
    }

    /// Makes every declaration of `p` available by name, with types erased.
    pub fn with_globals(mut self, p: &Program) -> Self {
        self.global_names = p.declarations.iter().map(|d| d.name.clone()).collect();
        for d in &p.declarations {
            let body = rename_binders(&erase(&d.body), &self.global_names);
            self.globals.insert(d.name.clone(), body);
        }
        self
    }

    /// Registers atoms that act as uninterpreted functions when applied.
    pub fn with_heads(mut self, heads: impl IntoIterator<Item = AtomId>) -> Self {
        self.heads.extend(heads);
        self
    }

    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn register_head(&mut self, head: AtomId) {
        self.heads.insert(head);
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn refuel(&mut self, fuel: u64) {
        self.fuel = fuel;
    }

    /// Applies a value to an argument.
    pub fn apply(&mut self, f: &Value, arg: &Value) -> Result<Value, EvalError> {
        self.eval(&Expr::app(f.to_expr(), arg.to_expr()))
    }

    /// Evaluates `e`, which may mention global names but no other free
    /// variables.
    pub fn eval(&mut self, e: &Expr) -> Result<Value, EvalError> {
        let e = if self.global_names.is_empty() {
            e.clone()
        } else {
            rename_binders(e, &self.global_names)
        };
        if self.depth > 0 {
            return self.eval_in(&e);
        }
        // Nested evaluation recurses natively; run it on a thread with a
        // stack large enough for `max_depth` levels.
        std::thread::scope(|s| {
            std::thread::Builder::new()
                .stack_size(EVAL_STACK_BYTES)
                .spawn_scoped(s, || self.eval_in(&e))
                .expect("spawn evaluator thread")
                .join()
                .expect("evaluator thread panicked")
        })
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        if self.fuel == 0 {
            return Err(EvalError::OutOfFuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn eval_in(&mut self, e: &Expr) -> Result<Value, EvalError> {
        if self.depth >= self.max_depth {
            return Err(EvalError::DepthExceeded(self.max_depth));
        }
        self.depth += 1;
        let r = self.eval_loop(e);
        self.depth -= 1;
        r
    }

    fn eval_loop(&mut self, e: &Expr) -> Result<Value, EvalError> {
        let mut cur = e.clone();
        loop {
            match cur {
                Expr::Lam(x, body) => return Ok(Value::Closure(x, *body)),
                Expr::UnitVal => return Ok(Value::VUnit),
                Expr::Atom(a) => return Ok(Value::Atom(a)),
                Expr::Var(x) => {
                    let Some(body) = self.globals.get(&x).cloned() else {
                        return Err(EvalError::Stuck(format!("unbound variable `{x}`")));
                    };
                    cur = body;
                }
                Expr::Pair(a, b) => {
                    let va = self.eval_in(&a)?;
                    let vb = self.eval_in(&b)?;
                    return Ok(Value::pair(va, vb));
                }
                Expr::Inj(l, b) => {
                    let v = self.eval_in(&b)?;
                    return Ok(Value::VInj(l, Box::new(v)));
                }
                Expr::App(f, a) => {
                    self.tick()?;
                    let vf = self.eval_in(&f)?;
                    let va = self.eval_in(&a)?;
                    match vf {
                        Value::Closure(x, body) => cur = subst(&va, &x, &body),
                        Value::Atom(h) if self.heads.contains(&h) => {
                            return Ok(Value::SymApp(h, vec![va]))
                        }
                        Value::SymApp(h, mut args) => {
                            args.push(va);
                            return Ok(Value::SymApp(h, args));
                        }
                        other => {
                            return Err(EvalError::Stuck(format!(
                                "cannot apply non-function value {other}"
                            )))
                        }
                    }
                }
                Expr::MatchPair {
                    scrutinee,
                    left,
                    right,
                    body,
                } => {
                    self.tick()?;
                    match self.eval_in(&scrutinee)? {
                        Value::VPair(v1, v2) => {
                            let b = subst(&v1, &left, &body);
                            cur = subst(&v2, &right, &b);
                        }
                        other => return Err(EvalError::Stuck(format!("pair match on {other}"))),
                    }
                }
                Expr::MatchUnit { scrutinee, body } => {
                    self.tick()?;
                    match self.eval_in(&scrutinee)? {
                        Value::VUnit => cur = *body,
                        other => return Err(EvalError::Stuck(format!("unit match on {other}"))),
                    }
                }
                Expr::MatchSum {
                    scrutinee,
                    mut branches,
                } => {
                    self.tick()?;
                    match self.eval_in(&scrutinee)? {
                        Value::VInj(l, v) => match branches.remove(&l) {
                            Some((x, b)) => cur = subst(&v, &x, &b),
                            None => {
                                return Err(EvalError::Stuck(format!("no branch for label `{l}`")))
                            }
                        },
                        other => return Err(EvalError::Stuck(format!("sum match on {other}"))),
                    }
                }
                Expr::TyInst(..) => {
                    return Err(EvalError::Stuck(
                        "type instantiation reached the evaluator".into(),
                    ))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_expr, parse_program};

    fn a(n: u32) -> Value {
        Value::Atom(AtomId(n))
    }

    #[test]
    fn identity_on_unit() {
        assert_eq!(
            eval(&parse_expr("(\\x. x) ()").unwrap(), 100),
            Ok(Value::VUnit)
        );
    }

    #[test]
    fn pair_match_swaps() {
        let e = parse_expr("match (#1, #2) ((x, y) => (y, x))").unwrap();
        assert_eq!(eval(&e, 100), Ok(Value::pair(a(2), a(1))));
    }

    #[test]
    fn omega_runs_out_of_fuel() {
        let e = parse_expr("(\\x. x x) (\\x. x x)").unwrap();
        assert_eq!(eval(&e, 1000), Err(EvalError::OutOfFuel));
    }

    #[test]
    fn deep_recursion_is_reported() {
        let p = parse_program("rec def f : 1 ->> 1 = \\x. match (f x) (() => ())").unwrap();
        let mut ev = Evaluator::new(DEFAULT_FUEL).with_globals(&p);
        let r = ev.eval(&parse_expr_globals("f ()", &["f"]));
        assert!(matches!(r, Err(EvalError::DepthExceeded(_))), "{r:?}");
    }

    fn parse_expr_globals(s: &str, globals: &[&str]) -> Expr {
        crate::syntax::parse_expr_in(s, &Default::default(), globals).unwrap()
    }

    #[test]
    fn append_two_singletons() {
        let p = parse_program(
            "type llist[a] = +{nil : 1, cons : a * llist[a]}\n\
             rec def append : all a. llist a ->> llist a ->> llist a =\n\
               \\xs. \\ys. match xs {nil(u) => match u (() => ys),\n\
                                   cons(p) => match p ((x, xs1) => cons(x, append [a] xs1 ys))}",
        )
        .unwrap();
        let mut ev = Evaluator::new(DEFAULT_FUEL).with_globals(&p);
        let e = parse_expr_globals("append (cons(#1, nil())) (cons(#2, nil()))", &["append"]);
        let nil = Value::inj("nil", Value::VUnit);
        let expected = Value::inj(
            "cons",
            Value::pair(a(1), Value::inj("cons", Value::pair(a(2), nil))),
        );
        assert_eq!(ev.eval(&e), Ok(expected));
    }

    #[test]
    fn subst_respects_shadowing() {
        let e = parse_expr("\\x. x").unwrap();
        assert_eq!(subst(&a(1), "x", &e), e);
        assert_eq!(subst(&Value::VUnit, "x", &Expr::var("x")), Expr::UnitVal);
    }

    #[test]
    fn subst_into_match() {
        let body =
            crate::syntax::parse_expr_in("match x ((p, q) => (q, p))", &Default::default(), &["x"])
                .unwrap();
        let got = subst(&Value::pair(a(1), a(2)), "x", &body);
        assert_eq!(
            got,
            parse_expr("match (#1, #2) ((p, q) => (q, p))").unwrap()
        );
    }

    #[test]
    fn symbolic_heads_accumulate_arguments() {
        let e = parse_expr("#9 #1 (#2, ())").unwrap();
        let v = Evaluator::new(100)
            .with_heads([AtomId(9)])
            .eval(&e)
            .unwrap();
        assert_eq!(
            v,
            Value::SymApp(AtomId(9), vec![a(1), Value::pair(a(2), Value::VUnit)])
        );
        assert!(matches!(eval(&e, 100), Err(EvalError::Stuck(_))));
    }

    #[test]
    fn values_evaluate_to_themselves() {
        let vals = [
            Value::VUnit,
            Value::inj("l", Value::pair(a(1), Value::VUnit)),
            Value::Closure("x".into(), Expr::var("x")),
            Value::SymApp(AtomId(7), vec![a(1), a(2)]),
        ];
        for v in vals {
            let got = Evaluator::new(100)
                .with_heads([AtomId(7)])
                .eval(&v.to_expr())
                .unwrap();
            assert_eq!(got, v);
        }
    }

    #[test]
    fn wrong_shape_is_stuck() {
        let e = parse_expr("match () ((x, y) => x)").unwrap();
        assert!(matches!(eval(&e, 100), Err(EvalError::Stuck(_))));
    }

    #[test]
    fn locals_named_like_globals_do_not_capture() {
        let p = parse_program(
            "def k : all a. a -> 1 -> a = \\x. \\y. match y (() => x)\ndef g : 1 -> 1 = \\k. k",
        )
        .unwrap();
        let mut ev = Evaluator::new(100).with_globals(&p);
        let e = parse_expr_globals("(\\k. k) (k ())", &["k", "g"]);
        assert!(matches!(ev.eval(&e), Ok(Value::Closure(..))));
    }
}
