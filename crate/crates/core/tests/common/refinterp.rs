//! Environment-based big-step interpreter used as an oracle for the
//! substitution evaluator. Closures capture their environment; nothing is
//! ever substituted during evaluation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use lambek::syntax::{AtomId, Expr, Program};

#[derive(Clone, Debug)]
pub enum RVal {
    Closure(Env, String, Rc<Expr>),
    Pair(Rc<RVal>, Rc<RVal>),
    Unit,
    Inj(String, Rc<RVal>),
    Atom(AtomId),
    Sym(AtomId, Vec<RVal>),
}

/// Persistent association list; the newest binding wins.
#[derive(Clone, Debug, Default)]
pub struct Env(Option<Rc<(String, RVal, Env)>>);

impl Env {
    fn bind(&self, x: &str, v: RVal) -> Env {
        Env(Some(Rc::new((x.to_string(), v, self.clone()))))
    }

    fn lookup(&self, x: &str) -> Option<&RVal> {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if node.0 == x {
                return Some(&node.1);
            }
            cur = &node.2;
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    OutOfFuel,
    Stuck,
}

pub struct RefInterp {
    fuel: u64,
    heads: HashSet<AtomId>,
    globals: HashMap<String, Expr>,
}

fn erase(e: &Expr) -> Expr {
    match e {
        Expr::TyInst(b, _) => erase(b),
        Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => e.clone(),
        Expr::Lam(x, b) => Expr::Lam(x.clone(), Box::new(erase(b))),
        Expr::App(f, a) => Expr::app(erase(f), erase(a)),
        Expr::Pair(a, b) => Expr::pair(erase(a), erase(b)),
        Expr::Inj(l, b) => Expr::inj(l, erase(b)),
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } => Expr::match_pair(erase(scrutinee), left, right, erase(body)),
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

impl RefInterp {
    pub fn new(fuel: u64) -> Self {
        RefInterp {
            fuel,
            heads: HashSet::new(),
            globals: HashMap::new(),
        }
    }

    pub fn with_globals(mut self, p: &Program) -> Self {
        for d in &p.declarations {
            self.globals.insert(d.name.clone(), erase(&d.body));
        }
        self
    }

    pub fn with_heads(mut self, heads: impl IntoIterator<Item = AtomId>) -> Self {
        self.heads.extend(heads);
        self
    }

    fn tick(&mut self) -> Result<(), Outcome> {
        if self.fuel == 0 {
            return Err(Outcome::OutOfFuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    pub fn eval(&mut self, e: &Expr) -> Result<RVal, Outcome> {
        self.eval_in(&Env::default(), &erase(e))
    }

    pub fn apply(&mut self, f: RVal, a: RVal) -> Result<RVal, Outcome> {
        self.tick()?;
        self.call(f, a)
    }

    fn call(&mut self, f: RVal, a: RVal) -> Result<RVal, Outcome> {
        match f {
            RVal::Closure(env, x, body) => self.eval_in(&env.bind(&x, a), &body),
            RVal::Atom(h) if self.heads.contains(&h) => Ok(RVal::Sym(h, vec![a])),
            RVal::Sym(h, mut args) => {
                args.push(a);
                Ok(RVal::Sym(h, args))
            }
            _ => Err(Outcome::Stuck),
        }
    }

    fn eval_in(&mut self, env: &Env, e: &Expr) -> Result<RVal, Outcome> {
        match e {
            Expr::Var(x) => match env.lookup(x) {
                Some(v) => Ok(v.clone()),
                None => match self.globals.get(x).cloned() {
                    Some(body) => self.eval_in(&Env::default(), &body),
                    None => Err(Outcome::Stuck),
                },
            },
            Expr::Lam(x, b) => Ok(RVal::Closure(
                env.clone(),
                x.clone(),
                Rc::new((**b).clone()),
            )),
            Expr::App(f, a) => {
                self.tick()?;
                let vf = self.eval_in(env, f)?;
                let va = self.eval_in(env, a)?;
                self.call(vf, va)
            }
            Expr::Pair(a, b) => {
                let va = self.eval_in(env, a)?;
                let vb = self.eval_in(env, b)?;
                Ok(RVal::Pair(Rc::new(va), Rc::new(vb)))
            }
            Expr::UnitVal => Ok(RVal::Unit),
            Expr::Inj(l, b) => Ok(RVal::Inj(l.clone(), Rc::new(self.eval_in(env, b)?))),
            Expr::Atom(a) => Ok(RVal::Atom(*a)),
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body,
            } => {
                self.tick()?;
                match self.eval_in(env, scrutinee)? {
                    RVal::Pair(a, b) => {
                        let env = env.bind(left, (*a).clone()).bind(right, (*b).clone());
                        self.eval_in(&env, body)
                    }
                    _ => Err(Outcome::Stuck),
                }
            }
            Expr::MatchUnit { scrutinee, body } => {
                self.tick()?;
                match self.eval_in(env, scrutinee)? {
                    RVal::Unit => self.eval_in(env, body),
                    _ => Err(Outcome::Stuck),
                }
            }
            Expr::MatchSum {
                scrutinee,
                branches,
            } => {
                self.tick()?;
                match self.eval_in(env, scrutinee)? {
                    RVal::Inj(l, v) => match branches.get(&l) {
                        Some((x, b)) => self.eval_in(&env.bind(x, (*v).clone()), b),
                        None => Err(Outcome::Stuck),
                    },
                    _ => Err(Outcome::Stuck),
                }
            }
            Expr::TyInst(..) => Err(Outcome::Stuck),
        }
    }
}

/// Reads a value back as a closed term, closing each closure body over its
/// captured environment.
pub fn readback(v: &RVal) -> Expr {
    match v {
        RVal::Closure(env, x, body) => {
            let mut bound = vec![x.clone()];
            Expr::Lam(x.clone(), Box::new(close(body, env, &mut bound)))
        }
        RVal::Pair(a, b) => Expr::pair(readback(a), readback(b)),
        RVal::Unit => Expr::UnitVal,
        RVal::Inj(l, b) => Expr::inj(l, readback(b)),
        RVal::Atom(a) => Expr::Atom(*a),
        RVal::Sym(h, args) => Expr::apps(Expr::Atom(*h), args.iter().map(readback)),
    }
}

fn close(e: &Expr, env: &Env, bound: &mut Vec<String>) -> Expr {
    let under = |xs: &[&String], b: &Expr, bound: &mut Vec<String>| {
        let n = bound.len();
        bound.extend(xs.iter().map(|x| (*x).clone()));
        let r = close(b, env, bound);
        bound.truncate(n);
        r
    };
    match e {
        Expr::Var(x) if !bound.contains(x) => env.lookup(x).map_or_else(|| e.clone(), readback),
        Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => e.clone(),
        Expr::Lam(x, b) => Expr::Lam(x.clone(), Box::new(under(&[x], b, bound))),
        Expr::App(f, a) => Expr::app(close(f, env, bound), close(a, env, bound)),
        Expr::Pair(a, b) => Expr::pair(close(a, env, bound), close(b, env, bound)),
        Expr::Inj(l, b) => Expr::inj(l, close(b, env, bound)),
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } => {
            let s = close(scrutinee, env, bound);
            Expr::match_pair(s, left, right, under(&[left, right], body, bound))
        }
        Expr::MatchUnit { scrutinee, body } => {
            Expr::match_unit(close(scrutinee, env, bound), close(body, env, bound))
        }
        Expr::MatchSum {
            scrutinee,
            branches,
        } => {
            let s = close(scrutinee, env, bound);
            let branches: BTreeMap<String, (String, Expr)> = branches
                .iter()
                .map(|(l, (x, b))| (l.clone(), (x.clone(), under(&[x], b, bound))))
                .collect();
            Expr::MatchSum {
                scrutinee: Box::new(s),
                branches,
            }
        }
        Expr::TyInst(b, t) => Expr::ty_inst(close(b, env, bound), t.clone()),
    }
}
