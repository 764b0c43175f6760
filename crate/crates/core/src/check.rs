//! Bidirectional typechecker for the ordered, linear and unrestricted
//! disciplines.
//!
//! Context splits are determined by free variables: since no discipline
//! except the unrestricted one admits weakening, the ordered context of every
//! subterm in a derivation is exactly its free ordered variables. Ordered mode
//! then only has to check that the induced split is contiguous in the
//! required way. [`SplitStrategy::Exhaustive`] instead enumerates every split
//! and is used to cross-check the default.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::syntax::{pretty_expr, pretty_type, Expr, Program, Signature, TypeExpr};
use crate::types::{self, free_type_vars, fresh_name, subst_one, type_equal_in, whnf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ordered,
    Linear,
    Unrestricted,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Ordered, Mode::Linear, Mode::Unrestricted];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Ordered => "ordered",
            Mode::Linear => "linear",
            Mode::Unrestricted => "unrestricted",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ordered" => Ok(Mode::Ordered),
            "linear" => Ok(Mode::Linear),
            "unrestricted" => Ok(Mode::Unrestricted),
            other => Err(format!(
                "unknown mode `{other}` (expected ordered, linear or unrestricted)"
            )),
        }
    }
}

/// How binary rules divide the ordered context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitStrategy {
    /// Split by free variables; one candidate per rule.
    #[default]
    FreeVars,
    /// Try every split the discipline allows.
    Exhaustive,
}

/// One ordered or linear hypothesis.
pub type Hyp = (String, TypeExpr);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub rule: String,
    pub position: String,
    pub reason: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] at `{}`: {}", self.rule, self.position, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypingVerdict {
    pub accepted: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl TypingVerdict {
    pub fn accept() -> Self {
        TypingVerdict {
            accepted: true,
            diagnostics: Vec::new(),
        }
    }

    pub fn reject(d: Diagnostic) -> Self {
        TypingVerdict {
            accepted: false,
            diagnostics: vec![d],
        }
    }

    fn from_result(r: Result<(), Diagnostic>) -> Self {
        match r {
            Ok(()) => Self::accept(),
            Err(d) => Self::reject(d),
        }
    }
}

/// Decides `delta | gamma ; omega |- e : ty` in `mode`.
pub fn check_expr(
    delta: &[String],
    gamma: &[Hyp],
    omega: &[Hyp],
    e: &Expr,
    ty: &TypeExpr,
    mode: Mode,
    sig: &Signature,
) -> TypingVerdict {
    check_expr_with(
        delta,
        gamma,
        omega,
        e,
        ty,
        mode,
        sig,
        SplitStrategy::FreeVars,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn check_expr_with(
    delta: &[String],
    gamma: &[Hyp],
    omega: &[Hyp],
    e: &Expr,
    ty: &TypeExpr,
    mode: Mode,
    sig: &Signature,
    strategy: SplitStrategy,
) -> TypingVerdict {
    let mut taken: HashSet<String> = gamma.iter().chain(omega).map(|(x, _)| x.clone()).collect();
    let e = uniquify(e, &mut taken);
    let mut ck = Checker {
        sig,
        mode,
        strategy,
        delta: delta.to_vec(),
        gamma: gamma.to_vec(),
    };
    let omega = if mode == Mode::Unrestricted {
        ck.gamma.extend(omega.iter().cloned());
        Vec::new()
    } else {
        omega.to_vec()
    };
    TypingVerdict::from_result(ck.check(&omega, &e, ty))
}

/// Verdict for one declaration of a program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeclVerdict {
    pub name: String,
    pub mode: Mode,
    #[serde(flatten)]
    pub verdict: TypingVerdict,
}

/// Checks every declaration against its declared type. Earlier declarations
/// are in the unrestricted context; a `rec def` also sees itself there.
pub fn check_program(p: &Program, mode: Mode) -> Vec<DeclVerdict> {
    let mut gamma: Vec<Hyp> = Vec::new();
    let mut rejected: BTreeSet<&str> = BTreeSet::new();
    let mut out = Vec::new();
    for d in &p.declarations {
        let m = d.mode.unwrap_or(mode);
        let uses = d.body.free_vars();
        let verdict = if let Some(bad) = rejected.iter().find(|r| uses.contains(**r)) {
            TypingVerdict::reject(Diagnostic {
                rule: "declaration".into(),
                position: d.name.clone(),
                reason: format!("depends on rejected declaration `{bad}`"),
            })
        } else if let Err(e) = types::check_names(&d.ty, &p.signature) {
            TypingVerdict::reject(Diagnostic {
                rule: "type_formation".into(),
                position: pretty_type(&d.ty),
                reason: e.to_string(),
            })
        } else {
            let mut g = gamma.clone();
            if d.recursive {
                g.push((d.name.clone(), d.ty.clone()));
            }
            check_expr(&[], &g, &[], &d.body, &d.ty, m, &p.signature)
        };
        if !verdict.accepted {
            rejected.insert(&d.name);
        }
        gamma.push((d.name.clone(), d.ty.clone()));
        out.push(DeclVerdict {
            name: d.name.clone(),
            mode: m,
            verdict,
        });
    }
    out
}

/// Renames binders so that none shadows another binder or a name in `taken`.
fn uniquify(e: &Expr, taken: &mut HashSet<String>) -> Expr {
    fn bind(x: &str, taken: &mut HashSet<String>, env: &mut Vec<(String, String)>) -> String {
        let new = if taken.contains(x) {
            fresh_name(x, &|n: &str| taken.contains(n))
        } else {
            x.to_string()
        };
        taken.insert(new.clone());
        env.push((x.to_string(), new.clone()));
        new
    }
    fn go(e: &Expr, taken: &mut HashSet<String>, env: &mut Vec<(String, String)>) -> Expr {
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
                let n = bind(x, taken, env);
                let b = go(b, taken, env);
                env.pop();
                Expr::Lam(n, Box::new(b))
            }
            Expr::App(a, b) => Expr::app(go(a, taken, env), go(b, taken, env)),
            Expr::Pair(a, b) => Expr::pair(go(a, taken, env), go(b, taken, env)),
            Expr::Inj(l, b) => Expr::Inj(l.clone(), Box::new(go(b, taken, env))),
            Expr::TyInst(b, t) => Expr::TyInst(Box::new(go(b, taken, env)), t.clone()),
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body,
            } => {
                let s = go(scrutinee, taken, env);
                let l = bind(left, taken, env);
                let r = bind(right, taken, env);
                let b = go(body, taken, env);
                env.truncate(env.len() - 2);
                Expr::MatchPair {
                    scrutinee: Box::new(s),
                    left: l,
                    right: r,
                    body: Box::new(b),
                }
            }
            Expr::MatchUnit { scrutinee, body } => {
                Expr::match_unit(go(scrutinee, taken, env), go(body, taken, env))
            }
            Expr::MatchSum {
                scrutinee,
                branches,
            } => {
                let s = go(scrutinee, taken, env);
                let branches = branches
                    .iter()
                    .map(|(l, (x, b))| {
                        let n = bind(x, taken, env);
                        let b = go(b, taken, env);
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
    go(e, taken, &mut Vec::new())
}

fn position(e: &Expr) -> String {
    let s = pretty_expr(e);
    if s.chars().count() > 80 {
        let cut: String = s.chars().take(77).collect();
        format!("{cut}...")
    } else {
        s
    }
}

fn fail<T>(rule: &str, e: &Expr, reason: impl Into<String>) -> Result<T, Diagnostic> {
    Err(Diagnostic {
        rule: rule.to_string(),
        position: position(e),
        reason: reason.into(),
    })
}

fn names(ctx: &[Hyp]) -> String {
    let xs: Vec<&str> = ctx.iter().map(|(x, _)| x.as_str()).collect();
    format!("[{}]", xs.join(", "))
}

/// Arrow behaviour after applying the mode's collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arrow {
    /// Argument at the left end.
    Under,
    /// Argument at the right end.
    Over,
    /// Argument anywhere.
    Lolli,
    /// Argument uses no resources.
    Unr,
}

impl Arrow {
    fn elim_rule(self) -> &'static str {
        match self {
            Arrow::Under => "under_elim",
            Arrow::Over => "over_elim",
            Arrow::Lolli => "lolli_elim",
            Arrow::Unr => "arrow_elim",
        }
    }
}

/// Where the function's part of a split lies in an ordered context.
#[derive(Clone, Debug)]
struct AppSplit {
    fun: Vec<Hyp>,
    arg: Vec<Hyp>,
    fun_first: bool,
    arg_first: bool,
}

struct Checker<'s> {
    sig: &'s Signature,
    mode: Mode,
    strategy: SplitStrategy,
    delta: Vec<String>,
    gamma: Vec<Hyp>,
}

impl Checker<'_> {
    fn arrow(
        &self,
        ty: &TypeExpr,
        e: &Expr,
    ) -> Result<Option<(Arrow, TypeExpr, TypeExpr)>, Diagnostic> {
        let (kind, a, b) = match ty {
            TypeExpr::Under(a, b) => (Arrow::Under, a, b),
            TypeExpr::Over(a, b) => (Arrow::Over, a, b),
            TypeExpr::Lolli(a, b) => (Arrow::Lolli, a, b),
            TypeExpr::UArrow(a, b) => (Arrow::Unr, a, b),
            _ => return Ok(None),
        };
        let kind = match (self.mode, kind) {
            (Mode::Ordered, Arrow::Lolli) => {
                return fail(
                    "mode",
                    e,
                    "the linear arrow `-o` is not available in ordered mode",
                )
            }
            (Mode::Linear, Arrow::Under | Arrow::Over) => Arrow::Lolli,
            (Mode::Unrestricted, _) => Arrow::Unr,
            (_, k) => k,
        };
        Ok(Some((kind, (**a).clone(), (**b).clone())))
    }

    fn whnf(&self, ty: &TypeExpr, e: &Expr) -> Result<TypeExpr, Diagnostic> {
        whnf(ty, self.sig).or_else(|err| fail("type_formation", e, err.to_string()))
    }

    fn lookup_gamma(&self, x: &str) -> Option<&TypeExpr> {
        self.gamma
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
    }

    fn check(&mut self, omega: &[Hyp], e: &Expr, ty: &TypeExpr) -> Result<(), Diagnostic> {
        let target = self.whnf(ty, e)?;
        let synthesizing = matches!(e, Expr::Var(_) | Expr::App(..) | Expr::TyInst(..));
        if let TypeExpr::Forall(a, body) = &target {
            if !synthesizing {
                return self.forall_intro(omega, e, a, body);
            }
        }
        match e {
            Expr::Lam(x, body) => {
                let Some((kind, arg, res)) = self.arrow(&target, e)? else {
                    return fail(
                        "lambda",
                        e,
                        format!("a function cannot have type {}", pretty_type(&target)),
                    );
                };
                match kind {
                    Arrow::Unr => {
                        self.gamma.push((x.clone(), arg));
                        let r = self.check(omega, body, &res);
                        self.gamma.pop();
                        r
                    }
                    Arrow::Over | Arrow::Lolli => {
                        let mut inner = omega.to_vec();
                        inner.push((x.clone(), arg));
                        self.check(&inner, body, &res)
                    }
                    Arrow::Under => {
                        let mut inner = vec![(x.clone(), arg)];
                        inner.extend_from_slice(omega);
                        self.check(&inner, body, &res)
                    }
                }
            }
            Expr::Pair(e1, e2) => {
                let (twisted, a, b) = match &target {
                    TypeExpr::Fuse(a, b) => (false, a, b),
                    TypeExpr::Twist(a, b) => (self.mode == Mode::Ordered, a, b),
                    _ => {
                        return fail(
                            "pair",
                            e,
                            format!("a pair cannot have type {}", pretty_type(&target)),
                        )
                    }
                };
                let rule = if twisted { "twist_intro" } else { "fuse_intro" };
                let mut last = None;
                for (o1, o2) in self.pair_splits(omega, e1, twisted) {
                    match self.check(&o1, e1, a).and_then(|_| self.check(&o2, e2, b)) {
                        Ok(()) => return Ok(()),
                        Err(d) => last = Some(d),
                    }
                }
                match last {
                    Some(d) => Err(d),
                    None => fail(
                        rule,
                        e,
                        format!(
                            "context {} cannot be split into {} for the {} component",
                            names(omega),
                            if twisted {
                                "a suffix and prefix"
                            } else {
                                "a prefix and suffix"
                            },
                            if twisted {
                                "second and first"
                            } else {
                                "first and second"
                            },
                        ),
                    ),
                }
            }
            Expr::UnitVal => {
                if target != TypeExpr::Unit {
                    return fail(
                        "unit_intro",
                        e,
                        format!("`()` cannot have type {}", pretty_type(&target)),
                    );
                }
                if !omega.is_empty() {
                    return fail(
                        "unit_intro",
                        e,
                        format!("unused ordered hypotheses {}", names(omega)),
                    );
                }
                Ok(())
            }
            Expr::Inj(l, payload) => {
                let TypeExpr::Sum(alts) = &target else {
                    return fail(
                        "sum_intro",
                        e,
                        format!("an injection cannot have type {}", pretty_type(&target)),
                    );
                };
                let Some(a) = alts.get(l) else {
                    return fail(
                        "sum_intro",
                        e,
                        format!("label `{l}` is not in {}", pretty_type(&target)),
                    );
                };
                self.check(omega, payload, a)
            }
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body,
            } => self.match_with(
                omega,
                e,
                scrutinee,
                |ck, s_ty| {
                    let (a, b, twisted) = match s_ty {
                        TypeExpr::Fuse(a, b) => (a, b, false),
                        TypeExpr::Twist(a, b) => (a, b, ck.mode == Mode::Ordered),
                        _ => {
                            return Err(format!(
                                "scrutinee of type {} is not a pair",
                                pretty_type(s_ty)
                            ));
                        }
                    };
                    let x = (left.clone(), (**a).clone());
                    let y = (right.clone(), (**b).clone());
                    Ok(vec![(
                        if twisted { vec![y, x] } else { vec![x, y] },
                        body.as_ref(),
                    )])
                },
                ty,
            ),
            Expr::MatchUnit { scrutinee, body } => self.match_with(
                omega,
                e,
                scrutinee,
                |_, s_ty| {
                    if *s_ty != TypeExpr::Unit {
                        return Err(format!(
                            "scrutinee of type {} is not unit",
                            pretty_type(s_ty)
                        ));
                    }
                    Ok(vec![(Vec::new(), body.as_ref())])
                },
                ty,
            ),
            Expr::MatchSum {
                scrutinee,
                branches,
            } => self.match_with(
                omega,
                e,
                scrutinee,
                |_, s_ty| {
                    let TypeExpr::Sum(alts) = s_ty else {
                        return Err(format!(
                            "scrutinee of type {} is not a sum",
                            pretty_type(s_ty)
                        ));
                    };
                    if !alts.keys().eq(branches.keys()) {
                        let have: Vec<&str> = branches.keys().map(|s| s.as_str()).collect();
                        return Err(format!(
                            "branches {{{}}} do not match the labels of {}",
                            have.join(", "),
                            pretty_type(s_ty)
                        ));
                    }
                    Ok(branches
                        .iter()
                        .map(|(l, (x, b))| (vec![(x.clone(), alts[l].clone())], b))
                        .collect())
                },
                ty,
            ),
            Expr::Atom(a) => fail("atom", e, format!("atom {a} has no type")),
            Expr::Var(_) | Expr::App(..) | Expr::TyInst(..) => {
                let found = self.synth(omega, e)?;
                if type_equal_in(&found, &target, self.sig, self.mode) {
                    return Ok(());
                }
                if let TypeExpr::Forall(a, body) = &target {
                    return self.forall_intro(omega, e, a, body);
                }
                fail(
                    "type_mismatch",
                    e,
                    format!(
                        "expected {}, found {}",
                        pretty_type(&target),
                        pretty_type(&found)
                    ),
                )
            }
        }
    }

    fn forall_intro(
        &mut self,
        omega: &[Hyp],
        e: &Expr,
        a: &str,
        body: &TypeExpr,
    ) -> Result<(), Diagnostic> {
        let (var, body) = if self.delta.iter().any(|d| d == a) {
            let delta = &self.delta;
            let fresh = fresh_name(a, &|n: &str| {
                delta.iter().any(|d| d == n) || free_type_vars(body).contains(n)
            });
            let renamed = subst_one(a, &TypeExpr::Var(fresh.clone()), body);
            (fresh, renamed)
        } else {
            (a.to_string(), body.clone())
        };
        self.delta.push(var);
        let r = self.check(omega, e, &body);
        self.delta.pop();
        r
    }

    /// Shared elimination logic for the three match forms. `branches` maps
    /// the scrutinee's type to the hypotheses each branch binds (in context
    /// order) and the branch body.
    fn match_with<'e>(
        &mut self,
        omega: &[Hyp],
        e: &Expr,
        scrutinee: &Expr,
        branches: impl Fn(&Self, &TypeExpr) -> Result<Vec<(Vec<Hyp>, &'e Expr)>, String>,
        result: &TypeExpr,
    ) -> Result<(), Diagnostic> {
        let rule = match e {
            Expr::MatchPair { .. } => "pair_elim",
            Expr::MatchUnit { .. } => "unit_elim",
            _ => "sum_elim",
        };
        let candidates = self.scrutinee_splits(omega, scrutinee);
        if candidates.is_empty() {
            let used: Vec<Hyp> = omega
                .iter()
                .filter(|(x, _)| scrutinee.free_vars().contains(x))
                .cloned()
                .collect();
            return fail(
                rule,
                e,
                format!(
                    "scrutinee hypotheses {} are not contiguous in {}",
                    names(&used),
                    names(omega)
                ),
            );
        }
        let mut last = None;
        for (l, s, r) in candidates {
            let attempt = (|| {
                let s_ty = self.synth(&s, scrutinee)?;
                let s_ty = self.whnf(&s_ty, scrutinee)?;
                let arms = branches(self, &s_ty).or_else(|reason| fail(rule, e, reason))?;
                for (bound, body) in arms {
                    if self.mode == Mode::Unrestricted {
                        let n = bound.len();
                        self.gamma.extend(bound);
                        let res = self.check(&[], body, result);
                        self.gamma.truncate(self.gamma.len() - n);
                        res?;
                    } else {
                        let mut inner = l.clone();
                        inner.extend(bound);
                        inner.extend_from_slice(&r);
                        self.check(&inner, body, result)?;
                    }
                }
                Ok(())
            })();
            match attempt {
                Ok(()) => return Ok(()),
                Err(d) => last = Some(d),
            }
        }
        Err(last.expect("at least one candidate"))
    }

    fn synth(&mut self, omega: &[Hyp], e: &Expr) -> Result<TypeExpr, Diagnostic> {
        match e {
            Expr::Var(x) => {
                if let Some(i) = omega.iter().position(|(y, _)| y == x) {
                    if omega.len() != 1 {
                        let rest: Vec<Hyp> = omega
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, h)| h.clone())
                            .collect();
                        return fail(
                            "hyp",
                            e,
                            format!("unused ordered hypotheses {}", names(&rest)),
                        );
                    }
                    return Ok(omega[0].1.clone());
                }
                let Some(t) = self.lookup_gamma(x).cloned() else {
                    return fail("hyp", e, format!("variable `{x}` is not available here"));
                };
                if !omega.is_empty() {
                    return fail(
                        "hyp",
                        e,
                        format!("unused ordered hypotheses {}", names(omega)),
                    );
                }
                Ok(t)
            }
            Expr::TyInst(f, b) => {
                let f_ty = self.synth(omega, f)?;
                let f_ty = self.whnf(&f_ty, e)?;
                let TypeExpr::Forall(a, body) = f_ty else {
                    return fail(
                        "forall_elim",
                        e,
                        format!(
                            "instantiated term has non-polymorphic type {}",
                            pretty_type(&f_ty)
                        ),
                    );
                };
                if let Some(v) = free_type_vars(b)
                    .into_iter()
                    .find(|v| !self.delta.contains(v))
                {
                    return fail(
                        "forall_elim",
                        e,
                        format!("type variable `{v}` is not in scope"),
                    );
                }
                if let Err(err) = types::check_names(b, self.sig) {
                    return fail("forall_elim", e, err.to_string());
                }
                Ok(subst_one(&a, b, &body))
            }
            Expr::App(f, arg) => {
                let mut last = None;
                for split in self.app_splits(omega, f) {
                    match self.synth_app(&split, e, f, arg) {
                        Ok(t) => return Ok(t),
                        Err(d) => last = Some(d),
                    }
                }
                match last {
                    Some(d) => Err(d),
                    None => fail("app", e, format!("no admissible split of {}", names(omega))),
                }
            }
            Expr::Pair(a, b) => {
                let mut last = None;
                for (o1, o2) in self.pair_splits(omega, a, false) {
                    match self
                        .synth(&o1, a)
                        .and_then(|ta| Ok(TypeExpr::fuse(ta, self.synth(&o2, b)?)))
                    {
                        Ok(t) => return Ok(t),
                        Err(d) => last = Some(d),
                    }
                }
                match last {
                    Some(d) => Err(d),
                    None => fail(
                        "fuse_intro",
                        e,
                        format!("context {} cannot be split", names(omega)),
                    ),
                }
            }
            Expr::UnitVal => {
                if !omega.is_empty() {
                    return fail(
                        "unit_intro",
                        e,
                        format!("unused ordered hypotheses {}", names(omega)),
                    );
                }
                Ok(TypeExpr::Unit)
            }
            _ => fail(
                "synthesis",
                e,
                "cannot synthesize a type for this term; it must be checked against a type",
            ),
        }
    }

    fn synth_app(
        &mut self,
        split: &AppSplit,
        e: &Expr,
        f: &Expr,
        arg: &Expr,
    ) -> Result<TypeExpr, Diagnostic> {
        let f_ty = self.synth(&split.fun, f)?;
        let f_ty = self.whnf(&f_ty, f)?;
        let Some((kind, a, b)) = self.arrow(&f_ty, e)? else {
            let hint = if matches!(f_ty, TypeExpr::Forall(..)) {
                " (missing type instantiation?)"
            } else {
                ""
            };
            return fail(
                "app",
                e,
                format!(
                    "applied term has non-function type {}{hint}",
                    pretty_type(&f_ty)
                ),
            );
        };
        let ok = match kind {
            Arrow::Over => split.fun_first,
            Arrow::Under => split.arg_first,
            Arrow::Lolli => true,
            Arrow::Unr => split.arg.is_empty(),
        };
        if !ok {
            let reason = match kind {
                Arrow::Over => "the function's hypotheses must all precede the argument's",
                Arrow::Under => "the argument's hypotheses must all precede the function's",
                _ => "the argument of an unrestricted function may not use ordered hypotheses",
            };
            return fail(
                kind.elim_rule(),
                e,
                format!(
                    "{reason}: function uses {}, argument uses {}",
                    names(&split.fun),
                    names(&split.arg)
                ),
            );
        }
        self.check(&split.arg, arg, &a)?;
        Ok(b)
    }

    // ---- context splitting ---------------------------------------------

    fn app_splits(&self, omega: &[Hyp], f: &Expr) -> Vec<AppSplit> {
        if omega.is_empty() {
            return vec![AppSplit {
                fun: vec![],
                arg: vec![],
                fun_first: true,
                arg_first: true,
            }];
        }
        match (self.strategy, self.mode) {
            (_, Mode::Unrestricted) => vec![AppSplit {
                fun: vec![],
                arg: vec![],
                fun_first: true,
                arg_first: true,
            }],
            (SplitStrategy::FreeVars, _) => {
                let fv = f.free_vars();
                let (fun, rest): (Vec<Hyp>, Vec<Hyp>) =
                    omega.iter().cloned().partition(|(x, _)| fv.contains(x));
                let fun_first = omega.iter().take(fun.len()).all(|(x, _)| fv.contains(x));
                let arg_first = omega.iter().take(rest.len()).all(|(x, _)| !fv.contains(x));
                vec![AppSplit {
                    fun,
                    arg: rest,
                    fun_first,
                    arg_first,
                }]
            }
            (SplitStrategy::Exhaustive, Mode::Ordered) => {
                let n = omega.len();
                let mut out = Vec::new();
                for k in 0..=n {
                    out.push(AppSplit {
                        fun: omega[..k].to_vec(),
                        arg: omega[k..].to_vec(),
                        fun_first: true,
                        arg_first: k == 0 || k == n,
                    });
                    if k != 0 && k != n {
                        out.push(AppSplit {
                            fun: omega[k..].to_vec(),
                            arg: omega[..k].to_vec(),
                            fun_first: false,
                            arg_first: true,
                        });
                    }
                }
                out
            }
            (SplitStrategy::Exhaustive, Mode::Linear) => subsets(omega)
                .into_iter()
                .map(|(fun, arg)| AppSplit {
                    fun,
                    arg,
                    fun_first: true,
                    arg_first: true,
                })
                .collect(),
        }
    }

    /// Splits for a pair: `(first component, second component)`. When
    /// `twisted`, the second component's hypotheses come first.
    fn pair_splits(&self, omega: &[Hyp], e1: &Expr, twisted: bool) -> Vec<(Vec<Hyp>, Vec<Hyp>)> {
        match (self.strategy, self.mode) {
            (_, Mode::Unrestricted) => vec![(vec![], vec![])],
            (SplitStrategy::FreeVars, mode) => {
                let fv = e1.free_vars();
                let (first, second): (Vec<Hyp>, Vec<Hyp>) =
                    omega.iter().cloned().partition(|(x, _)| fv.contains(x));
                if mode == Mode::Ordered {
                    let expect: Vec<&Hyp> = if twisted {
                        second.iter().chain(first.iter()).collect()
                    } else {
                        first.iter().chain(second.iter()).collect()
                    };
                    if !expect.into_iter().eq(omega.iter()) {
                        return Vec::new();
                    }
                }
                vec![(first, second)]
            }
            (SplitStrategy::Exhaustive, Mode::Ordered) => (0..=omega.len())
                .map(|k| {
                    let (l, r) = (omega[..k].to_vec(), omega[k..].to_vec());
                    if twisted {
                        (r, l)
                    } else {
                        (l, r)
                    }
                })
                .collect(),
            (SplitStrategy::Exhaustive, Mode::Linear) => subsets(omega),
        }
    }

    /// Candidate `(left, scrutinee, right)` decompositions of the context.
    fn scrutinee_splits(&self, omega: &[Hyp], s: &Expr) -> Vec<(Vec<Hyp>, Vec<Hyp>, Vec<Hyp>)> {
        let n = omega.len();
        match (self.strategy, self.mode) {
            (_, Mode::Unrestricted) => vec![(vec![], vec![], vec![])],
            (SplitStrategy::FreeVars, Mode::Linear) => {
                let fv = s.free_vars();
                let (used, rest): (Vec<Hyp>, Vec<Hyp>) =
                    omega.iter().cloned().partition(|(x, _)| fv.contains(x));
                vec![(rest, used, vec![])]
            }
            (SplitStrategy::FreeVars, Mode::Ordered) => {
                let fv = s.free_vars();
                let idx: Vec<usize> = (0..n).filter(|&i| fv.contains(&omega[i].0)).collect();
                match (idx.first(), idx.last()) {
                    (Some(&i), Some(&j)) => {
                        if j - i + 1 != idx.len() {
                            return Vec::new();
                        }
                        vec![(
                            omega[..i].to_vec(),
                            omega[i..=j].to_vec(),
                            omega[j + 1..].to_vec(),
                        )]
                    }
                    _ => (0..=n)
                        .map(|k| (omega[..k].to_vec(), vec![], omega[k..].to_vec()))
                        .collect(),
                }
            }
            (SplitStrategy::Exhaustive, Mode::Ordered) => {
                let mut out = Vec::new();
                for i in 0..=n {
                    for j in i..=n {
                        out.push((
                            omega[..i].to_vec(),
                            omega[i..j].to_vec(),
                            omega[j..].to_vec(),
                        ));
                    }
                }
                out
            }
            (SplitStrategy::Exhaustive, Mode::Linear) => subsets(omega)
                .into_iter()
                .map(|(s, rest)| (rest, s, vec![]))
                .collect(),
        }
    }
}

/// All ways to divide `omega` into two order-preserving subsequences.
fn subsets(omega: &[Hyp]) -> Vec<(Vec<Hyp>, Vec<Hyp>)> {
    let n = omega.len();
    (0..1u64 << n)
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, h) in omega.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(h.clone())
                } else {
                    b.push(h.clone())
                }
            }
            (a, b)
        })
        .collect()
}
