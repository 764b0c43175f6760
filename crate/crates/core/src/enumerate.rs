//! Inhabitants of small types as βη-long normal forms, found by focused
//! proof search under each discipline.
//!
//! Search alternates phases: arrows in the goal are introduced, positive
//! hypotheses (pairs, unit, sums) are taken apart eagerly, and then one
//! focusing step is chosen: build a positive goal, apply a hypothesis whose
//! final result is the atomic goal, or apply one whose final result is
//! positive and take the result apart.

use serde::Serialize;
use thiserror::Error;

use crate::check::Mode;
use crate::syntax::{pretty_expr, pretty_type, ArrowKind, Expr, TypeExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Focusing steps along any one branch.
    pub max_depth: usize,
    /// Largest term kept, counted by [`Expr::size`].
    pub max_size: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 8,
            max_size: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("cannot enumerate inhabitants of `{0}`: named types and inner quantifiers are not supported")]
    Unsupported(String),
    #[error("the linear arrow `-o` has no ordered reading")]
    LinearArrowInOrdered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct up to alpha-equivalence, sorted by printed form.
    pub terms: Vec<Expr>,
    /// Some branch ran out of budget, so `terms` may be incomplete.
    pub truncated: bool,
}

type Ctx = Vec<(String, TypeExpr)>;

fn is_positive(t: &TypeExpr) -> bool {
    matches!(
        t,
        TypeExpr::Fuse(..) | TypeExpr::Twist(..) | TypeExpr::Unit | TypeExpr::Sum(_)
    )
}

fn check_supported(t: &TypeExpr, mode: Mode, whole: &TypeExpr) -> Result<(), EnumerateError> {
    match t {
        TypeExpr::Var(_) | TypeExpr::Unit => Ok(()),
        TypeExpr::Named(..) | TypeExpr::Forall(..) => {
            Err(EnumerateError::Unsupported(pretty_type(whole)))
        }
        TypeExpr::Lolli(..) if mode == Mode::Ordered => Err(EnumerateError::LinearArrowInOrdered),
        TypeExpr::Fuse(a, b)
        | TypeExpr::Twist(a, b)
        | TypeExpr::Under(a, b)
        | TypeExpr::Over(a, b)
        | TypeExpr::Lolli(a, b)
        | TypeExpr::UArrow(a, b) => {
            check_supported(a, mode, whole)?;
            check_supported(b, mode, whole)
        }
        TypeExpr::Sum(alts) => alts
            .values()
            .try_for_each(|t| check_supported(t, mode, whole)),
    }
}

/// Splits an arrow chain into its parameters and final result.
fn spine(t: &TypeExpr) -> (Vec<(ArrowKind, &TypeExpr)>, &TypeExpr) {
    let mut params = Vec::new();
    let mut cur = t;
    while let Some((k, a, b)) = cur.as_arrow() {
        params.push((k, a));
        cur = b;
    }
    (params, cur)
}

fn binder(n: usize) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    if n < NAMES.len() {
        NAMES[n].to_string()
    } else {
        format!("x{n}")
    }
}

/// All order-preserving ways to divide `items` into a chosen part and the rest.
fn subsets<T: Clone>(items: &[T]) -> Vec<(Vec<T>, Vec<T>)> {
    let n = items.len();
    (0u64..(1 << n))
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, x) in items.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(x.clone());
                } else {
                    b.push(x.clone());
                }
            }
            (a, b)
        })
        .collect()
}

fn product(lists: Vec<Vec<Expr>>) -> Vec<Vec<Expr>> {
    lists.into_iter().fold(vec![Vec::new()], |acc, options| {
        let mut out = Vec::new();
        for prefix in &acc {
            for o in &options {
                let mut p = prefix.clone();
                p.push(o.clone());
                out.push(p);
            }
        }
        out
    })
}

/// A way of applying a hypothesis: the argument contexts in spine order and
/// the ordered context left over, with the slot where the result goes.
struct Application {
    args: Vec<Ctx>,
    before: Ctx,
    after: Ctx,
}

struct Search {
    mode: Mode,
    budget: SearchBudget,
    truncated: bool,
}

const MAX_RESULTS: usize = 4096;

impl Search {
    fn keep(&mut self, mut terms: Vec<Expr>) -> Vec<Expr> {
        let before = terms.len();
        terms.retain(|t| t.size() <= self.budget.max_size);
        if terms.len() > MAX_RESULTS {
            terms.truncate(MAX_RESULTS);
        }
        if terms.len() != before {
            self.truncated = true;
        }
        terms
    }

    /// All normal forms of `goal` using exactly `omega` and freely `gamma`.
    fn solve(
        &mut self,
        gamma: &Ctx,
        omega: &Ctx,
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        // Right inversion.
        if let Some((kind, a, b)) = goal.as_arrow() {
            let x = binder(fresh);
            let (mut g, mut o) = (gamma.clone(), omega.clone());
            match (self.mode, kind) {
                (Mode::Unrestricted, _) | (_, ArrowKind::Unrestricted) => {
                    g.push((x.clone(), a.clone()))
                }
                (Mode::Ordered, ArrowKind::Under) => o.insert(0, (x.clone(), a.clone())),
                (Mode::Ordered, ArrowKind::Lolli) => return Vec::new(),
                _ => o.push((x.clone(), a.clone())),
            }
            let bodies = self.solve(&g, &o, b, depth, fresh + 1);
            return bodies.into_iter().map(|body| Expr::lam(&x, body)).collect();
        }

        // Left inversion of the first positive hypothesis.
        if let Some(i) = omega.iter().position(|(_, t)| is_positive(t)) {
            return self.invert(gamma, omega, Some(i), goal, depth, fresh);
        }
        if let Some(i) = gamma.iter().position(|(_, t)| is_positive(t)) {
            let mut g = gamma.clone();
            let hyp = g.remove(i);
            let mut o = vec![hyp];
            o.extend(omega.iter().cloned());
            // Treat it as an ordered hypothesis whose parts return to Γ.
            return self.invert_unrestricted(&g, omega, &o[0], goal, depth, fresh);
        }

        if depth == 0 {
            self.truncated = true;
            return Vec::new();
        }
        let mut out = Vec::new();
        if is_positive(goal) {
            let r = self.right_focus(gamma, omega, goal, depth - 1, fresh);
            out.extend(r);
        }
        let hyps: Vec<(Option<usize>, String, TypeExpr)> = omega
            .iter()
            .enumerate()
            .map(|(i, (x, t))| (Some(i), x.clone(), t.clone()))
            .chain(gamma.iter().map(|(x, t)| (None, x.clone(), t.clone())))
            .collect();
        for (pos, x, t) in &hyps {
            let (params, target) = spine(t);
            let neutral = matches!(target, TypeExpr::Var(_)) && target == goal;
            let binds = is_positive(target) && !params.is_empty();
            if !neutral && !binds {
                continue;
            }
            for app in self.applications(gamma, omega, *pos, &params) {
                if neutral && app.before.is_empty() && app.after.is_empty() {
                    let r = self.apply(gamma, Expr::var(x), &params, &app.args, depth - 1, fresh);
                    out.extend(r);
                }
                if binds {
                    let r = self.bind(gamma, x, &params, target, &app, goal, depth - 1, fresh);
                    out.extend(r);
                }
            }
        }
        self.keep(out)
    }

    /// Builds `head e1 .. en` for every choice of argument terms.
    fn apply(
        &mut self,
        gamma: &Ctx,
        head: Expr,
        params: &[(ArrowKind, &TypeExpr)],
        args: &[Ctx],
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        let mut options = Vec::with_capacity(params.len());
        for ((_, a), ctx) in params.iter().zip(args) {
            let terms = self.solve(gamma, ctx, a, depth, fresh);
            if terms.is_empty() {
                return Vec::new();
            }
            options.push(terms);
        }
        product(options)
            .into_iter()
            .map(|args| Expr::apps(head.clone(), args))
            .collect()
    }

    /// Applies `x` fully, names the positive result, and continues with the
    /// result taken apart in place of the consumed hypotheses.
    #[allow(clippy::too_many_arguments)]
    fn bind(
        &mut self,
        gamma: &Ctx,
        x: &str,
        params: &[(ArrowKind, &TypeExpr)],
        target: &TypeExpr,
        app: &Application,
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        let calls = self.apply(gamma, Expr::var(x), params, &app.args, depth, fresh);
        if calls.is_empty() {
            return Vec::new();
        }
        let p = binder(fresh);
        let (mut g, mut o) = (gamma.clone(), app.before.clone());
        if self.mode == Mode::Unrestricted {
            g.push((p.clone(), target.clone()));
        } else {
            o.push((p.clone(), target.clone()));
        }
        o.extend(app.after.iter().cloned());
        let bodies = self.solve(&g, &o, goal, depth, fresh + 1);
        let mut out = Vec::new();
        for call in &calls {
            for body in &bodies {
                out.extend(replace_scrutinee(body, &p, call));
            }
        }
        out
    }

    /// Ways to supply arguments to the hypothesis at `pos` (`None` for an
    /// unrestricted hypothesis).
    fn applications(
        &self,
        _gamma: &Ctx,
        omega: &Ctx,
        pos: Option<usize>,
        params: &[(ArrowKind, &TypeExpr)],
    ) -> Vec<Application> {
        match self.mode {
            Mode::Unrestricted => vec![Application {
                args: vec![Vec::new(); params.len()],
                before: Vec::new(),
                after: Vec::new(),
            }],
            Mode::Linear => {
                let rest: Ctx = omega
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| Some(*i) != pos)
                    .map(|(_, h)| h.clone())
                    .collect();
                let mut out = Vec::new();
                linear_args(params, rest, Vec::new(), &mut out);
                out
            }
            Mode::Ordered => {
                if params.iter().any(|(k, _)| *k == ArrowKind::Lolli) {
                    return Vec::new();
                }
                let starts: Vec<(usize, usize)> = match pos {
                    Some(i) => vec![(i, i + 1)],
                    None => (0..=omega.len()).map(|p| (p, p)).collect(),
                };
                let mut out = Vec::new();
                for (lo, hi) in starts {
                    ordered_args(omega, params, lo, hi, Vec::new(), &mut out);
                }
                out
            }
        }
    }

    fn right_focus(
        &mut self,
        gamma: &Ctx,
        omega: &Ctx,
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        let mut out = Vec::new();
        match goal {
            TypeExpr::Unit => {
                if omega.is_empty() {
                    out.push(Expr::UnitVal);
                }
            }
            TypeExpr::Sum(alts) => {
                for (l, t) in alts {
                    for e in self.focus_sub(gamma, omega, t, depth, fresh) {
                        out.push(Expr::inj(l, e));
                    }
                }
            }
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let twisted = matches!(goal, TypeExpr::Twist(..));
                for (first, second) in self.pair_splits(omega) {
                    // A twisted pair's second component owns the first part.
                    let (oa, ob) = if twisted && self.mode == Mode::Ordered {
                        (second, first)
                    } else {
                        (first, second)
                    };
                    let xs = self.focus_sub(gamma, &oa, a, depth, fresh);
                    if xs.is_empty() {
                        continue;
                    }
                    let ys = self.focus_sub(gamma, &ob, b, depth, fresh);
                    for x in &xs {
                        for y in &ys {
                            out.push(Expr::pair(x.clone(), y.clone()));
                        }
                    }
                }
            }
            _ => unreachable!("right focus on a negative goal"),
        }
        out
    }

    fn focus_sub(
        &mut self,
        gamma: &Ctx,
        omega: &Ctx,
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        if is_positive(goal) {
            self.right_focus(gamma, omega, goal, depth, fresh)
        } else {
            self.solve(gamma, omega, goal, depth, fresh)
        }
    }

    fn pair_splits(&self, omega: &Ctx) -> Vec<(Ctx, Ctx)> {
        match self.mode {
            Mode::Ordered => (0..=omega.len())
                .map(|k| (omega[..k].to_vec(), omega[k..].to_vec()))
                .collect(),
            Mode::Linear => subsets(omega),
            Mode::Unrestricted => vec![(Vec::new(), Vec::new())],
        }
    }

    fn invert(
        &mut self,
        gamma: &Ctx,
        omega: &Ctx,
        at: Option<usize>,
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        let i = at.expect("ordered position");
        let (x, t) = omega[i].clone();
        let before = &omega[..i];
        let after = &omega[i + 1..];
        let splice = |mid: Vec<(String, TypeExpr)>| -> Ctx {
            before
                .iter()
                .cloned()
                .chain(mid)
                .chain(after.iter().cloned())
                .collect()
        };
        match &t {
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let (y, z) = (binder(fresh), binder(fresh + 1));
                let mid = if matches!(t, TypeExpr::Twist(..)) && self.mode == Mode::Ordered {
                    vec![(z.clone(), (**b).clone()), (y.clone(), (**a).clone())]
                } else {
                    vec![(y.clone(), (**a).clone()), (z.clone(), (**b).clone())]
                };
                let bodies = self.solve(gamma, &splice(mid), goal, depth, fresh + 2);
                bodies
                    .into_iter()
                    .map(|body| Expr::match_pair(Expr::var(&x), &y, &z, body))
                    .collect()
            }
            TypeExpr::Unit => {
                let bodies = self.solve(gamma, &splice(Vec::new()), goal, depth, fresh);
                bodies
                    .into_iter()
                    .map(|body| Expr::match_unit(Expr::var(&x), body))
                    .collect()
            }
            TypeExpr::Sum(alts) => {
                let y = binder(fresh);
                let mut per_branch = Vec::new();
                for (l, a) in alts {
                    let bodies = self.solve(
                        gamma,
                        &splice(vec![(y.clone(), a.clone())]),
                        goal,
                        depth,
                        fresh + 1,
                    );
                    if bodies.is_empty() {
                        return Vec::new();
                    }
                    per_branch.push((l.clone(), bodies));
                }
                self.sum_matches(&x, &y, per_branch)
            }
            _ => unreachable!("inverting a negative hypothesis"),
        }
    }

    fn invert_unrestricted(
        &mut self,
        gamma: &Ctx,
        omega: &Ctx,
        hyp: &(String, TypeExpr),
        goal: &TypeExpr,
        depth: usize,
        fresh: usize,
    ) -> Vec<Expr> {
        let (x, t) = hyp;
        let with = |extra: Vec<(String, TypeExpr)>| -> Ctx {
            gamma.iter().cloned().chain(extra).collect()
        };
        match t {
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let (y, z) = (binder(fresh), binder(fresh + 1));
                let g = with(vec![(y.clone(), (**a).clone()), (z.clone(), (**b).clone())]);
                let bodies = self.solve(&g, omega, goal, depth, fresh + 2);
                bodies
                    .into_iter()
                    .map(|body| Expr::match_pair(Expr::var(x), &y, &z, body))
                    .collect()
            }
            TypeExpr::Unit => {
                let bodies = self.solve(&with(Vec::new()), omega, goal, depth, fresh);
                bodies
                    .into_iter()
                    .map(|body| Expr::match_unit(Expr::var(x), body))
                    .collect()
            }
            TypeExpr::Sum(alts) => {
                let y = binder(fresh);
                let mut per_branch = Vec::new();
                for (l, a) in alts {
                    let bodies = self.solve(
                        &with(vec![(y.clone(), a.clone())]),
                        omega,
                        goal,
                        depth,
                        fresh + 1,
                    );
                    if bodies.is_empty() {
                        return Vec::new();
                    }
                    per_branch.push((l.clone(), bodies));
                }
                self.sum_matches(x, &y, per_branch)
            }
            _ => unreachable!("inverting a negative hypothesis"),
        }
    }

    fn sum_matches(&mut self, x: &str, y: &str, per_branch: Vec<(String, Vec<Expr>)>) -> Vec<Expr> {
        let labels: Vec<String> = per_branch.iter().map(|(l, _)| l.clone()).collect();
        let combos = product(per_branch.into_iter().map(|(_, b)| b).collect());
        let out = combos
            .into_iter()
            .map(|bodies| Expr::MatchSum {
                scrutinee: Box::new(Expr::var(x)),
                branches: labels
                    .iter()
                    .cloned()
                    .zip(bodies.into_iter().map(|b| (y.to_string(), b)))
                    .collect(),
            })
            .collect();
        self.keep(out)
    }
}

fn linear_args(
    params: &[(ArrowKind, &TypeExpr)],
    rest: Ctx,
    acc: Vec<Ctx>,
    out: &mut Vec<Application>,
) {
    let Some(((kind, _), more)) = params.split_first() else {
        out.push(Application {
            args: acc,
            before: rest,
            after: Vec::new(),
        });
        return;
    };
    if *kind == ArrowKind::Unrestricted {
        let mut acc = acc;
        acc.push(Vec::new());
        linear_args(more, rest, acc, out);
        return;
    }
    for (taken, left) in subsets(&rest) {
        let mut a = acc.clone();
        a.push(taken);
        linear_args(more, left, a, out);
    }
}

/// The hypothesis and the arguments so far occupy `omega[lo..hi]`.
fn ordered_args(
    omega: &Ctx,
    params: &[(ArrowKind, &TypeExpr)],
    lo: usize,
    hi: usize,
    acc: Vec<Ctx>,
    out: &mut Vec<Application>,
) {
    let Some(((kind, _), more)) = params.split_first() else {
        out.push(Application {
            args: acc,
            before: omega[..lo].to_vec(),
            after: omega[hi..].to_vec(),
        });
        return;
    };
    match kind {
        ArrowKind::Over => {
            for end in hi..=omega.len() {
                let mut a = acc.clone();
                a.push(omega[hi..end].to_vec());
                ordered_args(omega, more, lo, end, a, out);
            }
        }
        ArrowKind::Under => {
            for start in 0..=lo {
                let mut a = acc.clone();
                a.push(omega[start..lo].to_vec());
                ordered_args(omega, more, start, hi, a, out);
            }
        }
        ArrowKind::Unrestricted => {
            let mut a = acc;
            a.push(Vec::new());
            ordered_args(omega, more, lo, hi, a, out);
        }
        ArrowKind::Lolli => {}
    }
}

/// Substitutes `by` for the variable `p` where a body opens with a match on
/// it; bodies produced for a fresh positive hypothesis always do.
fn replace_scrutinee(body: &Expr, p: &str, by: &Expr) -> Option<Expr> {
    let is_p = |s: &Expr| matches!(s, Expr::Var(v) if v == p);
    match body {
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } if is_p(scrutinee) => Some(Expr::MatchPair {
            scrutinee: Box::new(by.clone()),
            left: left.clone(),
            right: right.clone(),
            body: body.clone(),
        }),
        Expr::MatchUnit { scrutinee, body } if is_p(scrutinee) => {
            Some(Expr::match_unit(by.clone(), (**body).clone()))
        }
        Expr::MatchSum {
            scrutinee,
            branches,
        } if is_p(scrutinee) => Some(Expr::MatchSum {
            scrutinee: Box::new(by.clone()),
            branches: branches.clone(),
        }),
        _ => None,
    }
}

/// Strips a quantifier prefix; the bound variables then act as atoms.
fn strip_prefix(ty: &TypeExpr) -> &TypeExpr {
    match ty {
        TypeExpr::Forall(_, body) => strip_prefix(body),
        t => t,
    }
}

pub fn enumerate_inhabitants(
    ty: &TypeExpr,
    mode: Mode,
    budget: SearchBudget,
) -> Result<Enumeration, EnumerateError> {
    let body = strip_prefix(ty);
    check_supported(body, mode, ty)?;
    let mut s = Search {
        mode,
        budget,
        truncated: false,
    };
    let found = s.solve(&Vec::new(), &Vec::new(), body, budget.max_depth, 0);
    let mut terms: Vec<(String, Expr)> = found.into_iter().map(|e| (pretty_expr(&e), e)).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut distinct: Vec<Expr> = Vec::new();
    for (_, e) in terms {
        if !distinct.contains(&e) {
            distinct.push(e);
        }
    }
    Ok(Enumeration {
        terms: distinct,
        truncated: s.truncated,
    })
}

pub fn count_inhabitants(
    ty: &TypeExpr,
    mode: Mode,
    budget: SearchBudget,
) -> Result<(usize, bool), EnumerateError> {
    let e = enumerate_inhabitants(ty, mode, budget)?;
    Ok((e.terms.len(), e.truncated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_expr;
    use crate::syntax::{parse_expr, parse_type, Signature};

    fn count(src: &str, mode: Mode) -> (usize, bool) {
        count_inhabitants(&parse_type(src).unwrap(), mode, SearchBudget::default()).unwrap()
    }

    #[test]
    fn identity() {
        let e = enumerate_inhabitants(
            &parse_type("a ->> a").unwrap(),
            Mode::Ordered,
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(e.terms, vec![parse_expr("\\x. x").unwrap()]);
        assert!(!e.truncated);
    }

    #[test]
    fn projections_only_when_unrestricted() {
        assert_eq!(count("a ->> a ->> a", Mode::Ordered), (0, false));
        assert_eq!(count("a ->> a ->> a", Mode::Linear), (0, false));
        assert_eq!(count("a ->> a ->> a", Mode::Unrestricted), (2, false));
    }

    #[test]
    fn unit_and_atom() {
        for m in Mode::ALL {
            assert_eq!(count("1", m), (1, false));
            assert_eq!(count("a", m), (0, false));
        }
    }

    #[test]
    fn under_takes_argument_on_the_left() {
        // The second argument lands to the left of the first.
        assert_eq!(count("a \\ b \\ b * a", Mode::Ordered), (1, false));
        assert_eq!(count("a \\ b \\ a * b", Mode::Ordered), (0, false));
    }

    #[test]
    fn positive_hypotheses_are_taken_apart() {
        assert_eq!(count("a * b ->> a * b", Mode::Ordered), (1, false));
        assert_eq!(count("a * b ->> b * a", Mode::Ordered), (0, false));
        assert_eq!(count("a % b ->> b * a", Mode::Ordered), (1, false));
        assert_eq!(
            count("+{l : a, r : a} ->> +{l : a, r : a}", Mode::Ordered),
            (4, false)
        );
    }

    #[test]
    fn application_of_hypotheses() {
        assert_eq!(count("(a ->> b) ->> a ->> b", Mode::Ordered), (1, false));
        assert_eq!(count("a ->> (a ->> b) ->> b", Mode::Ordered), (0, false));
        assert_eq!(count("a ->> (a \\ b) ->> b", Mode::Ordered), (1, false));
    }

    #[test]
    fn positive_results_are_bound() {
        let ty = parse_type("(a ->> b * c) ->> a ->> c % b").unwrap();
        let e = enumerate_inhabitants(&ty, Mode::Ordered, SearchBudget::default()).unwrap();
        assert_eq!(
            e.terms.len(),
            1,
            "{:?}",
            e.terms.iter().map(pretty_expr).collect::<Vec<_>>()
        );
        let sig = Signature::new();
        assert!(check_expr(&[], &[], &[], &e.terms[0], &ty, Mode::Ordered, &sig).accepted);
    }

    #[test]
    fn unbounded_search_is_flagged() {
        let (_, truncated) = count("(a -> a) -> a -> a", Mode::Unrestricted);
        assert!(truncated);
    }

    #[test]
    fn named_types_are_refused() {
        let ty = TypeExpr::named("llist", vec![TypeExpr::var("a")]);
        assert!(enumerate_inhabitants(&ty, Mode::Ordered, SearchBudget::default()).is_err());
    }
}
