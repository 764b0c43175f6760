//! Type-level algorithms: substitution, unfolding, equirecursive equality and
//! signature validation.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::check::Mode;
use crate::syntax::{Signature, TypeExpr};

/// Finite map from type variables to types.
pub type TypeSubst = BTreeMap<String, TypeExpr>;

/// Upper bound on the number of name-pair assumptions explored by
/// [`type_equal`] before it gives up and answers `false`.
pub const EQUALITY_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
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
    #[error("empty sum type")]
    EmptySum,
}

impl TypeError {
    /// The type definition the error is about, if any.
    pub fn definition(&self) -> Option<&str> {
        match self {
            TypeError::UnknownTypeName(_) | TypeError::EmptySum => None,
            TypeError::ArityMismatch { name, .. } => Some(name),
            TypeError::NonContractive(n) | TypeError::NotPurelyPositive(n) => Some(n),
            TypeError::UnboundTypeVariable { def, .. } => Some(def),
        }
    }
}

pub fn free_type_vars(ty: &TypeExpr) -> BTreeSet<String> {
    fn go(ty: &TypeExpr, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match ty {
            TypeExpr::Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            TypeExpr::Unit => {}
            TypeExpr::Fuse(a, b)
            | TypeExpr::Twist(a, b)
            | TypeExpr::Under(a, b)
            | TypeExpr::Over(a, b)
            | TypeExpr::Lolli(a, b)
            | TypeExpr::UArrow(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            TypeExpr::Sum(alts) => alts.values().for_each(|t| go(t, bound, out)),
            TypeExpr::Named(_, args) => args.iter().for_each(|t| go(t, bound, out)),
            TypeExpr::Forall(a, body) => {
                bound.push(a.clone());
                go(body, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(ty, &mut Vec::new(), &mut out);
    out
}

/// Appends primes to `base` until it avoids every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &impl Fn(&str) -> bool) -> String {
    let mut name = format!("{base}'");
    while avoid(&name) {
        name.push('\'');
    }
    name
}

fn map_children(ty: &TypeExpr, f: &mut impl FnMut(&TypeExpr) -> TypeExpr) -> TypeExpr {
    match ty {
        TypeExpr::Var(_) | TypeExpr::Unit => ty.clone(),
        TypeExpr::Fuse(a, b) => TypeExpr::fuse(f(a), f(b)),
        TypeExpr::Twist(a, b) => TypeExpr::twist(f(a), f(b)),
        TypeExpr::Under(a, b) => TypeExpr::under(f(a), f(b)),
        TypeExpr::Over(a, b) => TypeExpr::over(f(a), f(b)),
        TypeExpr::Lolli(a, b) => TypeExpr::lolli(f(a), f(b)),
        TypeExpr::UArrow(a, b) => TypeExpr::uarrow(f(a), f(b)),
        TypeExpr::Sum(alts) => TypeExpr::Sum(alts.iter().map(|(l, t)| (l.clone(), f(t))).collect()),
        TypeExpr::Named(n, args) => TypeExpr::Named(n.clone(), args.iter().map(f).collect()),
        TypeExpr::Forall(a, body) => TypeExpr::Forall(a.clone(), Box::new(f(body))),
    }
}

/// Capture-avoiding simultaneous substitution.
pub fn subst_type(theta: &TypeSubst, ty: &TypeExpr) -> TypeExpr {
    match ty {
        TypeExpr::Var(a) => theta.get(a).cloned().unwrap_or_else(|| ty.clone()),
        TypeExpr::Forall(a, body) => {
            let mut inner = theta.clone();
            inner.remove(a);
            if inner.is_empty() {
                return ty.clone();
            }
            let body_fv = free_type_vars(body);
            let captured = inner
                .iter()
                .any(|(v, t)| body_fv.contains(v) && free_type_vars(t).contains(a));
            if captured {
                let range_fv: BTreeSet<String> = inner.values().flat_map(free_type_vars).collect();
                let fresh = fresh_name(a, &|n: &str| {
                    range_fv.contains(n) || body_fv.contains(n) || inner.contains_key(n)
                });
                inner.insert(a.clone(), TypeExpr::Var(fresh.clone()));
                TypeExpr::Forall(fresh, Box::new(subst_type(&inner, body)))
            } else {
                TypeExpr::Forall(a.clone(), Box::new(subst_type(&inner, body)))
            }
        }
        _ => map_children(ty, &mut |t| subst_type(theta, t)),
    }
}

/// Substitutes a single variable.
pub fn subst_one(var: &str, by: &TypeExpr, ty: &TypeExpr) -> TypeExpr {
    subst_type(&TypeSubst::from([(var.to_string(), by.clone())]), ty)
}

/// Renames quantifier binders that shadow an enclosing binder or a free
/// variable of the whole type.
pub fn freshen_binders(ty: &TypeExpr) -> TypeExpr {
    fn go(ty: &TypeExpr, taken: &mut BTreeSet<String>) -> TypeExpr {
        match ty {
            TypeExpr::Forall(a, body) => {
                if taken.contains(a) {
                    let fresh = fresh_name(a, &|n: &str| {
                        taken.contains(n) || free_type_vars(body).contains(n)
                    });
                    let renamed = subst_one(a, &TypeExpr::Var(fresh.clone()), body);
                    taken.insert(fresh.clone());
                    let inner = go(&renamed, taken);
                    taken.remove(&fresh);
                    TypeExpr::Forall(fresh, Box::new(inner))
                } else {
                    taken.insert(a.clone());
                    let inner = go(body, taken);
                    taken.remove(a);
                    TypeExpr::Forall(a.clone(), Box::new(inner))
                }
            }
            _ => map_children(ty, &mut |t| go(t, taken)),
        }
    }
    let mut taken = free_type_vars(ty);
    go(ty, &mut taken)
}

/// Replaces a named type by its definition body with the arguments
/// substituted for the parameters.
pub fn unfold(name: &str, args: &[TypeExpr], sig: &Signature) -> Result<TypeExpr, TypeError> {
    let def = sig
        .get(name)
        .ok_or_else(|| TypeError::UnknownTypeName(name.to_string()))?;
    if def.params.len() != args.len() {
        return Err(TypeError::ArityMismatch {
            name: name.to_string(),
            expected: def.params.len(),
            found: args.len(),
        });
    }
    let theta: TypeSubst = def
        .params
        .iter()
        .cloned()
        .zip(args.iter().cloned())
        .collect();
    Ok(subst_type(&theta, &def.body))
}

/// Unfolds named types at the root until the root is a structural constructor.
pub fn whnf(ty: &TypeExpr, sig: &Signature) -> Result<TypeExpr, TypeError> {
    let mut cur = ty.clone();
    let mut steps = 0;
    while let TypeExpr::Named(n, args) = &cur {
        steps += 1;
        if steps > sig.len() + 1 {
            return Err(TypeError::NonContractive(n.clone()));
        }
        cur = unfold(n, args, sig)?;
    }
    Ok(cur)
}

/// Head constructor after applying the collapse of `mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Head {
    Var,
    Unit,
    Sum,
    Forall,
    Pair(u8),
    Arrow(u8),
}

fn head(ty: &TypeExpr, mode: Mode) -> Head {
    let pair = |k: u8| {
        if mode == Mode::Ordered {
            Head::Pair(k)
        } else {
            Head::Pair(0)
        }
    };
    let arrow = |k: u8| match mode {
        Mode::Ordered => Head::Arrow(k),
        Mode::Linear if k < 3 => Head::Arrow(0),
        Mode::Linear => Head::Arrow(3),
        Mode::Unrestricted => Head::Arrow(3),
    };
    match ty {
        TypeExpr::Var(_) => Head::Var,
        TypeExpr::Unit => Head::Unit,
        TypeExpr::Sum(_) => Head::Sum,
        TypeExpr::Forall(..) => Head::Forall,
        TypeExpr::Fuse(..) => pair(0),
        TypeExpr::Twist(..) => pair(1),
        TypeExpr::Under(..) => arrow(0),
        TypeExpr::Over(..) => arrow(1),
        TypeExpr::Lolli(..) => arrow(2),
        TypeExpr::UArrow(..) => arrow(3),
        TypeExpr::Named(..) => unreachable!("named types are unfolded before comparison"),
    }
}

/// Maps a type to its image under the collapse of `mode`: in linear mode all
/// ordered arrows become `-o` and twists become fuses; in unrestricted mode
/// every arrow becomes `->`.
pub fn collapse(ty: &TypeExpr, mode: Mode) -> TypeExpr {
    let ty = map_children(ty, &mut |t| collapse(t, mode));
    match (mode, ty) {
        (Mode::Ordered, t) => t,
        (_, TypeExpr::Twist(a, b)) => TypeExpr::Fuse(a, b),
        (Mode::Linear, TypeExpr::Under(a, b) | TypeExpr::Over(a, b)) => TypeExpr::Lolli(a, b),
        (
            Mode::Unrestricted,
            TypeExpr::Under(a, b) | TypeExpr::Over(a, b) | TypeExpr::Lolli(a, b),
        ) => TypeExpr::UArrow(a, b),
        (_, t) => t,
    }
}

/// Equirecursive type equality with no identification of connectives.
pub fn type_equal(a: &TypeExpr, b: &TypeExpr, sig: &Signature) -> bool {
    type_equal_in(a, b, sig, Mode::Ordered)
}

/// Equirecursive type equality up to the connective identifications of `mode`.
pub fn type_equal_in(a: &TypeExpr, b: &TypeExpr, sig: &Signature, mode: Mode) -> bool {
    let mut eq = Bisim {
        sig,
        mode,
        seen: HashSet::new(),
        fresh: 0,
    };
    eq.equal(a, b).unwrap_or(false)
}

struct Bisim<'s> {
    sig: &'s Signature,
    mode: Mode,
    seen: HashSet<(TypeExpr, TypeExpr)>,
    fresh: usize,
}

impl Bisim<'_> {
    /// `None` when the budget is exhausted or a name is undefined.
    fn equal(&mut self, a: &TypeExpr, b: &TypeExpr) -> Option<bool> {
        if a == b {
            return Some(true);
        }
        if matches!(a, TypeExpr::Named(..)) || matches!(b, TypeExpr::Named(..)) {
            let key = (a.clone(), b.clone());
            if self.seen.contains(&key) {
                return Some(true);
            }
            if self.seen.len() >= EQUALITY_BUDGET {
                return None;
            }
            self.seen.insert(key);
            let a = whnf(a, self.sig).ok()?;
            let b = whnf(b, self.sig).ok()?;
            return self.equal(&a, &b);
        }
        if head(a, self.mode) != head(b, self.mode) {
            return Some(false);
        }
        match (a, b) {
            (TypeExpr::Var(x), TypeExpr::Var(y)) => Some(x == y),
            (TypeExpr::Unit, TypeExpr::Unit) => Some(true),
            (TypeExpr::Sum(xs), TypeExpr::Sum(ys)) => {
                if xs.len() != ys.len() || xs.keys().ne(ys.keys()) {
                    return Some(false);
                }
                for (x, y) in xs.values().zip(ys.values()) {
                    if !self.equal(x, y)? {
                        return Some(false);
                    }
                }
                Some(true)
            }
            (TypeExpr::Forall(x, p), TypeExpr::Forall(y, q)) => {
                self.fresh += 1;
                let z = TypeExpr::Var(format!("%{}", self.fresh));
                let p = subst_one(x, &z, p);
                let q = subst_one(y, &z, q);
                self.equal(&p, &q)
            }
            _ => {
                let (a1, a2) = children(a);
                let (b1, b2) = children(b);
                Some(self.equal(a1, b1)? && self.equal(a2, b2)?)
            }
        }
    }
}

fn children(ty: &TypeExpr) -> (&TypeExpr, &TypeExpr) {
    match ty {
        TypeExpr::Fuse(a, b)
        | TypeExpr::Twist(a, b)
        | TypeExpr::Under(a, b)
        | TypeExpr::Over(a, b)
        | TypeExpr::Lolli(a, b)
        | TypeExpr::UArrow(a, b) => (a, b),
        _ => unreachable!("binary constructor expected"),
    }
}

/// True iff `ty` is built from fuse, twist, unit, sums and references to
/// purely positive definitions applied to purely positive arguments.
pub fn is_purely_positive(ty: &TypeExpr, sig: &Signature) -> bool {
    fn go<'a>(ty: &'a TypeExpr, sig: &'a Signature, visiting: &mut Vec<&'a str>) -> bool {
        match ty {
            TypeExpr::Var(_) | TypeExpr::Unit => true,
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                go(a, sig, visiting) && go(b, sig, visiting)
            }
            TypeExpr::Sum(alts) => alts.values().all(|t| go(t, sig, visiting)),
            TypeExpr::Named(n, args) => {
                if !args.iter().all(|t| go(t, sig, visiting)) {
                    return false;
                }
                if visiting.contains(&n.as_str()) {
                    return true;
                }
                let Some(def) = sig.get(n) else { return false };
                visiting.push(n);
                let ok = go(&def.body, sig, visiting);
                visiting.pop();
                ok
            }
            _ => false,
        }
    }
    go(ty, sig, &mut Vec::new())
}

/// True iff no definition body is itself a type name.
pub fn is_contractive(sig: &Signature) -> bool {
    sig.defs()
        .iter()
        .all(|d| !matches!(d.body, TypeExpr::Named(..)))
}

/// Checks that every definition is contractive, purely positive, closed
/// over its parameters, free of quantifiers and refers only to defined
/// names at the right arity.
pub fn validate_signature(sig: &Signature) -> Result<(), TypeError> {
    for def in sig.defs() {
        if matches!(def.body, TypeExpr::Named(..)) {
            return Err(TypeError::NonContractive(def.name.clone()));
        }
        check_names(&def.body, sig)?;
        if let Some(var) = free_type_vars(&def.body)
            .into_iter()
            .find(|v| !def.params.contains(v))
        {
            return Err(TypeError::UnboundTypeVariable {
                def: def.name.clone(),
                var,
            });
        }
        if !is_purely_positive(&def.body, sig) {
            return Err(TypeError::NotPurelyPositive(def.name.clone()));
        }
    }
    Ok(())
}

/// Checks that every named reference in `ty` is defined with matching arity
/// and every sum is nonempty.
pub fn check_names(ty: &TypeExpr, sig: &Signature) -> Result<(), TypeError> {
    match ty {
        TypeExpr::Var(_) | TypeExpr::Unit => Ok(()),
        TypeExpr::Fuse(a, b)
        | TypeExpr::Twist(a, b)
        | TypeExpr::Under(a, b)
        | TypeExpr::Over(a, b)
        | TypeExpr::Lolli(a, b)
        | TypeExpr::UArrow(a, b) => {
            check_names(a, sig)?;
            check_names(b, sig)
        }
        TypeExpr::Sum(alts) => {
            if alts.is_empty() {
                return Err(TypeError::EmptySum);
            }
            alts.values().try_for_each(|t| check_names(t, sig))
        }
        TypeExpr::Forall(_, body) => check_names(body, sig),
        TypeExpr::Named(n, args) => {
            let def = sig
                .get(n)
                .ok_or_else(|| TypeError::UnknownTypeName(n.clone()))?;
            if def.params.len() != args.len() {
                return Err(TypeError::ArityMismatch {
                    name: n.clone(),
                    expected: def.params.len(),
                    found: args.len(),
                });
            }
            args.iter().try_for_each(|t| check_names(t, sig))
        }
    }
}
