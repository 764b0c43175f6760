//! The logical predicate `m ⊩ v ∈ [A]` and finite probing of function types.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::algebra::{AlgebraKind, Element, Generator, ResourceAlgebra};
use super::SemanticsError;
use crate::check::Hyp;
use crate::eval::{Evaluator, Value, DEFAULT_FUEL};
use crate::syntax::{pretty_type, ArrowKind, AtomId, Signature, TypeExpr};
use crate::types::unfold;

/// An uninterpreted function admitted into a relation: `SymApp(head, args)`
/// is related to `m` when the arguments carry resources that compose to `m`
/// the way the parameter arrows prescribe, starting from `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeadRule {
    pub head: AtomId,
    pub base: Element,
    pub params: Vec<(ArrowKind, TypeExpr)>,
}

/// The relation assigned to one type variable.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Relation {
    pub pairs: Vec<(Element, Value)>,
    pub heads: Vec<HeadRule>,
}

impl Relation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Element, Value)>) -> Self {
        Relation {
            pairs: pairs.into_iter().collect(),
            heads: Vec::new(),
        }
    }
}

/// The map S from type variables to relations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Interpretation {
    rels: BTreeMap<String, Relation>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: &str, rel: Relation) -> Self {
        self.insert(var, rel);
        self
    }

    pub fn insert(&mut self, var: &str, rel: Relation) {
        self.rels.insert(var.to_string(), rel);
    }

    pub fn get(&self, var: &str) -> Option<&Relation> {
        self.rels.get(var)
    }

    pub fn get_mut(&mut self, var: &str) -> Option<&mut Relation> {
        self.rels.get_mut(var)
    }

    /// Every atom acting as a function head in some relation.
    pub fn heads(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.rels
            .values()
            .flat_map(|r| r.heads.iter().map(|h| h.head))
    }
}

/// Path to the point where membership failed, outermost step first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub frames: Vec<String>,
}

impl Failure {
    fn leaf(msg: String) -> Self {
        Failure { frames: vec![msg] }
    }

    fn within(mut self, frame: String) -> Self {
        self.frames.insert(0, frame);
        self
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fr) in self.frames.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}{fr}", "  ".repeat(i))?;
        }
        Ok(())
    }
}

/// A signature, an algebra and an interpretation: everything needed to
/// decide the predicate at first-order types.
#[derive(Clone)]
pub struct Model<'a> {
    pub sig: &'a Signature,
    pub alg: &'a dyn ResourceAlgebra,
    pub interp: Interpretation,
}

fn has_negative(ty: &TypeExpr) -> bool {
    match ty {
        TypeExpr::Var(_) | TypeExpr::Unit => false,
        TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => has_negative(a) || has_negative(b),
        TypeExpr::Sum(alts) => alts.values().any(has_negative),
        TypeExpr::Named(_, args) => args.iter().any(has_negative),
        _ => true,
    }
}

impl<'a> Model<'a> {
    pub fn new(sig: &'a Signature, alg: &'a dyn ResourceAlgebra, interp: Interpretation) -> Self {
        Model { sig, alg, interp }
    }

    /// Decides `m ⊩ v ∈ [ty]` for types without arrows or quantifiers.
    pub fn holds(&self, m: &Element, v: &Value, ty: &TypeExpr) -> Result<bool, SemanticsError> {
        match ty {
            TypeExpr::Unit => Ok(m.is_epsilon() && matches!(v, Value::VUnit)),
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let Value::VPair(v1, v2) = v else {
                    return Ok(false);
                };
                let twisted = matches!(ty, TypeExpr::Twist(..));
                for (x, y) in self.alg.splits(m) {
                    let (m1, m2) = if twisted { (y, x) } else { (x, y) };
                    if self.holds(&m1, v1, a)? && self.holds(&m2, v2, b)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            TypeExpr::Sum(alts) => match v {
                Value::VInj(l, payload) => match alts.get(l) {
                    Some(t) => self.holds(m, payload, t),
                    None => Ok(false),
                },
                _ => Ok(false),
            },
            TypeExpr::Named(name, args) => {
                let body = unfold(name, args, self.sig)?;
                self.holds(m, v, &body)
            }
            TypeExpr::Var(a) => {
                let rel = self
                    .interp
                    .get(a)
                    .ok_or_else(|| SemanticsError::UnboundTypeVariable(a.clone()))?;
                if rel.pairs.iter().any(|(k, w)| k == m && w == v) {
                    return Ok(true);
                }
                if let Value::SymApp(h, args) = v {
                    for rule in rel
                        .heads
                        .iter()
                        .filter(|r| r.head == *h && r.params.len() == args.len())
                    {
                        if self.head_holds(m, args, &rule.params, &rule.base)? {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
            TypeExpr::Over(..)
            | TypeExpr::Under(..)
            | TypeExpr::Lolli(..)
            | TypeExpr::UArrow(..)
            | TypeExpr::Forall(..) => Err(SemanticsError::UnsupportedType(pretty_type(ty))),
        }
    }

    fn head_holds(
        &self,
        m: &Element,
        args: &[Value],
        params: &[(ArrowKind, TypeExpr)],
        base: &Element,
    ) -> Result<bool, SemanticsError> {
        let Some((last, init)) = args.split_last() else {
            return Ok(m == base);
        };
        let (kind, ty) = &params[init.len()];
        let params = &params[..init.len()];
        if *kind == ArrowKind::Unrestricted {
            return Ok(self.holds(&Element::epsilon(), last, ty)?
                && self.head_holds(m, init, params, base)?);
        }
        for (x, y) in self.alg.splits(m) {
            let (rest, k) = if *kind == ArrowKind::Under {
                (y, x)
            } else {
                (x, y)
            };
            if self.holds(&k, last, ty)? && self.head_holds(&rest, init, params, base)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Like [`Model::holds`], explaining a negative answer.
    pub fn explain(
        &self,
        m: &Element,
        v: &Value,
        ty: &TypeExpr,
    ) -> Result<Option<Failure>, SemanticsError> {
        if self.holds(m, v, ty)? {
            return Ok(None);
        }
        let head = format!("{m} does not realize {v} at {}", pretty_type(ty));
        let detail = match (ty, v) {
            (TypeExpr::Unit, _) => {
                Some("the unit clause needs resource ε and value ()".to_string())
            }
            (TypeExpr::Fuse(..) | TypeExpr::Twist(..), Value::VPair(..)) => {
                let order = if matches!(ty, TypeExpr::Fuse(..)) {
                    "m1·m2"
                } else {
                    "m2·m1"
                };
                let tried: Vec<String> = self
                    .alg
                    .splits(m)
                    .iter()
                    .map(|(x, y)| format!("{x} | {y}"))
                    .collect();
                Some(format!(
                    "no split of {m} as {order} works; tried {}",
                    tried.join(", ")
                ))
            }
            (TypeExpr::Sum(alts), Value::VInj(l, payload)) if alts.contains_key(l) => {
                return Ok(self.explain(m, payload, &alts[l])?.map(|f| f.within(head)));
            }
            (TypeExpr::Named(name, args), _) => {
                let body = unfold(name, args, self.sig)?;
                return Ok(self.explain(m, v, &body)?.map(|f| f.within(head)));
            }
            (TypeExpr::Var(a), _) => Some(format!("({m}, {v}) is not in the relation for {a}")),
            _ => Some("value has the wrong shape".to_string()),
        };
        let mut f = Failure::leaf(head);
        f.frames.extend(detail);
        Ok(Some(f))
    }
}

/// Decides `m ⊩ v ∈ [ty]` under `s`.
pub fn predicate_value(
    m: &Element,
    v: &Value,
    ty: &TypeExpr,
    s: &Interpretation,
    sig: &Signature,
    alg: &dyn ResourceAlgebra,
) -> Result<bool, SemanticsError> {
    Model::new(sig, alg, s.clone()).holds(m, v, ty)
}

/// The relation `{(k, w) | k ⊩ w ∈ [ty]}` restricted to a finite universe.
pub fn make_relation_from_type(
    ty: &TypeExpr,
    universe: &[(Element, Value)],
    model: &Model<'_>,
) -> Result<Relation, SemanticsError> {
    let mut pairs = Vec::new();
    for (k, w) in universe {
        if model.holds(k, w, ty)? {
            pairs.push((k.clone(), w.clone()));
        }
    }
    Ok(Relation::from_pairs(pairs))
}

/// Bounds for probe generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    /// Generator-backed atoms related to each instantiated type variable.
    pub atoms_per_variable: usize,
    /// Atoms related at ε to each instantiated type variable.
    pub epsilon_atoms: usize,
    /// Unfoldings of named types allowed when building probe values.
    pub unfold_depth: usize,
    /// Probe values kept per type.
    pub max_probes: usize,
    /// Fuel for each single application.
    pub fuel: u64,
    /// Overrides the algebra that the mode would pick.
    pub algebra: Option<AlgebraKind>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            atoms_per_variable: 2,
            epsilon_atoms: 1,
            unfold_depth: 5,
            max_probes: 32,
            fuel: DEFAULT_FUEL,
            algebra: None,
        }
    }
}

/// Membership at arbitrary types: first-order types are decided by the
/// model, function types are probed with finitely many arguments, and
/// quantifiers are instantiated with fresh relations.
pub struct Prober<'a> {
    pub model: Model<'a>,
    evaluator: Evaluator,
    config: ProbeConfig,
    next_gen: Generator,
    next_atom: u32,
    applications: usize,
    memo: HashMap<(TypeExpr, usize), Vec<(Element, Value)>>,
}

fn thin<T: Clone>(items: Vec<T>, cap: usize) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let n = items.len();
    (0..cap).map(|i| items[i * n / cap].clone()).collect()
}

impl<'a> Prober<'a> {
    pub fn new(model: Model<'a>, evaluator: Evaluator, config: ProbeConfig) -> Self {
        let mut evaluator = evaluator;
        for h in model.interp.heads() {
            evaluator.register_head(h);
        }
        Prober {
            model,
            evaluator,
            config,
            next_gen: 1,
            next_atom: 1,
            applications: 0,
            memo: HashMap::new(),
        }
    }

    /// Keeps freshly minted generators and atoms clear of those already used.
    pub fn reserve(&mut self, generators: Generator, atoms: u32) {
        self.next_gen = self.next_gen.max(generators + 1);
        self.next_atom = self.next_atom.max(atoms + 1);
    }

    pub fn applications(&self) -> usize {
        self.applications
    }

    pub fn fresh_atom(&mut self) -> AtomId {
        let a = AtomId(self.next_atom);
        self.next_atom += 1;
        a
    }

    pub fn fresh_generator(&mut self) -> Element {
        let g = self.next_gen;
        self.next_gen += 1;
        self.model.alg.generator(g)
    }

    /// Binds `var` to a fresh relation pairing new generators with new atoms.
    pub fn instantiate(&mut self, var: &str) {
        let mut pairs = Vec::new();
        for _ in 0..self.config.atoms_per_variable {
            let g = self.fresh_generator();
            let a = self.fresh_atom();
            pairs.push((g, Value::Atom(a)));
        }
        for _ in 0..self.config.epsilon_atoms {
            let a = self.fresh_atom();
            pairs.push((Element::epsilon(), Value::Atom(a)));
        }
        self.model.interp.insert(var, Relation::from_pairs(pairs));
        self.memo.clear();
    }

    /// Values known to satisfy `[ty]`, each with its resource.
    pub fn universe(&mut self, ty: &TypeExpr) -> Result<Vec<(Element, Value)>, SemanticsError> {
        let depth = self.config.unfold_depth;
        self.universe_at(ty, depth)
    }

    fn universe_at(
        &mut self,
        ty: &TypeExpr,
        depth: usize,
    ) -> Result<Vec<(Element, Value)>, SemanticsError> {
        let key = (ty.clone(), depth);
        if let Some(u) = self.memo.get(&key) {
            return Ok(u.clone());
        }
        let cap = self.config.max_probes;
        let alg = self.model.alg;
        let out = match ty {
            TypeExpr::Unit => vec![(Element::epsilon(), Value::VUnit)],
            TypeExpr::Var(a) => {
                let rel = self
                    .model
                    .interp
                    .get(a)
                    .ok_or_else(|| SemanticsError::UnboundTypeVariable(a.clone()))?;
                rel.pairs.clone()
            }
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let twisted = matches!(ty, TypeExpr::Twist(..));
                let ua = self.universe_at(a, depth)?;
                let ub = self.universe_at(b, depth)?;
                let mut out = Vec::with_capacity(ua.len() * ub.len());
                for (m1, v1) in &ua {
                    for (m2, v2) in &ub {
                        let m = if twisted {
                            alg.op(m2, m1)
                        } else {
                            alg.op(m1, m2)
                        };
                        out.push((m, Value::pair(v1.clone(), v2.clone())));
                    }
                }
                thin(out, cap)
            }
            TypeExpr::Sum(alts) => {
                let mut out = Vec::new();
                for (l, t) in alts {
                    for (m, v) in self.universe_at(t, depth)? {
                        out.push((m, Value::inj(l, v)));
                    }
                }
                thin(out, cap)
            }
            TypeExpr::Named(name, args) => {
                if depth == 0 {
                    Vec::new()
                } else {
                    let body = unfold(name, args, self.model.sig)?;
                    self.universe_at(&body, depth - 1)?
                }
            }
            TypeExpr::Over(..)
            | TypeExpr::Under(..)
            | TypeExpr::Lolli(..)
            | TypeExpr::UArrow(..) => {
                vec![(Element::epsilon(), self.symbolic_function(ty)?)]
            }
            TypeExpr::Forall(..) => return Err(SemanticsError::UnsupportedType(pretty_type(ty))),
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// A fresh head standing for an arbitrary function of type `ty`, whose
    /// final result must be a type variable.
    fn symbolic_function(&mut self, ty: &TypeExpr) -> Result<Value, SemanticsError> {
        let mut params = Vec::new();
        let mut cur = ty;
        while let Some((kind, arg, res)) = cur.as_arrow() {
            if has_negative(arg) {
                return Err(SemanticsError::UnsupportedType(pretty_type(ty)));
            }
            params.push((kind, arg.clone()));
            cur = res;
        }
        let TypeExpr::Var(result) = cur else {
            return Err(SemanticsError::UnsupportedType(pretty_type(ty)));
        };
        let head = self.fresh_atom();
        let rule = HeadRule {
            head,
            base: Element::epsilon(),
            params,
        };
        self.model
            .interp
            .get_mut(result)
            .ok_or_else(|| SemanticsError::UnboundTypeVariable(result.clone()))?
            .heads
            .push(rule);
        self.evaluator.register_head(head);
        Ok(Value::Atom(head))
    }

    /// Checks `m ⊩ v ∈ [ty]` at any supported type.
    pub fn member(
        &mut self,
        m: &Element,
        v: &Value,
        ty: &TypeExpr,
    ) -> Result<Option<Failure>, SemanticsError> {
        if !has_negative(ty) {
            return self.model.explain(m, v, ty);
        }
        match ty {
            TypeExpr::Forall(a, body) => {
                self.instantiate(a);
                self.member(m, v, body)
            }
            TypeExpr::Over(..)
            | TypeExpr::Under(..)
            | TypeExpr::Lolli(..)
            | TypeExpr::UArrow(..) => {
                let (kind, arg, _) = ty.as_arrow().expect("arrow");
                let mut probes = self.universe(arg)?;
                if kind == ArrowKind::Unrestricted {
                    probes.retain(|(k, _)| k.is_epsilon());
                }
                self.probe_function(m, v, ty, &probes)
            }
            TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
                let Value::VPair(v1, v2) = v else {
                    return Ok(Some(Failure::leaf(format!(
                        "{v} is not a pair at {}",
                        pretty_type(ty)
                    ))));
                };
                let twisted = matches!(ty, TypeExpr::Twist(..));
                let mut last = None;
                for (x, y) in self.model.alg.splits(m) {
                    let (m1, m2) = if twisted { (y, x) } else { (x, y) };
                    let f = match self.member(&m1, v1, a)? {
                        None => self.member(&m2, v2, b)?,
                        some => some,
                    };
                    match f {
                        None => return Ok(None),
                        Some(f) => last = Some(f),
                    }
                }
                let head = format!("no split of {m} realizes {v} at {}", pretty_type(ty));
                Ok(Some(match last {
                    Some(f) => f.within(head),
                    None => Failure::leaf(head),
                }))
            }
            TypeExpr::Sum(alts) => match v {
                Value::VInj(l, payload) if alts.contains_key(l) => {
                    let t = alts[l].clone();
                    self.member(m, payload, &t)
                }
                _ => Ok(Some(Failure::leaf(format!(
                    "{v} is not an injection into {}",
                    pretty_type(ty)
                )))),
            },
            TypeExpr::Var(_) | TypeExpr::Unit | TypeExpr::Named(..) => unreachable!("first-order"),
        }
    }

    /// Applies `f` to each probe `(k, w)` and checks the result at the arrow's
    /// result type, with resource `m·k` (over, lolli), `k·m` (under), or `m`
    /// (unrestricted).
    pub fn probe_function(
        &mut self,
        m: &Element,
        f: &Value,
        ty: &TypeExpr,
        probes: &[(Element, Value)],
    ) -> Result<Option<Failure>, SemanticsError> {
        let (kind, _, res) = ty
            .as_arrow()
            .ok_or_else(|| SemanticsError::UnsupportedType(pretty_type(ty)))?;
        let res = res.clone();
        let alg = self.model.alg;
        for (k, w) in probes {
            let r = match kind {
                ArrowKind::Over | ArrowKind::Lolli => alg.op(m, k),
                ArrowKind::Under => alg.op(k, m),
                ArrowKind::Unrestricted => m.clone(),
            };
            self.evaluator.refuel(self.config.fuel);
            self.applications += 1;
            let out = self
                .evaluator
                .apply(f, w)
                .map_err(|e| SemanticsError::ProbeFailure {
                    argument: w.to_string(),
                    source: e,
                })?;
            if let Some(fail) = self.member(&r, &out, &res)? {
                let frame = format!("applied to {w} (resource {k}) giving {out}, needed at {r}");
                return Ok(Some(fail.within(frame)));
            }
        }
        Ok(None)
    }
}

/// Checks a function value against an arrow type with explicit argument
/// probes, under `s`.
pub fn probe_function(
    m: &Element,
    f: &Value,
    ty: &TypeExpr,
    s: &Interpretation,
    sig: &Signature,
    alg: &dyn ResourceAlgebra,
    probes: &[(Element, Value)],
) -> Result<bool, SemanticsError> {
    let mut p = Prober::new(
        Model::new(sig, alg, s.clone()),
        Evaluator::new(DEFAULT_FUEL),
        ProbeConfig::default(),
    );
    p.reserve(max_generator(s), max_atom(s));
    Ok(p.probe_function(m, f, ty, probes)?.is_none())
}

fn max_generator(s: &Interpretation) -> Generator {
    s.rels
        .values()
        .flat_map(|r| {
            r.pairs
                .iter()
                .flat_map(|(k, _)| k.generators().iter().copied())
        })
        .max()
        .unwrap_or(0)
}

fn max_atom(s: &Interpretation) -> u32 {
    s.rels
        .values()
        .flat_map(|r| {
            r.pairs
                .iter()
                .flat_map(|(_, v)| v.atoms())
                .chain(r.heads.iter().map(|h| h.head))
        })
        .map(|a| a.0)
        .max()
        .unwrap_or(0)
}

/// Values for the variables of an unrestricted and an ordered context; each
/// ordered binding carries its own resource.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClosingEnv {
    pub unrestricted: Vec<(String, Value)>,
    pub ordered: Vec<(String, Element, Value)>,
}

impl ClosingEnv {
    /// The resources of the ordered bindings composed left to right.
    pub fn resource(&self, alg: &dyn ResourceAlgebra) -> Element {
        self.ordered
            .iter()
            .fold(alg.unit(), |acc, (_, k, _)| alg.op(&acc, k))
    }
}

/// Decides `ε ⊩ θ ∈ [Γ]` and `m ⊩ η ∈ [Ω]` for the two halves of `env`.
pub fn predicate_env(
    env: &ClosingEnv,
    m: &Element,
    gamma: &[Hyp],
    omega: &[Hyp],
    s: &Interpretation,
    sig: &Signature,
    alg: &dyn ResourceAlgebra,
) -> Result<bool, SemanticsError> {
    let mut env_u: Vec<&str> = env.unrestricted.iter().map(|(x, _)| x.as_str()).collect();
    let mut ctx_u: Vec<&str> = gamma.iter().map(|(x, _)| x.as_str()).collect();
    env_u.sort_unstable();
    ctx_u.sort_unstable();
    if env_u != ctx_u {
        return Err(SemanticsError::CoverageMismatch(format!(
            "unrestricted bindings {env_u:?} against context {ctx_u:?}"
        )));
    }
    let env_o: Vec<&str> = env.ordered.iter().map(|(x, _, _)| x.as_str()).collect();
    let ctx_o: Vec<&str> = omega.iter().map(|(x, _)| x.as_str()).collect();
    if env_o != ctx_o {
        return Err(SemanticsError::CoverageMismatch(format!(
            "ordered bindings {env_o:?} against context {ctx_o:?}"
        )));
    }
    if env.resource(alg) != alg.element(m.generators().to_vec()) {
        return Ok(false);
    }
    let mut p = Prober::new(
        Model::new(sig, alg, s.clone()),
        Evaluator::new(DEFAULT_FUEL),
        ProbeConfig::default(),
    );
    p.reserve(max_generator(s), max_atom(s));
    for (x, v) in &env.unrestricted {
        let ty = &gamma.iter().find(|(y, _)| y == x).expect("covered").1;
        if p.member(&Element::epsilon(), v, ty)?.is_some() {
            return Ok(false);
        }
    }
    for ((_, k, v), (_, ty)) in env.ordered.iter().zip(omega) {
        if p.member(k, v, ty)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
