//! Bounded, extensional checks of free theorems: a declaration whose type
//! matches a theorem's template is run on inputs built from fresh atoms and
//! its output is compared with what the theorem predicts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::check::{check_program, Mode};
use crate::eval::{EvalError, Evaluator, Value, DEFAULT_FUEL};
use crate::semantics::Generator;
use crate::syntax::{
    parse_program, parse_type_in, pretty_type, AtomId, Expr, Program, Signature, TypeDef, TypeExpr,
};
use crate::types::type_equal_in;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremKind {
    ListIdentity,
    ListReversal,
    LinearPermutation,
    TreeInorder,
    TreePreorder,
    TreePostorder,
    FoldUniqueness,
    PairOrder,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 8] = [
        TheoremKind::ListIdentity,
        TheoremKind::ListReversal,
        TheoremKind::LinearPermutation,
        TheoremKind::TreeInorder,
        TheoremKind::TreePreorder,
        TheoremKind::TreePostorder,
        TheoremKind::FoldUniqueness,
        TheoremKind::PairOrder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremKind::ListIdentity => "list-identity",
            TheoremKind::ListReversal => "list-reversal",
            TheoremKind::LinearPermutation => "linear-permutation",
            TheoremKind::TreeInorder => "tree-inorder",
            TheoremKind::TreePreorder => "tree-preorder",
            TheoremKind::TreePostorder => "tree-postorder",
            TheoremKind::FoldUniqueness => "fold-uniqueness",
            TheoremKind::PairOrder => "pair-order",
        }
    }

    /// The mode the theorem is stated in.
    pub fn default_mode(self) -> Mode {
        match self {
            TheoremKind::LinearPermutation => Mode::Linear,
            _ => Mode::Ordered,
        }
    }

    fn template_sources(self) -> &'static [&'static str] {
        match self {
            TheoremKind::ListIdentity => &[
                "all a. llist[a] ->> llist[a]",
                "all a. rlist[a] ->> rlist[a]",
            ],
            TheoremKind::ListReversal => &[
                "all a. rlist[a] ->> llist[a]",
                "all a. llist[a] ->> rlist[a]",
            ],
            TheoremKind::LinearPermutation => &["all a. llist[a] -o llist[a]"],
            TheoremKind::TreeInorder => &["all a. lxrtree[a] ->> llist[a]"],
            TheoremKind::TreePreorder => &["all a. xlrtree[a] ->> llist[a]"],
            TheoremKind::TreePostorder => &["all a. lrxtree[a] ->> llist[a]"],
            TheoremKind::FoldUniqueness => &["all a. all b. (a * b ->> b) -> b -> llist[a] ->> b"],
            TheoremKind::PairOrder => &["all a. a ->> a ->> a * a"],
        }
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const PRELUDE: &str = "\
type llist[a] = +{nil : 1, cons : a * llist[a]}
type rlist[a] = +{nil : 1, cons : a % rlist[a]}
type lxrtree[a] = +{leaf : 1, node : lxrtree[a] * a * lxrtree[a]}
type xlrtree[a] = +{leaf : 1, node : (xlrtree[a] % a) * xlrtree[a]}
type lrxtree[a] = +{leaf : 1, node : lrxtree[a] * (a % lrxtree[a])}
";

/// Prefix keeping the theorem prelude apart from a program's own type
/// names; it cannot occur in a parsed identifier.
const PRELUDE_PREFIX: &str = "std.";

fn qualify(ty: &TypeExpr) -> TypeExpr {
    let q = |t: &TypeExpr| Box::new(qualify(t));
    match ty {
        TypeExpr::Var(_) | TypeExpr::Unit => ty.clone(),
        TypeExpr::Fuse(a, b) => TypeExpr::Fuse(q(a), q(b)),
        TypeExpr::Twist(a, b) => TypeExpr::Twist(q(a), q(b)),
        TypeExpr::Under(a, b) => TypeExpr::Under(q(a), q(b)),
        TypeExpr::Over(a, b) => TypeExpr::Over(q(a), q(b)),
        TypeExpr::Lolli(a, b) => TypeExpr::Lolli(q(a), q(b)),
        TypeExpr::UArrow(a, b) => TypeExpr::UArrow(q(a), q(b)),
        TypeExpr::Sum(alts) => {
            TypeExpr::Sum(alts.iter().map(|(l, t)| (l.clone(), qualify(t))).collect())
        }
        TypeExpr::Forall(a, b) => TypeExpr::Forall(a.clone(), q(b)),
        TypeExpr::Named(n, args) => TypeExpr::Named(
            format!("{PRELUDE_PREFIX}{n}"),
            args.iter().map(qualify).collect(),
        ),
    }
}

struct Prelude {
    plain: Signature,
    qualified: Vec<TypeDef>,
}

fn prelude() -> &'static Prelude {
    static P: OnceLock<Prelude> = OnceLock::new();
    P.get_or_init(|| {
        let plain = parse_program(PRELUDE).expect("prelude parses").signature;
        let qualified = plain
            .defs()
            .iter()
            .map(|d| TypeDef {
                name: format!("{PRELUDE_PREFIX}{}", d.name),
                params: d.params.clone(),
                body: qualify(&d.body),
            })
            .collect();
        Prelude { plain, qualified }
    })
}

/// A theorem together with the mode it is checked in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremSpec {
    pub kind: TheoremKind,
    /// Any one of these types admits the theorem.
    pub templates: Vec<TypeExpr>,
    pub mode: Mode,
}

impl TheoremSpec {
    pub fn new(kind: TheoremKind, mode: Mode) -> Self {
        let templates = kind
            .template_sources()
            .iter()
            .map(|src| qualify(&parse_type_in(src, &prelude().plain).expect("template parses")))
            .collect();
        TheoremSpec {
            kind,
            templates,
            mode,
        }
    }

    /// Templates printed with their prelude type names.
    pub fn template_text(&self) -> Vec<String> {
        self.kind
            .template_sources()
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    /// Index of the template `ty` matches, up to equirecursive equality in
    /// the spec's mode.
    pub fn matching_template(&self, ty: &TypeExpr, sig: &Signature) -> Option<usize> {
        let mut merged = sig.clone();
        for d in &prelude().qualified {
            merged.push(d.clone());
        }
        self.templates
            .iter()
            .position(|t| type_equal_in(ty, t, &merged, self.mode))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("no declaration named `{0}`")]
    UnknownDeclaration(String),
    #[error("declared type `{found}` matches no template of {kind} (expected one of: {expected})")]
    TemplateMismatch {
        kind: TheoremKind,
        found: String,
        expected: String,
    },
    #[error("malformed tree value: {0}")]
    MalformedTree(String),
}

/// One trial whose output disagreed with the prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub input: String,
    pub actual: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub program: String,
    pub kind: TheoremKind,
    pub mode: Mode,
    pub typechecked: bool,
    pub trials: usize,
    pub failures: Vec<TrialFailure>,
    /// For pair-order: which pair functions were observed, e.g. `(x, y)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub realized: Vec<String>,
}

impl TheoremReport {
    pub fn clean(&self) -> bool {
        self.typechecked && self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialConfig {
    pub trials: usize,
    /// Longest list, or largest tree in nodes.
    pub max_len: usize,
    pub seed: u64,
    pub fuel: u64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            trials: 20,
            max_len: 6,
            seed: 0x5eed,
            fuel: DEFAULT_FUEL,
        }
    }
}

/// `n` fresh generators paired with fresh atoms, numbered from 1.
pub fn make_atoms(n: usize) -> Vec<(Generator, AtomId)> {
    (1..=n as u32).map(|i| (i, AtomId(i))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraversalOrder {
    In,
    Pre,
    Post,
}

fn tree_node(v: &Value) -> Result<Option<(&Value, AtomId, &Value)>, TheoremError> {
    let bad = || TheoremError::MalformedTree(v.to_string());
    let Value::VInj(l, payload) = v else {
        return Err(bad());
    };
    match (l.as_str(), &**payload) {
        ("leaf", Value::VUnit) => Ok(None),
        ("node", Value::VPair(x, y)) => match (&**x, &**y) {
            (Value::VPair(t1, a), t2) => match &**a {
                Value::Atom(a) => Ok(Some((t1, *a, t2))),
                _ => Err(bad()),
            },
            (t1, Value::VPair(a, t2)) => match &**a {
                Value::Atom(a) => Ok(Some((t1, *a, t2))),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

/// Atoms of a tree value in the given order. Accepts the node layouts
/// `node(l, (x, r))` and `node((l, x), r)`.
pub fn independent_traversal(
    tree: &Value,
    order: TraversalOrder,
) -> Result<Vec<AtomId>, TheoremError> {
    fn go(t: &Value, order: TraversalOrder, out: &mut Vec<AtomId>) -> Result<(), TheoremError> {
        let Some((l, x, r)) = tree_node(t)? else {
            return Ok(());
        };
        if order == TraversalOrder::Pre {
            out.push(x);
        }
        go(l, order, out)?;
        if order == TraversalOrder::In {
            out.push(x);
        }
        go(r, order, out)?;
        if order == TraversalOrder::Post {
            out.push(x);
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(tree, order, &mut out)?;
    Ok(out)
}

pub fn list_value(items: &[Value]) -> Value {
    items
        .iter()
        .rev()
        .fold(Value::inj("nil", Value::VUnit), |acc, v| {
            Value::inj("cons", Value::pair(v.clone(), acc))
        })
}

/// Elements of a `nil`/`cons` list value.
pub fn list_items(v: &Value) -> Option<Vec<Value>> {
    let mut out = Vec::new();
    let mut cur = v;
    loop {
        let Value::VInj(l, payload) = cur else {
            return None;
        };
        match (l.as_str(), &**payload) {
            ("nil", Value::VUnit) => return Some(out),
            ("cons", Value::VPair(h, t)) => {
                out.push((**h).clone());
                cur = t;
            }
            _ => return None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    /// `node(l, (x, r))`
    Right,
    /// `node((l, x), r)`
    Left,
}

enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

fn random_shape(rng: &mut StdRng, n: usize) -> Shape {
    if n == 0 {
        return Shape::Leaf;
    }
    let left = rng.gen_range(0..n);
    Shape::Node(
        Box::new(random_shape(rng, left)),
        Box::new(random_shape(rng, n - 1 - left)),
    )
}

fn label_tree(s: &Shape, layout: Layout, next: &mut u32) -> Value {
    match s {
        Shape::Leaf => Value::inj("leaf", Value::VUnit),
        Shape::Node(l, r) => {
            let lv = label_tree(l, layout, next);
            let x = Value::Atom(AtomId(*next));
            *next += 1;
            let rv = label_tree(r, layout, next);
            let payload = match layout {
                Layout::Right => Value::pair(lv, Value::pair(x, rv)),
                Layout::Left => Value::pair(Value::pair(lv, x), rv),
            };
            Value::inj("node", payload)
        }
    }
}

fn rename_atoms(v: &Value, map: &BTreeMap<AtomId, AtomId>) -> Value {
    match v {
        Value::Atom(a) => Value::Atom(*map.get(a).unwrap_or(a)),
        Value::SymApp(h, args) => Value::SymApp(
            *map.get(h).unwrap_or(h),
            args.iter().map(|x| rename_atoms(x, map)).collect(),
        ),
        Value::VPair(a, b) => Value::pair(rename_atoms(a, map), rename_atoms(b, map)),
        Value::VInj(l, x) => Value::inj(l, rename_atoms(x, map)),
        Value::VUnit | Value::Closure(..) => v.clone(),
    }
}

fn show_list(items: &[Value]) -> String {
    let parts: Vec<String> = items.iter().map(Value::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn show(v: &Value) -> String {
    list_items(v).map_or_else(|| v.to_string(), |items| show_list(&items))
}

/// One trial: the arguments, the heads to register, and a predicate on the
/// output.
struct Trial {
    args: Vec<Value>,
    heads: Vec<AtomId>,
    input: String,
    expected: String,
    check: Box<dyn Fn(&Value) -> bool>,
}

fn build_trial(
    kind: TheoremKind,
    layout: Layout,
    rng: &mut StdRng,
    index: usize,
    max_len: usize,
) -> Trial {
    // Sweep every size once, then draw sizes at random.
    let n = if index <= max_len {
        index
    } else {
        rng.gen_range(0..=max_len)
    };
    let atoms: Vec<Value> = make_atoms(n)
        .into_iter()
        .map(|(_, a)| Value::Atom(a))
        .collect();
    let list = list_value(&atoms);
    match kind {
        TheoremKind::ListIdentity => {
            let want = list.clone();
            Trial {
                args: vec![list],
                heads: vec![],
                input: show_list(&atoms),
                expected: show_list(&atoms),
                check: Box::new(move |out| *out == want),
            }
        }
        TheoremKind::ListReversal => {
            let rev: Vec<Value> = atoms.iter().rev().cloned().collect();
            let want = list_value(&rev);
            Trial {
                args: vec![list],
                heads: vec![],
                input: show_list(&atoms),
                expected: show_list(&rev),
                check: Box::new(move |out| *out == want),
            }
        }
        TheoremKind::LinearPermutation => {
            let mut want: Vec<Value> = atoms.clone();
            want.sort_by_key(|v| v.to_string());
            Trial {
                args: vec![list],
                heads: vec![],
                input: show_list(&atoms),
                expected: format!("a permutation of {}", show_list(&atoms)),
                check: Box::new(move |out| {
                    list_items(out).is_some_and(|mut items| {
                        items.sort_by_key(|v| v.to_string());
                        items == want
                    })
                }),
            }
        }
        TheoremKind::TreeInorder | TheoremKind::TreePreorder | TheoremKind::TreePostorder => {
            let shape = random_shape(rng, n);
            let mut next = 1;
            let tree = label_tree(&shape, layout, &mut next);
            let order = match kind {
                TheoremKind::TreeInorder => TraversalOrder::In,
                TheoremKind::TreePreorder => TraversalOrder::Pre,
                _ => TraversalOrder::Post,
            };
            let want: Vec<Value> = independent_traversal(&tree, order)
                .expect("generated trees are well formed")
                .into_iter()
                .map(Value::Atom)
                .collect();
            let want_v = list_value(&want);
            Trial {
                input: tree.to_string(),
                args: vec![tree],
                heads: vec![],
                expected: show_list(&want),
                check: Box::new(move |out| *out == want_v),
            }
        }
        TheoremKind::FoldUniqueness => {
            let g = AtomId(n as u32 + 1);
            let b = Value::Atom(AtomId(n as u32 + 2));
            let want = atoms.iter().rev().fold(b.clone(), |acc, v| {
                Value::SymApp(g, vec![Value::pair(v.clone(), acc)])
            });
            Trial {
                input: format!("g = {g}, b = {b}, {}", show_list(&atoms)),
                args: vec![Value::Atom(g), b, list],
                heads: vec![g],
                expected: want.to_string(),
                check: Box::new(move |out| *out == want),
            }
        }
        TheoremKind::PairOrder => unreachable!("pair order trials are built separately"),
    }
}

fn pair_shapes(mode: Mode) -> &'static [&'static str] {
    match mode {
        Mode::Ordered => &["(x, y)"],
        Mode::Linear => &["(x, y)", "(y, x)"],
        Mode::Unrestricted => &["(x, y)", "(y, x)", "(x, x)", "(y, y)"],
    }
}

fn classify_pair(out: &Value, x: &Value, y: &Value) -> Option<&'static str> {
    let Value::VPair(a, b) = out else { return None };
    let name = |v: &Value| {
        if v == x {
            Some("x")
        } else if v == y {
            Some("y")
        } else {
            None
        }
    };
    match (name(a)?, name(b)?) {
        ("x", "y") => Some("(x, y)"),
        ("y", "x") => Some("(y, x)"),
        ("x", "x") => Some("(x, x)"),
        _ => Some("(y, y)"),
    }
}

/// Runs `config.trials` trials of `spec` against declaration `decl` of `p`.
pub fn run_theorem(
    spec: &TheoremSpec,
    p: &Program,
    decl: &str,
    config: &TrialConfig,
) -> Result<TheoremReport, TheoremError> {
    let d = p
        .declaration(decl)
        .ok_or_else(|| TheoremError::UnknownDeclaration(decl.to_string()))?;
    spec.matching_template(&d.ty, &p.signature)
        .ok_or_else(|| TheoremError::TemplateMismatch {
            kind: spec.kind,
            found: pretty_type(&d.ty),
            expected: spec.template_text().join("; "),
        })?;
    let mut report = TheoremReport {
        program: decl.to_string(),
        kind: spec.kind,
        mode: spec.mode,
        typechecked: false,
        trials: 0,
        failures: Vec::new(),
        realized: Vec::new(),
    };

    // The theorem is about the spec's mode, whatever the declaration's pragma.
    let mut forced = p.clone();
    for x in forced.declarations.iter_mut().filter(|x| x.name == decl) {
        x.mode = None;
    }
    let verdicts = check_program(&forced, spec.mode);
    report.typechecked = verdicts
        .iter()
        .any(|v| v.name == decl && v.verdict.accepted);
    if !report.typechecked {
        return Ok(report);
    }

    let base = Evaluator::new(config.fuel).with_globals(p);
    let run = |args: &[Value], heads: &[AtomId]| -> Result<Value, EvalError> {
        let mut ev = base.clone().with_heads(heads.iter().copied());
        ev.eval(&Expr::apps(
            Expr::var(decl),
            args.iter().map(Value::to_expr),
        ))
    };
    // Renaming every atom must commute with running the program.
    let shift = |heads: &[AtomId], args: &[Value]| -> BTreeMap<AtomId, AtomId> {
        let mut ids: BTreeSet<AtomId> = heads.iter().copied().collect();
        ids.extend(args.iter().flat_map(Value::atoms));
        ids.into_iter().map(|a| (a, AtomId(a.0 + 1000))).collect()
    };

    let layout = if spec.kind == TheoremKind::TreePreorder {
        Layout::Left
    } else {
        Layout::Right
    };
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut realized = BTreeSet::new();
    for i in 0..config.trials {
        report.trials += 1;
        let trial = if spec.kind == TheoremKind::PairOrder {
            let (x, y) = (Value::Atom(AtomId(1)), Value::Atom(AtomId(2)));
            Trial {
                input: format!("x = {x}, y = {y}"),
                args: vec![x, y],
                heads: vec![],
                expected: pair_shapes(spec.mode).join(" or "),
                check: Box::new(|_| true),
            }
        } else {
            build_trial(spec.kind, layout, &mut rng, i, config.max_len)
        };
        let fail = |actual: String| TrialFailure {
            input: trial.input.clone(),
            actual,
            expected: trial.expected.clone(),
        };
        let out = match run(&trial.args, &trial.heads) {
            Ok(v) => v,
            Err(e) => {
                report
                    .failures
                    .push(fail(format!("evaluation failed: {e}")));
                continue;
            }
        };
        let ok = if spec.kind == TheoremKind::PairOrder {
            match classify_pair(&out, &trial.args[0], &trial.args[1]) {
                Some(shape) => {
                    realized.insert(shape);
                    pair_shapes(spec.mode).contains(&shape)
                }
                None => false,
            }
        } else {
            (trial.check)(&out)
        };
        if !ok {
            report.failures.push(fail(show(&out)));
            continue;
        }
        let map = shift(&trial.heads, &trial.args);
        let args2: Vec<Value> = trial.args.iter().map(|a| rename_atoms(a, &map)).collect();
        let heads2: Vec<AtomId> = trial.heads.iter().map(|h| map[h]).collect();
        match run(&args2, &heads2) {
            Ok(out2) if out2 == rename_atoms(&out, &map) => {}
            Ok(out2) => report
                .failures
                .push(fail(format!("{} after renaming atoms", show(&out2)))),
            Err(e) => report
                .failures
                .push(fail(format!("evaluation failed after renaming atoms: {e}"))),
        }
    }
    report.realized = realized.into_iter().map(str::to_string).collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32) -> Value {
        Value::Atom(AtomId(n))
    }

    fn leaf() -> Value {
        Value::inj("leaf", Value::VUnit)
    }

    fn node(l: Value, x: Value, r: Value) -> Value {
        Value::inj("node", Value::pair(l, Value::pair(x, r)))
    }

    #[test]
    fn traversals_by_hand() {
        assert_eq!(
            independent_traversal(&leaf(), TraversalOrder::In),
            Ok(vec![])
        );
        let one = node(leaf(), a(1), leaf());
        for o in [
            TraversalOrder::In,
            TraversalOrder::Pre,
            TraversalOrder::Post,
        ] {
            assert_eq!(independent_traversal(&one, o), Ok(vec![AtomId(1)]));
        }
        let t = node(node(leaf(), a(1), leaf()), a(2), node(leaf(), a(3), leaf()));
        let ids = |v: &[u32]| v.iter().map(|&i| AtomId(i)).collect::<Vec<_>>();
        assert_eq!(
            independent_traversal(&t, TraversalOrder::In),
            Ok(ids(&[1, 2, 3]))
        );
        assert_eq!(
            independent_traversal(&t, TraversalOrder::Pre),
            Ok(ids(&[2, 1, 3]))
        );
        assert_eq!(
            independent_traversal(&t, TraversalOrder::Post),
            Ok(ids(&[1, 3, 2]))
        );
    }

    #[test]
    fn left_layout_is_understood() {
        let t = Value::inj("node", Value::pair(Value::pair(leaf(), a(7)), leaf()));
        assert_eq!(
            independent_traversal(&t, TraversalOrder::Pre),
            Ok(vec![AtomId(7)])
        );
    }

    #[test]
    fn malformed_tree() {
        let r = independent_traversal(&Value::VUnit, TraversalOrder::In);
        assert!(matches!(r, Err(TheoremError::MalformedTree(_))));
    }

    #[test]
    fn atoms_are_fresh() {
        assert!(make_atoms(0).is_empty());
        let six = make_atoms(6);
        let ids: BTreeSet<_> = six.iter().map(|(_, a)| *a).collect();
        let gens: BTreeSet<_> = six.iter().map(|(g, _)| *g).collect();
        assert_eq!((ids.len(), gens.len()), (6, 6));
    }

    #[test]
    fn templates_match_user_spelled_types() {
        let p = parse_program(
            "type list[e] = +{nil : 1, cons : e * list[e]}\n\
             def id : all q. list[q] ->> list[q] = \\l. l",
        )
        .unwrap();
        let spec = TheoremSpec::new(TheoremKind::ListIdentity, Mode::Ordered);
        assert_eq!(
            spec.matching_template(&p.declarations[0].ty, &p.signature),
            Some(0)
        );
        let rev = TheoremSpec::new(TheoremKind::ListReversal, Mode::Ordered);
        assert_eq!(
            rev.matching_template(&p.declarations[0].ty, &p.signature),
            None
        );
        // Linear mode identifies the two list types.
        let lin = TheoremSpec::new(TheoremKind::ListReversal, Mode::Linear);
        assert!(lin
            .matching_template(&p.declarations[0].ty, &p.signature)
            .is_some());
    }

    #[test]
    fn identity_program_passes() {
        let p = parse_program(
            "type llist[a] = +{nil : 1, cons : a * llist[a]}\n\
             def id : all a. llist[a] ->> llist[a] = \\l. l",
        )
        .unwrap();
        let spec = TheoremSpec::new(TheoremKind::ListIdentity, Mode::Ordered);
        let r = run_theorem(&spec, &p, "id", &TrialConfig::default()).unwrap();
        assert!(r.clean(), "{r:?}");
        assert_eq!(r.trials, 20);
    }
}
