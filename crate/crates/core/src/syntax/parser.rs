//! Recursive-descent parser for `.ord` source text.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::ast::{AtomId, Declaration, Expr, Program, Signature, TypeDef, TypeExpr};
use super::lexer::{tokenize, Tok};
use super::{ParseError, ParseErrorKind, Pos};
use crate::check::Mode;
use crate::types;

/// Parses a whole program: type definitions followed or interleaved with
/// declarations.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = tokenize(text)?;
    let (type_names, decl_names) = prescan(&toks)?;
    let mut p = Parser::new(toks, type_names, decl_names.into_iter().collect());
    p.program()
}

/// Parses a type with no type definitions in scope. Identifiers are type
/// variables.
pub fn parse_type(text: &str) -> Result<TypeExpr, ParseError> {
    parse_type_in(text, &Signature::new())
}

/// Parses a type whose type names refer to `sig`. Free type variables are
/// allowed.
pub fn parse_type_in(text: &str, sig: &Signature) -> Result<TypeExpr, ParseError> {
    let toks = tokenize(text)?;
    let names = sig
        .defs()
        .iter()
        .map(|d| (d.name.clone(), d.params.len()))
        .collect();
    let mut p = Parser::new(toks, names, HashSet::new());
    p.free_type_vars_ok = true;
    let ty = p.type0()?;
    p.expect(&Tok::Eof)?;
    Ok(types::freshen_binders(&ty))
}

/// Parses a closed term with no global names in scope.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_in(text, &Signature::new(), &[])
}

/// Parses a term where `globals` are in scope as variables and type
/// annotations may mention names from `sig` and free type variables.
pub fn parse_expr_in(text: &str, sig: &Signature, globals: &[&str]) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let names = sig
        .defs()
        .iter()
        .map(|d| (d.name.clone(), d.params.len()))
        .collect();
    let mut p = Parser::new(toks, names, globals.iter().map(|s| s.to_string()).collect());
    p.free_type_vars_ok = true;
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    Ok(e)
}

type TypeNames = HashMap<String, usize>;

fn prescan(toks: &[(Tok, Pos)]) -> Result<(TypeNames, Vec<String>), ParseError> {
    let mut types = HashMap::new();
    let mut decls = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        match (&toks[i].0, toks.get(i + 1).map(|t| &t.0)) {
            (Tok::Type, Some(Tok::Ident(name))) => {
                let mut arity = 0;
                if let Some((Tok::LBracket, _)) = toks.get(i + 2) {
                    let mut j = i + 3;
                    while let Some((t, _)) = toks.get(j) {
                        match t {
                            Tok::Ident(_) => arity += 1,
                            Tok::Comma => {}
                            _ => break,
                        }
                        j += 1;
                    }
                }
                if types.insert(name.clone(), arity).is_some() {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateDefinition(name.clone()),
                        toks[i + 1].1,
                    ));
                }
                i += 2;
            }
            (Tok::Def, Some(Tok::Ident(name))) => {
                if decls.contains(name) {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateDefinition(name.clone()),
                        toks[i + 1].1,
                    ));
                }
                decls.push(name.clone());
                i += 2;
            }
            _ => i += 1,
        }
    }
    Ok((types, decls))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    idx: usize,
    type_names: TypeNames,
    globals: HashSet<String>,
    free_type_vars_ok: bool,
    /// Type variables in scope (quantifier binders, definition parameters).
    type_scope: Vec<String>,
    /// Term variables in scope.
    scope: Vec<String>,
}

impl Parser {
    fn new(toks: Vec<(Tok, Pos)>, type_names: TypeNames, globals: HashSet<String>) -> Self {
        Parser {
            toks,
            idx: 0,
            type_names,
            globals,
            free_type_vars_ok: false,
            type_scope: Vec::new(),
            scope: Vec::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.idx + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(
            ParseErrorKind::Syntax(msg.into()),
            self.pos(),
        ))
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!(
                "expected {}, found {}",
                t.describe(),
                self.peek().describe()
            ))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {}", other.describe())),
        }
    }

    // ---- programs -------------------------------------------------------

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut signature = Signature::new();
        let mut def_pos = Vec::new();
        let mut declarations = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Type => {
                    let pos = self.pos();
                    signature.push(self.type_def()?);
                    def_pos.push(pos);
                }
                Tok::At | Tok::Rec | Tok::Def => declarations.push(self.declaration()?),
                other => {
                    return self.err(format!(
                        "expected `type` or `def`, found {}",
                        other.describe()
                    ))
                }
            }
        }
        if let Err(e) = types::validate_signature(&signature) {
            let pos = e
                .definition()
                .and_then(|n| signature.defs().iter().position(|d| d.name == n))
                .map(|i| def_pos[i])
                .unwrap_or_default();
            return Err(ParseError::new(e.into(), pos));
        }
        Ok(Program {
            signature,
            declarations,
        })
    }

    fn type_def(&mut self) -> Result<TypeDef, ParseError> {
        self.expect(&Tok::Type)?;
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.eat(&Tok::LBracket) && !self.eat(&Tok::RBracket) {
            loop {
                let pos = self.pos();
                let p = self.ident()?;
                if params.contains(&p) {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax(format!("duplicate parameter `{p}`")),
                        pos,
                    ));
                }
                params.push(p);
                if self.eat(&Tok::RBracket) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        self.expect(&Tok::Equals)?;
        self.type_scope = params.clone();
        let body = self.type0();
        self.type_scope.clear();
        Ok(TypeDef {
            name,
            params,
            body: body?,
        })
    }

    fn declaration(&mut self) -> Result<Declaration, ParseError> {
        let mut mode = None;
        if self.eat(&Tok::At) {
            let pos = self.pos();
            let kw = self.ident()?;
            if kw != "mode" {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax(format!("unknown pragma `@{kw}`")),
                    pos,
                ));
            }
            let pos = self.pos();
            let m = self.ident()?;
            mode = Some(
                m.parse::<Mode>()
                    .map_err(|e| ParseError::new(ParseErrorKind::Syntax(e), pos))?,
            );
        }
        let recursive = self.eat(&Tok::Rec);
        self.expect(&Tok::Def)?;
        let name = self.ident()?;
        self.expect(&Tok::Colon)?;
        let ty = types::freshen_binders(&self.type0()?);
        self.expect(&Tok::Equals)?;
        // The declared type's quantifier prefix scopes over annotations in the body.
        let mut t = &ty;
        while let TypeExpr::Forall(a, body) = t {
            self.type_scope.push(a.clone());
            t = body;
        }
        let body = self.expr();
        self.type_scope.clear();
        Ok(Declaration {
            name,
            mode,
            ty,
            recursive,
            body: body?,
        })
    }

    // ---- types ----------------------------------------------------------

    fn type0(&mut self) -> Result<TypeExpr, ParseError> {
        if self.eat(&Tok::All) {
            let var = self.ident()?;
            self.expect(&Tok::Dot)?;
            self.type_scope.push(var.clone());
            let body = self.type0();
            self.type_scope.pop();
            return Ok(TypeExpr::Forall(var, Box::new(body?)));
        }
        self.type1()
    }

    fn type1(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.type2()?;
        let build: fn(TypeExpr, TypeExpr) -> TypeExpr = match self.peek() {
            Tok::Over => TypeExpr::over,
            Tok::Backslash => TypeExpr::under,
            Tok::Lolli => TypeExpr::lolli,
            Tok::Arrow => TypeExpr::uarrow,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.type1_or_forall()?;
        Ok(build(lhs, rhs))
    }

    /// The right operand of an arrow may be a quantifier without parentheses.
    fn type1_or_forall(&mut self) -> Result<TypeExpr, ParseError> {
        if self.peek() == &Tok::All {
            self.type0()
        } else {
            self.type1()
        }
    }

    fn type2(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.type3()?;
        let build: fn(TypeExpr, TypeExpr) -> TypeExpr = match self.peek() {
            Tok::Star => TypeExpr::fuse,
            Tok::Percent => TypeExpr::twist,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.type2()?;
        Ok(build(lhs, rhs))
    }

    fn starts_simple_type(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Num(1) | Tok::Plus | Tok::LParen
        )
    }

    fn type3(&mut self) -> Result<TypeExpr, ParseError> {
        self.type_atom(true)
    }

    fn type_atom(&mut self, allow_args: bool) -> Result<TypeExpr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(1) => {
                self.bump();
                Ok(TypeExpr::Unit)
            }
            Tok::LParen => {
                self.bump();
                let t = self.type0()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Tok::Plus => {
                self.bump();
                self.expect(&Tok::LBrace)?;
                let mut alts = BTreeMap::new();
                loop {
                    let lpos = self.pos();
                    let label = self.ident()?;
                    self.expect(&Tok::Colon)?;
                    let t = self.type0()?;
                    if alts.insert(label.clone(), t).is_some() {
                        return Err(ParseError::new(ParseErrorKind::DuplicateLabel(label), lpos));
                    }
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect(&Tok::Comma)?;
                }
                Ok(TypeExpr::Sum(alts))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.type_scope.iter().rev().any(|v| *v == name) {
                    return Ok(TypeExpr::Var(name));
                }
                if let Some(&arity) = self.type_names.get(&name) {
                    let args = if self.peek() == &Tok::LBracket {
                        self.bump();
                        let mut args = Vec::new();
                        if !self.eat(&Tok::RBracket) {
                            loop {
                                args.push(self.type0()?);
                                if self.eat(&Tok::RBracket) {
                                    break;
                                }
                                self.expect(&Tok::Comma)?;
                            }
                        }
                        args
                    } else if allow_args {
                        let mut args = Vec::new();
                        while args.len() < arity && self.starts_simple_type() {
                            args.push(self.type_atom(false)?);
                        }
                        args
                    } else {
                        Vec::new()
                    };
                    if args.len() != arity {
                        return Err(ParseError::new(
                            ParseErrorKind::ArityMismatch {
                                name,
                                expected: arity,
                                found: args.len(),
                            },
                            pos,
                        ));
                    }
                    return Ok(TypeExpr::Named(name, args));
                }
                if self.free_type_vars_ok {
                    Ok(TypeExpr::Var(name))
                } else {
                    Err(ParseError::new(ParseErrorKind::UnknownTypeName(name), pos))
                }
            }
            other => self.err(format!("expected a type, found {}", other.describe())),
        }
    }

    // ---- expressions ----------------------------------------------------

    fn is_bound(&self, x: &str) -> bool {
        self.scope.iter().any(|v| v == x) || self.globals.contains(x)
    }

    fn with_bound<T>(&mut self, xs: &[String], k: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.extend(xs.iter().cloned());
        let r = k(self);
        self.scope.truncate(self.scope.len() - xs.len());
        r
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                let x = self.ident()?;
                self.expect(&Tok::Dot)?;
                let body = self.with_bound(std::slice::from_ref(&x), |p| p.expr())?;
                Ok(Expr::Lam(x, Box::new(body)))
            }
            Tok::Match => {
                self.bump();
                let scrutinee = self.app(true)?;
                self.arms(scrutinee)
            }
            _ => self.app(false),
        }
    }

    fn arms(&mut self, scrutinee: Expr) -> Result<Expr, ParseError> {
        let scrutinee = Box::new(scrutinee);
        if self.eat(&Tok::LBrace) {
            let mut branches = BTreeMap::new();
            loop {
                let pos = self.pos();
                let label = self.ident()?;
                self.expect(&Tok::LParen)?;
                let x = self.ident()?;
                self.expect(&Tok::RParen)?;
                self.expect(&Tok::FatArrow)?;
                let body = self.with_bound(std::slice::from_ref(&x), |p| p.expr())?;
                if branches.insert(label.clone(), (x, body)).is_some() {
                    return Err(ParseError::new(ParseErrorKind::DuplicateLabel(label), pos));
                }
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
            return Ok(Expr::MatchSum {
                scrutinee,
                branches,
            });
        }
        if !self.at_arm() {
            return self.err(format!(
                "expected a match arm, found {}",
                self.peek().describe()
            ));
        }
        self.expect(&Tok::LParen)?;
        self.expect(&Tok::LParen)?;
        let e = if self.eat(&Tok::RParen) {
            self.expect(&Tok::FatArrow)?;
            let body = self.expr()?;
            Expr::MatchUnit {
                scrutinee,
                body: Box::new(body),
            }
        } else {
            let pos = self.pos();
            let left = self.ident()?;
            self.expect(&Tok::Comma)?;
            let right = self.ident()?;
            if left == right {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax(format!("variable `{left}` bound twice in pattern")),
                    pos,
                ));
            }
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::FatArrow)?;
            let body = self.with_bound(&[left.clone(), right.clone()], |p| p.expr())?;
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body: Box::new(body),
            }
        };
        self.expect(&Tok::RParen)?;
        Ok(e)
    }

    /// `((x, y) =>` or `(() =>` ahead.
    fn at_arm(&self) -> bool {
        if self.peek_at(0) != &Tok::LParen || self.peek_at(1) != &Tok::LParen {
            return false;
        }
        match self.peek_at(2) {
            Tok::RParen => self.peek_at(3) == &Tok::FatArrow,
            Tok::Ident(_) => {
                self.peek_at(3) == &Tok::Comma
                    && matches!(self.peek_at(4), Tok::Ident(_))
                    && self.peek_at(5) == &Tok::RParen
                    && self.peek_at(6) == &Tok::FatArrow
            }
            _ => false,
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::Hash)
    }

    fn app(&mut self, scrutinee: bool) -> Result<Expr, ParseError> {
        let mut e = self.postfix()?;
        while self.starts_atom() && !(scrutinee && self.at_arm()) {
            let arg = self.postfix()?;
            e = Expr::App(Box::new(e), Box::new(arg));
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        while self.eat(&Tok::LBracket) {
            let t = self.type0()?;
            self.expect(&Tok::RBracket)?;
            e = Expr::TyInst(Box::new(e), t);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if self.is_bound(&name) {
                    return Ok(Expr::Var(name));
                }
                if self.peek() != &Tok::LParen {
                    return Err(ParseError::new(ParseErrorKind::UnboundVariable(name), pos));
                }
                self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(Expr::Inj(name, Box::new(Expr::UnitVal)));
                }
                let first = self.expr()?;
                let payload = if self.eat(&Tok::Comma) {
                    let second = self.expr()?;
                    Expr::Pair(Box::new(first), Box::new(second))
                } else {
                    first
                };
                self.expect(&Tok::RParen)?;
                Ok(Expr::Inj(name, Box::new(payload)))
            }
            Tok::Hash => {
                self.bump();
                match self.bump() {
                    Tok::Num(n) if n <= u32::MAX as u64 => Ok(Expr::Atom(AtomId(n as u32))),
                    _ => Err(ParseError::new(
                        ParseErrorKind::Syntax("expected atom number after `#`".into()),
                        pos,
                    )),
                }
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(Expr::UnitVal);
                }
                let first = self.expr()?;
                let e = if self.eat(&Tok::Comma) {
                    let second = self.expr()?;
                    Expr::Pair(Box::new(first), Box::new(second))
                } else {
                    first
                };
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            other => self.err(format!(
                "expected an expression, found {}",
                other.describe()
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ast::TypeExpr as T;

    fn a() -> T {
        T::var("a")
    }

    #[test]
    fn identity_declaration() {
        let p = parse_program("def id : all a. a \\ a = \\x. x").unwrap();
        assert_eq!(p.declarations.len(), 1);
        let d = &p.declarations[0];
        assert_eq!(d.name, "id");
        assert_eq!(d.ty, T::forall("a", T::under(a(), a())));
        assert_eq!(d.body, Expr::lam("y", Expr::var("y")));
        assert!(!d.recursive);
    }

    #[test]
    fn empty_program() {
        let p = parse_program("").unwrap();
        assert!(p.signature.is_empty());
        assert!(p.declarations.is_empty());
    }

    #[test]
    fn list_definition() {
        let p = parse_program("type llist[a] = +{nil : 1, cons : a * llist[a]}").unwrap();
        assert_eq!(p.signature.len(), 1);
        let d = p.signature.get("llist").unwrap();
        assert_eq!(d.params, vec!["a".to_string()]);
        assert_eq!(
            d.body,
            T::sum([
                ("nil", T::Unit),
                ("cons", T::fuse(a(), T::named("llist", vec![a()])))
            ])
        );
    }

    #[test]
    fn arrows_associate_right() {
        assert_eq!(
            parse_type("a ->> (a ->> a * a)").unwrap(),
            T::over(a(), T::over(a(), T::fuse(a(), a())))
        );
        assert_eq!(
            parse_type("a ->> a ->> a * a").unwrap(),
            parse_type("a ->> (a ->> a * a)").unwrap()
        );
    }

    #[test]
    fn unit_and_linear_arrow() {
        assert_eq!(parse_type("1").unwrap(), T::Unit);
        assert_eq!(parse_type("a -o a").unwrap(), T::lolli(a(), a()));
        assert_ne!(
            parse_type("a -o a").unwrap(),
            parse_type("a ->> a").unwrap()
        );
    }

    #[test]
    fn juxtaposed_and_bracketed_type_arguments_agree() {
        let p = parse_program(
            "type llist[a] = +{nil : 1, cons : a * llist a}\n\
             def f : all a. llist a ->> llist[a] = \\x. x",
        )
        .unwrap();
        let l = T::named("llist", vec![a()]);
        assert_eq!(p.declarations[0].ty, T::forall("a", T::over(l.clone(), l)));
    }

    #[test]
    fn unknown_type_name_is_reported_with_position() {
        let err = parse_program("def f : all a. tree a ->> a = \\x. x").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownTypeName(ref n) if n == "tree"));
        assert_eq!(err.pos, Pos { line: 1, col: 16 });
    }

    #[test]
    fn duplicate_definitions_are_rejected() {
        let err = parse_program("def f : 1 = ()\ndef f : 1 = ()").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateDefinition(_)));
        let err = parse_program("type t = +{a : 1}\ntype t = +{b : 1}").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateDefinition(_)));
    }

    #[test]
    fn non_contractive_and_non_positive_signatures_are_rejected() {
        let err = parse_program("type f[a] = f[a]").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NonContractive(_)));
        let err = parse_program("type f[a] = +{l : a ->> a}").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NotPurelyPositive(_)));
    }

    #[test]
    fn injections_versus_applications() {
        let e = parse_expr("\\f. \\x. f (x)").unwrap();
        assert_eq!(
            e,
            Expr::lam(
                "f",
                Expr::lam("x", Expr::app(Expr::var("f"), Expr::var("x")))
            )
        );
        let e = parse_expr("\\x. cons(x, nil())").unwrap();
        assert_eq!(
            e,
            Expr::lam(
                "x",
                Expr::inj(
                    "cons",
                    Expr::pair(Expr::var("x"), Expr::inj("nil", Expr::UnitVal))
                )
            )
        );
    }

    #[test]
    fn match_forms() {
        let e = parse_expr("\\p. match p ((x, y) => (y, x))").unwrap();
        assert_eq!(
            e,
            Expr::lam(
                "p",
                Expr::match_pair(
                    Expr::var("p"),
                    "x",
                    "y",
                    Expr::pair(Expr::var("y"), Expr::var("x"))
                )
            )
        );
        let e = parse_expr("\\u. \\k. match u (() => k)").unwrap();
        assert_eq!(
            e,
            Expr::lam(
                "u",
                Expr::lam("k", Expr::match_unit(Expr::var("u"), Expr::var("k")))
            )
        );
        let e = parse_expr("\\s. match s {a(x) => x, b(y) => y}").unwrap();
        assert_eq!(
            e,
            Expr::lam(
                "s",
                Expr::match_sum(
                    Expr::var("s"),
                    [("a", "x", Expr::var("x")), ("b", "y", Expr::var("y"))]
                )
            )
        );
    }

    #[test]
    fn scrutinee_may_be_an_application() {
        let e = parse_expr("\\f. \\x. match f x ((a, b) => (a, b))").unwrap();
        let Expr::Lam(_, body) = e else { panic!() };
        let Expr::Lam(_, body) = *body else { panic!() };
        assert!(
            matches!(*body, Expr::MatchPair { ref scrutinee, .. } if matches!(**scrutinee, Expr::App(..)))
        );
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let err = parse_expr("\\x. y").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnboundVariable(ref y) if y == "y"));
        assert_eq!(err.pos, Pos { line: 1, col: 5 });
    }

    #[test]
    fn mode_pragma_and_rec() {
        let p = parse_program("@mode linear\nrec def f : 1 -o 1 = \\x. f x").unwrap();
        let d = &p.declarations[0];
        assert_eq!(d.mode, Some(Mode::Linear));
        assert!(d.recursive);
    }

    #[test]
    fn instantiation_uses_declared_quantifiers() {
        let p = parse_program("def id : all a. a ->> a = \\x. x\ndef g : all b. b ->> b = id [b]")
            .unwrap();
        assert_eq!(
            p.declarations[1].body,
            Expr::ty_inst(Expr::var("id"), T::var("b"))
        );
        let err = parse_program("def g : all b. b ->> b = \\x. x [c]").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownTypeName(_)));
    }

    #[test]
    fn shadowing_quantifiers_are_renamed() {
        let t = parse_type("all a. a ->> all a. a").unwrap();
        let T::Forall(outer, body) = t else { panic!() };
        let T::Over(_, inner) = *body else { panic!() };
        let T::Forall(inner_var, _) = *inner else {
            panic!()
        };
        assert_ne!(outer, inner_var);
    }

    #[test]
    fn atoms_parse() {
        assert_eq!(
            parse_expr("(#1, #2)").unwrap(),
            Expr::pair(Expr::Atom(AtomId(1)), Expr::Atom(AtomId(2)))
        );
    }
}
