//! Pretty-printer producing text that the parser reads back to the same tree.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::ast::{Expr, Program, TypeExpr};
use crate::check::Mode;

pub fn pretty_type(ty: &TypeExpr) -> String {
    let mut out = String::new();
    write_type(ty, 0, &mut out);
    out
}

pub fn pretty_expr(e: &Expr) -> String {
    let mut labels = BTreeSet::new();
    collect_labels(e, &mut labels);
    let mut names = labels.clone();
    collect_names(e, &mut names);
    let mut p = ExprPrinter {
        labels,
        names,
        renames: HashMap::new(),
        out: String::new(),
    };
    p.expr(e, 0);
    p.out
}

pub fn pretty_program(p: &Program) -> String {
    let mut out = String::new();
    for def in p.signature.defs() {
        out.push_str("type ");
        out.push_str(&def.name);
        if !def.params.is_empty() {
            let _ = write!(out, "[{}]", def.params.join(", "));
        }
        let _ = writeln!(out, " = {}", pretty_type(&def.body));
    }
    if !p.signature.is_empty() && !p.declarations.is_empty() {
        out.push('\n');
    }
    for (i, d) in p.declarations.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if let Some(m) = d.mode {
            let _ = writeln!(out, "@mode {}", mode_keyword(m));
        }
        if d.recursive {
            out.push_str("rec ");
        }
        let _ = writeln!(
            out,
            "def {} : {} =\n  {}",
            d.name,
            pretty_type(&d.ty),
            pretty_expr(&d.body)
        );
    }
    out
}

fn mode_keyword(m: Mode) -> &'static str {
    match m {
        Mode::Ordered => "ordered",
        Mode::Linear => "linear",
        Mode::Unrestricted => "unrestricted",
    }
}

fn write_type(ty: &TypeExpr, prec: u8, out: &mut String) {
    let own = match ty {
        TypeExpr::Forall(..) => 0,
        TypeExpr::Under(..) | TypeExpr::Over(..) | TypeExpr::Lolli(..) | TypeExpr::UArrow(..) => 1,
        TypeExpr::Fuse(..) | TypeExpr::Twist(..) => 2,
        _ => 3,
    };
    let paren = own < prec;
    if paren {
        out.push('(');
    }
    match ty {
        TypeExpr::Var(a) => out.push_str(a),
        TypeExpr::Unit => out.push('1'),
        TypeExpr::Forall(a, body) => {
            let _ = write!(out, "all {a}. ");
            write_type(body, 0, out);
        }
        TypeExpr::Fuse(a, b) | TypeExpr::Twist(a, b) => {
            write_type(a, 3, out);
            out.push_str(if matches!(ty, TypeExpr::Fuse(..)) {
                " * "
            } else {
                " % "
            });
            write_type(b, 2, out);
        }
        TypeExpr::Under(a, b)
        | TypeExpr::Over(a, b)
        | TypeExpr::Lolli(a, b)
        | TypeExpr::UArrow(a, b) => {
            let op = match ty {
                TypeExpr::Under(..) => " \\ ",
                TypeExpr::Over(..) => " ->> ",
                TypeExpr::Lolli(..) => " -o ",
                _ => " -> ",
            };
            write_type(a, 2, out);
            out.push_str(op);
            write_type(b, 2, out);
        }
        TypeExpr::Sum(alts) => {
            out.push_str("+{");
            for (i, (l, t)) in alts.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{l} : ");
                write_type(t, 0, out);
            }
            out.push('}');
        }
        TypeExpr::Named(name, args) => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('[');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_type(t, 0, out);
                }
                out.push(']');
            }
        }
    }
    if paren {
        out.push(')');
    }
}

fn collect_labels(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Inj(l, b) => {
            out.insert(l.clone());
            collect_labels(b, out);
        }
        Expr::MatchSum {
            scrutinee,
            branches,
        } => {
            collect_labels(scrutinee, out);
            for (_, b) in branches.values() {
                collect_labels(b, out);
            }
        }
        Expr::Lam(_, b) | Expr::TyInst(b, _) => collect_labels(b, out),
        Expr::App(a, b) | Expr::Pair(a, b) => {
            collect_labels(a, out);
            collect_labels(b, out);
        }
        Expr::MatchPair {
            scrutinee, body, ..
        }
        | Expr::MatchUnit { scrutinee, body } => {
            collect_labels(scrutinee, out);
            collect_labels(body, out);
        }
        Expr::Var(_) | Expr::UnitVal | Expr::Atom(_) => {}
    }
}

fn collect_names(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Var(x) => {
            out.insert(x.clone());
        }
        Expr::Lam(x, b) => {
            out.insert(x.clone());
            collect_names(b, out);
        }
        Expr::Inj(_, b) | Expr::TyInst(b, _) => collect_names(b, out),
        Expr::App(a, b) | Expr::Pair(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Expr::MatchPair {
            scrutinee,
            left,
            right,
            body,
        } => {
            out.insert(left.clone());
            out.insert(right.clone());
            collect_names(scrutinee, out);
            collect_names(body, out);
        }
        Expr::MatchUnit { scrutinee, body } => {
            collect_names(scrutinee, out);
            collect_names(body, out);
        }
        Expr::MatchSum {
            scrutinee,
            branches,
        } => {
            collect_names(scrutinee, out);
            for (x, b) in branches.values() {
                out.insert(x.clone());
                collect_names(b, out);
            }
        }
        Expr::UnitVal | Expr::Atom(_) => {}
    }
}

struct ExprPrinter {
    labels: BTreeSet<String>,
    names: BTreeSet<String>,
    /// Active renamings of binders that would otherwise read back as injections.
    renames: HashMap<String, Vec<String>>,
    out: String,
}

impl ExprPrinter {
    fn bind(&mut self, x: &str) -> String {
        let shown = if self.labels.contains(x) {
            let mut i = 1;
            loop {
                let cand = format!("{x}_{i}");
                if !self.names.contains(&cand) && !self.labels.contains(&cand) {
                    self.names.insert(cand.clone());
                    break cand;
                }
                i += 1;
            }
        } else {
            x.to_string()
        };
        self.renames
            .entry(x.to_string())
            .or_default()
            .push(shown.clone());
        shown
    }

    fn unbind(&mut self, x: &str) {
        if let Some(v) = self.renames.get_mut(x) {
            v.pop();
        }
    }

    fn var(&self, x: &str) -> String {
        self.renames
            .get(x)
            .and_then(|v| v.last())
            .cloned()
            .unwrap_or_else(|| x.to_string())
    }

    fn expr(&mut self, e: &Expr, prec: u8) {
        let own = match e {
            Expr::Lam(..)
            | Expr::MatchPair { .. }
            | Expr::MatchUnit { .. }
            | Expr::MatchSum { .. } => 0,
            Expr::App(..) => 1,
            Expr::TyInst(..) => 2,
            _ => 3,
        };
        let paren = own < prec;
        if paren {
            self.out.push('(');
        }
        match e {
            Expr::Var(x) => {
                let s = self.var(x);
                self.out.push_str(&s);
            }
            Expr::UnitVal => self.out.push_str("()"),
            Expr::Atom(a) => {
                let _ = write!(self.out, "{a}");
            }
            Expr::Lam(x, body) => {
                let shown = self.bind(x);
                let _ = write!(self.out, "\\{shown}. ");
                self.expr(body, 0);
                self.unbind(x);
            }
            Expr::App(f, a) => {
                self.expr(f, 1);
                self.out.push(' ');
                self.expr(a, 2);
            }
            Expr::TyInst(f, t) => {
                self.expr(f, 2);
                let _ = write!(self.out, " [{}]", pretty_type(t));
            }
            Expr::Pair(a, b) => {
                self.out.push('(');
                self.expr(a, 0);
                self.out.push_str(", ");
                self.expr(b, 0);
                self.out.push(')');
            }
            Expr::Inj(l, payload) => {
                self.out.push_str(l);
                match &**payload {
                    Expr::UnitVal => self.out.push_str("()"),
                    Expr::Pair(a, b) => {
                        self.out.push('(');
                        self.expr(a, 0);
                        self.out.push_str(", ");
                        self.expr(b, 0);
                        self.out.push(')');
                    }
                    other => {
                        self.out.push('(');
                        self.expr(other, 0);
                        self.out.push(')');
                    }
                }
            }
            Expr::MatchPair {
                scrutinee,
                left,
                right,
                body,
            } => {
                self.out.push_str("match ");
                self.expr(scrutinee, 1);
                let l = self.bind(left);
                let r = self.bind(right);
                let _ = write!(self.out, " (({l}, {r}) => ");
                self.expr(body, 0);
                self.out.push(')');
                self.unbind(right);
                self.unbind(left);
            }
            Expr::MatchUnit { scrutinee, body } => {
                self.out.push_str("match ");
                self.expr(scrutinee, 1);
                self.out.push_str(" (() => ");
                self.expr(body, 0);
                self.out.push(')');
            }
            Expr::MatchSum {
                scrutinee,
                branches,
            } => {
                self.out.push_str("match ");
                self.expr(scrutinee, 1);
                self.out.push_str(" {");
                for (i, (l, (x, body))) in branches.iter().enumerate() {
                    if i > 0 {
                        self.out.push_str(", ");
                    }
                    let shown = self.bind(x);
                    let _ = write!(self.out, "{l}({shown}) => ");
                    self.expr(body, 0);
                    self.unbind(x);
                }
                self.out.push('}');
            }
        }
        if paren {
            self.out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_expr, parse_program, parse_type};

    #[test]
    fn pair_of_variables() {
        let e = Expr::pair(Expr::var("x"), Expr::var("y"));
        assert_eq!(pretty_expr(&e), "(x, y)");
    }

    #[test]
    fn nested_arrow_is_parenthesized() {
        let t = TypeExpr::over(
            TypeExpr::var("a"),
            TypeExpr::under(TypeExpr::var("b"), TypeExpr::var("c")),
        );
        assert_eq!(pretty_type(&t), "a ->> (b \\ c)");
        assert_eq!(parse_type(&pretty_type(&t)).unwrap(), t);
    }

    #[test]
    fn products_bind_tighter_than_arrows() {
        let t = parse_type("a * b ->> b % a").unwrap();
        assert_eq!(pretty_type(&t), "a * b ->> b % a");
        let t = parse_type("(a ->> b) * c").unwrap();
        assert_eq!(pretty_type(&t), "(a ->> b) * c");
    }

    #[test]
    fn binder_clashing_with_label_is_renamed() {
        let e = Expr::lam(
            "cons",
            Expr::pair(Expr::var("cons"), Expr::inj("cons", Expr::UnitVal)),
        );
        let text = pretty_expr(&e);
        assert_eq!(parse_expr(&text).unwrap(), e);
    }

    #[test]
    fn application_and_instantiation() {
        let src = "def id : all a. a ->> a = \\x. x\ndef k : all b. b ->> b = \\y. id [b] y";
        let p = parse_program(src).unwrap();
        assert_eq!(pretty_expr(&p.declarations[1].body), "\\y. id [b] y");
        let again = parse_program(&pretty_program(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn match_scrutinee_application_round_trips() {
        let e = parse_expr("\\f. \\x. match f x ((a, b) => (b, a))").unwrap();
        assert_eq!(parse_expr(&pretty_expr(&e)).unwrap(), e);
    }
}
