//! Printing back to the concrete syntax accepted by the parser.
//!
//! Quantifiers and lambdas extend as far right as possible, so they are
//! printed bare only in tail position.

use std::fmt::{self, Display, Formatter, Write};

use crate::syntax::ast::{Formula, TargetFormula, Term};

const P_LAMBDA: u8 = 0;
const P_UNION: u8 = 1;
const P_APP: u8 = 2;
const P_SUCC: u8 = 3;
const P_POSTFIX: u8 = 4;
const P_ATOM: u8 = 5;

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Lambda(..) => P_LAMBDA,
        Term::Union(..) => P_UNION,
        Term::App(..) => P_APP,
        Term::Succ(..) => P_SUCC,
        Term::SetApp(..) => P_POSTFIX,
        _ => P_ATOM,
    }
}

fn write_term(t: &Term, f: &mut Formatter<'_>, min: u8, tail: bool) -> fmt::Result {
    let p = term_prec(t);
    let bare = p >= min && (p != P_LAMBDA || tail);
    if !bare {
        f.write_char('(')?;
        write_term(t, f, P_LAMBDA, true)?;
        return f.write_char(')');
    }
    match t {
        Term::Var(v) => f.write_str(v),
        Term::Nat(n) => write!(f, "{n}"),
        Term::Succ(x) => {
            f.write_str("succ ")?;
            write_term(x, f, P_SUCC, false)
        }
        Term::Lambda(x, s, b) => {
            write!(f, "fun {x}:{s} => ")?;
            write_term(b, f, P_LAMBDA, tail)
        }
        Term::App(g, x) => {
            write_term(g, f, P_APP, false)?;
            f.write_char(' ')?;
            write_term(x, f, P_POSTFIX, false)
        }
        Term::SetApp(g, args) => {
            write_term(g, f, P_POSTFIX, false)?;
            f.write_char('[')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_term(a, f, P_LAMBDA, true)?;
            }
            f.write_char(']')
        }
        Term::SetLit(es) => {
            f.write_char('{')?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_term(e, f, P_LAMBDA, true)?;
            }
            f.write_char('}')
        }
        Term::Union(a, b) => {
            write_term(a, f, P_UNION, false)?;
            f.write_str(" u ")?;
            write_term(b, f, P_APP, false)
        }
        Term::SetMap { var, over, body } => {
            f.write_char('{')?;
            write_term(body, f, P_LAMBDA, true)?;
            write!(f, " : {var} in ")?;
            write_term(over, f, P_LAMBDA, true)?;
            f.write_char('}')
        }
        Term::Table(rows) => {
            f.write_str("fun-table [")?;
            for (i, (k, v)) in rows.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_term(k, f, P_LAMBDA, false)?;
                f.write_str(" => ")?;
                write_term(v, f, P_LAMBDA, true)?;
            }
            f.write_char(']')
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_term(self, f, P_LAMBDA, true)
    }
}

const F_QUANT: u8 = 0;
const F_IMPL: u8 = 1;
const F_AND: u8 = 2;
const F_ATOM: u8 = 3;

/// Shared shape of source and translated formulas for printing.
enum View<'a, F> {
    Eq(&'a Term, &'a Term),
    Mem(&'a Term, &'a Term),
    False,
    St(String, &'a Term),
    And(&'a F, &'a F),
    Implies(&'a F, &'a F),
    /// Quantifier prefix such as `forall^st n:N` or `exists m in f[n]`.
    Quant(String, &'a F),
}

trait Viewable: Sized {
    fn view(&self) -> View<'_, Self>;
}

impl Viewable for Formula {
    fn view(&self) -> View<'_, Self> {
        match self {
            Formula::Eq(a, b) => View::Eq(a, b),
            Formula::Mem(a, b) => View::Mem(a, b),
            Formula::False => View::False,
            Formula::St(s, t) => View::St(s.to_string(), t),
            Formula::And(a, b) => View::And(a, b),
            Formula::Implies(a, b) => View::Implies(a, b),
            Formula::Forall(x, s, b) => View::Quant(format!("forall {x}:{s}"), b),
            Formula::Exists(x, s, b) => View::Quant(format!("exists {x}:{s}"), b),
            Formula::ForallSt(x, s, b) => View::Quant(format!("forall^st {x}:{s}"), b),
            Formula::ExistsSt(x, s, b) => View::Quant(format!("exists^st {x}:{s}"), b),
        }
    }
}

impl Viewable for TargetFormula {
    fn view(&self) -> View<'_, Self> {
        match self {
            TargetFormula::Eq(a, b) => View::Eq(a, b),
            TargetFormula::Mem(a, b) => View::Mem(a, b),
            TargetFormula::False => View::False,
            TargetFormula::And(a, b) => View::And(a, b),
            TargetFormula::Implies(a, b) => View::Implies(a, b),
            TargetFormula::Forall(x, s, b) => View::Quant(format!("forall {x}:{s}"), b),
            TargetFormula::Exists(x, s, b) => View::Quant(format!("exists {x}:{s}"), b),
            TargetFormula::BoundedForall(x, set, b) => View::Quant(format!("forall {x} in {set}"), b),
            TargetFormula::BoundedExists(x, set, b) => View::Quant(format!("exists {x} in {set}"), b),
        }
    }
}

fn write_formula<F: Viewable>(a: &F, f: &mut Formatter<'_>, min: u8, tail: bool) -> fmt::Result {
    let v = a.view();
    let p = match v {
        View::Quant(..) => F_QUANT,
        View::Implies(..) => F_IMPL,
        View::And(..) => F_AND,
        _ => F_ATOM,
    };
    let bare = if p == F_QUANT { tail } else { p >= min };
    if !bare {
        f.write_char('(')?;
        write_formula(a, f, F_QUANT, true)?;
        return f.write_char(')');
    }
    match v {
        View::Eq(x, y) => {
            write_term(x, f, P_LAMBDA, false)?;
            f.write_str(" = ")?;
            write_term(y, f, P_LAMBDA, false)
        }
        View::Mem(x, y) => {
            write_term(x, f, P_LAMBDA, false)?;
            f.write_str(" in ")?;
            write_term(y, f, P_LAMBDA, false)
        }
        View::False => f.write_str("bot"),
        View::St(s, t) => {
            write!(f, "st[{s}](")?;
            write_term(t, f, P_LAMBDA, true)?;
            f.write_char(')')
        }
        View::And(l, r) => {
            write_formula(l, f, F_ATOM, false)?;
            f.write_str(" /\\ ")?;
            write_formula(r, f, F_AND, tail)
        }
        View::Implies(l, r) => {
            write_formula(l, f, F_AND, false)?;
            f.write_str(" -> ")?;
            write_formula(r, f, F_IMPL, tail)
        }
        View::Quant(prefix, body) => {
            f.write_str(&prefix)?;
            f.write_str(". ")?;
            write_formula(body, f, F_QUANT, true)
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(self, f, F_QUANT, true)
    }
}

impl Display for TargetFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(self, f, F_QUANT, true)
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_formula, parse_raw_term as parse_term, parse_target};

    fn round(s: &str) -> String {
        parse_formula(s).unwrap().to_string()
    }

    #[test]
    fn source_formulas_print_canonically() {
        assert_eq!(
            round("forall^st n:N. exists^st m:N. n = m"),
            "forall^st n:N. exists^st m:N. n = m"
        );
        assert_eq!(round("(a = b -> c = d) -> e = f"), "(a = b -> c = d) -> e = f");
        assert_eq!(round("a = b -> c = d -> e = f"), "a = b -> c = d -> e = f");
        assert_eq!(
            round("(forall^st n:N. n = c) -> c = 0"),
            "(forall^st n:N. n = c) -> c = 0"
        );
        assert_eq!(round("~st[N](x)"), "st[N](x) -> bot");
    }

    #[test]
    fn target_formulas_print_canonically() {
        let t = parse_target("forall u#0:N. exists v#0 in r#0[u#0]. u#0 = v#0").unwrap();
        assert_eq!(t.to_string(), "forall u#0:N. exists v#0 in r#0[u#0]. u#0 = v#0");
    }

    #[test]
    fn terms_print_canonically() {
        for s in [
            "fun n:N => {n, succ n}",
            "f[x] u g[x, y]",
            "f (g x) y",
            "succ (f x)",
            "fun-table [0 => {0}, 1 => {1}]",
            "{f x : x in s}",
            "(fun x:N => x) 0",
            "f[]",
        ] {
            assert_eq!(parse_term(s).unwrap().to_string(), s);
        }
    }
}
