//! Typing of terms and formulas.
//!
//! Free variables of a source formula are parameters of type `N`; using one at
//! another type is a scope error.

use crate::error::{Error, Pos, Result};
use crate::syntax::{Formula, TargetFormula, Term};
use crate::types::FiniteType;

#[derive(Debug, Clone, Default)]
pub struct TypeEnv {
    /// (name, type, implicit parameter)
    vars: Vec<(String, FiniteType, bool)>,
}

impl TypeEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(vars: impl IntoIterator<Item = (String, FiniteType)>) -> Self {
        TypeEnv {
            vars: vars.into_iter().map(|(n, t)| (n, t, false)).collect(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, ty: FiniteType) {
        self.vars.push((name.into(), ty, false));
    }

    fn push_param(&mut self, name: String) {
        self.vars.push((name, FiniteType::Nat, true));
    }

    pub fn pop(&mut self) {
        self.vars.pop();
    }

    fn lookup(&self, name: &str) -> Option<(&FiniteType, bool)> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _, _)| n == name)
            .map(|(_, t, p)| (t, *p))
    }

    fn is_param<'t>(&self, t: &'t Term) -> Option<&'t str> {
        match t {
            Term::Var(v) => match self.lookup(v) {
                Some((_, true)) => Some(v),
                _ => None,
            },
            _ => None,
        }
    }
}

fn param_misuse(name: &str, wanted: &str) -> Error {
    Error::Scope {
        pos: Pos { line: 1, col: 1 },
        msg: format!(
            "unbound variable `{name}` is used as {wanted}; free variables are parameters of type N"
        ),
    }
}

pub fn synth(t: &Term, env: &mut TypeEnv) -> Result<FiniteType> {
    match t {
        Term::Var(v) => env
            .lookup(v)
            .map(|(ty, _)| ty.clone())
            .ok_or_else(|| Error::UnboundVariable(v.clone())),
        Term::Nat(_) => Ok(FiniteType::Nat),
        Term::Succ(x) => {
            check(x, &FiniteType::Nat, env)?;
            Ok(FiniteType::Nat)
        }
        Term::Lambda(x, s, body) => {
            env.push(x.clone(), s.clone());
            let r = synth(body, env);
            env.pop();
            Ok(FiniteType::arrow(s.clone(), r?))
        }
        Term::App(f, x) => {
            if let Some(p) = env.is_param(f) {
                return Err(param_misuse(p, "a function"));
            }
            match synth(f, env)? {
                FiniteType::Arrow(d, c) => {
                    check(x, &d, env)?;
                    Ok(*c)
                }
                other => Err(Error::type_in("a function type", other, format!("applying `{f}`"))),
            }
        }
        Term::SetApp(f, args) => {
            if let Some(p) = env.is_param(f) {
                return Err(param_misuse(p, "a set of functions"));
            }
            let fty = synth(f, env)?;
            let inner = fty.set_element().cloned().ok_or_else(|| {
                Error::type_in("a set type", &fty, format!("set application of `{f}`"))
            })?;
            let (doms, res) = inner.uncurry(args.len()).ok_or_else(|| {
                Error::Arity(format!(
                    "`{f}` of type {fty} cannot take {} argument(s)",
                    args.len()
                ))
            })?;
            let doms: Vec<FiniteType> = doms.into_iter().cloned().collect();
            let res = res.clone();
            for (a, d) in args.iter().zip(&doms) {
                check(a, d, env)?;
            }
            if res.set_element().is_none() {
                return Err(Error::type_in(
                    "a set-valued result",
                    &res,
                    format!("set application of `{f}`"),
                ));
            }
            Ok(res)
        }
        Term::SetLit(es) => {
            let first = es.first().ok_or(Error::EmptySetLiteral)?;
            let ety = synth(first, env)?;
            for e in &es[1..] {
                check(e, &ety, env)?;
            }
            Ok(FiniteType::star(ety))
        }
        Term::Union(a, b) => {
            if let Some(p) = env.is_param(a) {
                return Err(param_misuse(p, "a set"));
            }
            let ty = synth(a, env)?;
            if ty.set_element().is_none() {
                return Err(Error::type_in("a set type", &ty, "union"));
            }
            check(b, &ty, env)?;
            Ok(ty)
        }
        Term::SetMap { var, over, body } => {
            if let Some(p) = env.is_param(over) {
                return Err(param_misuse(p, "a set"));
            }
            let oty = synth(over, env)?;
            let ety = oty
                .set_element()
                .cloned()
                .ok_or_else(|| Error::type_in("a set type", &oty, "comprehension"))?;
            env.push(var.clone(), ety);
            let r = synth(body, env);
            env.pop();
            Ok(FiniteType::star(r?))
        }
        Term::Table(rows) => {
            let (k0, v0) = rows
                .first()
                .ok_or_else(|| Error::PartialTable(FiniteType::Nat))?;
            let kty = synth(k0, env)?;
            let vty = synth(v0, env)?;
            for (k, v) in &rows[1..] {
                check(k, &kty, env)?;
                check(v, &vty, env)?;
            }
            Ok(FiniteType::arrow(kty, vty))
        }
    }
}

pub fn check(t: &Term, expected: &FiniteType, env: &mut TypeEnv) -> Result<()> {
    if let Some(p) = env.is_param(t) {
        if *expected != FiniteType::Nat {
            return Err(param_misuse(p, &format!("a value of type {expected}")));
        }
    }
    let got = synth(t, env)?;
    if &got == expected {
        Ok(())
    } else {
        Err(Error::type_in(expected, got, format!("term `{t}`")))
    }
}

/// Checks a closed term.
pub fn check_closed(t: &Term, expected: &FiniteType) -> Result<()> {
    check(t, expected, &mut TypeEnv::new())
}

pub fn check_formula(a: &Formula) -> Result<()> {
    let mut env = TypeEnv::new();
    for v in a.free_vars() {
        env.push_param(v);
    }
    formula(a, &mut env)
}

fn membership(x: &Term, s: &Term, env: &mut TypeEnv) -> Result<()> {
    if let Some(p) = env.is_param(s) {
        return Err(param_misuse(p, "a set"));
    }
    let sty = synth(s, env)?;
    let ety = sty
        .set_element()
        .cloned()
        .ok_or_else(|| Error::type_in("a set type", &sty, format!("membership in `{s}`")))?;
    check(x, &ety, env)
}

fn formula(a: &Formula, env: &mut TypeEnv) -> Result<()> {
    match a {
        Formula::Eq(x, y) => {
            check(x, &FiniteType::Nat, env)?;
            check(y, &FiniteType::Nat, env)
        }
        Formula::False => Ok(()),
        Formula::Mem(x, s) => membership(x, s, env),
        Formula::St(sort, t) => check(t, sort, env),
        Formula::And(l, r) | Formula::Implies(l, r) => {
            formula(l, env)?;
            formula(r, env)
        }
        Formula::Forall(x, s, b)
        | Formula::Exists(x, s, b)
        | Formula::ForallSt(x, s, b)
        | Formula::ExistsSt(x, s, b) => {
            env.push(x.clone(), s.clone());
            let r = formula(b, env);
            env.pop();
            r
        }
    }
}

/// Checks a translated formula against declared variable types.
pub fn check_target(a: &TargetFormula, env: &mut TypeEnv) -> Result<()> {
    match a {
        TargetFormula::Eq(x, y) => {
            check(x, &FiniteType::Nat, env)?;
            check(y, &FiniteType::Nat, env)
        }
        TargetFormula::False => Ok(()),
        TargetFormula::Mem(x, s) => membership(x, s, env),
        TargetFormula::And(l, r) | TargetFormula::Implies(l, r) => {
            check_target(l, env)?;
            check_target(r, env)
        }
        TargetFormula::Forall(x, s, b) | TargetFormula::Exists(x, s, b) => {
            env.push(x.clone(), s.clone());
            let r = check_target(b, env);
            env.pop();
            r
        }
        TargetFormula::BoundedForall(x, set, b) | TargetFormula::BoundedExists(x, set, b) => {
            let sty = synth(set, env)?;
            let ety = sty
                .set_element()
                .cloned()
                .ok_or_else(|| Error::type_in("a set type", &sty, "bounded quantifier"))?;
            env.push(x.clone(), ety);
            let r = check_target(b, env);
            env.pop();
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_raw_term, parse_type};

    fn ty(s: &str) -> FiniteType {
        parse_type(s).unwrap()
    }

    fn synth_closed(s: &str) -> Result<FiniteType> {
        synth(&parse_raw_term(s).unwrap(), &mut TypeEnv::new())
    }

    #[test]
    fn witness_terms() {
        assert_eq!(
            synth_closed("{fun n:N => {n}, fun n:N => {succ n}}").unwrap(),
            ty("(N -> N*)*")
        );
        assert_eq!(
            synth_closed("{fun n:N => {n}, fun n:N => {succ n}}[3]").unwrap(),
            ty("N*")
        );
        assert_eq!(synth_closed("fun n:N => {n, succ n}").unwrap(), ty("N -> N*"));
    }

    #[test]
    fn set_application_over_several_arguments() {
        let mut env = TypeEnv::with([
            ("g".to_string(), ty("(N* -> N -> N**)*")),
            ("r".to_string(), ty("N*")),
        ]);
        let t = parse_raw_term("g[r, 0]").unwrap();
        assert_eq!(synth(&t, &mut env).unwrap(), ty("N**"));
        let t = parse_raw_term("g[r]").unwrap();
        assert!(synth(&t, &mut env).is_err());
        let t = parse_raw_term("g[r, 0, 1]").unwrap();
        assert!(matches!(synth(&t, &mut env), Err(Error::Arity(_))));
    }

    #[test]
    fn mismatches_report_both_types() {
        let e = check_closed(&parse_raw_term("{0}").unwrap(), &FiniteType::Nat).unwrap_err();
        match e {
            Error::Type { expected, actual, .. } => {
                assert_eq!(expected, "N");
                assert_eq!(actual, "N*");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            synth_closed("x"),
            Err(Error::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn formulas() {
        assert!(parse_formula("forall^st n:N. exists^st m:N. n = m").is_ok());
        assert!(parse_formula("forall x:N*. x = 0").is_err());
        assert!(parse_formula("exists s:N*. 0 in s").is_ok());
        assert!(matches!(parse_formula("0 in z"), Err(Error::Scope { .. })));
        assert!(matches!(parse_formula("st[N*](z)"), Err(Error::Scope { .. })));
        assert!(matches!(parse_formula("f z = 0"), Err(Error::Scope { .. })));
    }
}
