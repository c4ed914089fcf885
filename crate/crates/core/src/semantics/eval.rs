//! Call-by-value evaluation of terms and decision of translated formulas.

use crate::error::{Error, Result};
use crate::semantics::model::Model;
use crate::semantics::value::Value;
use crate::syntax::{TargetFormula, Term};

/// Value environment; later bindings shadow earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Env {
    vars: Vec<(String, Value)>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(vars: impl IntoIterator<Item = (String, Value)>) -> Self {
        Env {
            vars: vars.into_iter().collect(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, v: Value) {
        self.vars.push((name.into(), v));
    }

    pub fn pop(&mut self) {
        self.vars.pop();
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.vars.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

pub fn eval(t: &Term, env: &mut Env, model: &Model) -> Result<Value> {
    match t {
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone())),
        Term::Nat(n) => Ok(Value::Nat((*n).min(u64::from(model.k())) as u32)),
        Term::Succ(x) => {
            let n = eval(x, env, model)?.as_nat()?;
            Ok(Value::Nat((n + 1).min(model.k())))
        }
        Term::Lambda(x, sort, body) => {
            let keys = model.enumerate(sort)?;
            let mut rows = Vec::with_capacity(keys.len());
            for k in keys.iter() {
                env.push(x.clone(), k.clone());
                let r = eval(body, env, model);
                env.pop();
                rows.push((k.clone(), r?));
            }
            Ok(Value::Fun(rows.into()))
        }
        Term::App(f, x) => {
            let f = eval(f, env, model)?;
            let x = eval(x, env, model)?;
            f.apply(&x)
        }
        Term::SetApp(f, args) => {
            let fs = eval(f, env, model)?;
            let args = args
                .iter()
                .map(|a| eval(a, env, model))
                .collect::<Result<Vec<_>>>()?;
            set_apply(&fs, &args)
        }
        Term::SetLit(es) => {
            let vals = es
                .iter()
                .map(|e| eval(e, env, model))
                .collect::<Result<Vec<_>>>()?;
            Value::set(vals)
        }
        Term::Union(a, b) => {
            let a = eval(a, env, model)?;
            let b = eval(b, env, model)?;
            a.union(&b)
        }
        Term::SetMap { var, over, body } => {
            let over = eval(over, env, model)?;
            let mut out = Vec::new();
            for x in over.as_set()?.iter() {
                env.push(var.clone(), x.clone());
                let r = eval(body, env, model);
                env.pop();
                out.push(r?);
            }
            Value::set(out)
        }
        Term::Table(rows) => {
            let mut vals = Vec::with_capacity(rows.len());
            for (k, v) in rows {
                vals.push((eval(k, env, model)?, eval(v, env, model)?));
            }
            vals.sort();
            vals.dedup();
            if vals.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::type_in(
                    "one result per argument",
                    "a repeated argument",
                    "function table",
                ));
            }
            Ok(Value::Fun(vals.into()))
        }
    }
}

/// `f[r₁, …, rₙ]`: the union over `f′ ∈ f` of `f′ r₁ … rₙ`.
pub fn set_apply(fs: &Value, args: &[Value]) -> Result<Value> {
    let members = fs.as_set()?;
    let results = members
        .iter()
        .map(|f| f.apply_all(args))
        .collect::<Result<Vec<_>>>()?;
    Value::union_all(results.iter())
}

pub fn eval_closed(t: &Term, model: &Model) -> Result<Value> {
    eval(t, &mut Env::new(), model)
}

/// Truth of a translated formula in the bounded model.
pub fn holds(a: &TargetFormula, env: &mut Env, model: &Model) -> Result<bool> {
    match a {
        TargetFormula::Eq(x, y) => Ok(eval(x, env, model)? == eval(y, env, model)?),
        TargetFormula::False => Ok(false),
        TargetFormula::Mem(x, s) => {
            let x = eval(x, env, model)?;
            eval(s, env, model)?.contains(&x)
        }
        TargetFormula::And(l, r) => Ok(holds(l, env, model)? && holds(r, env, model)?),
        TargetFormula::Implies(l, r) => Ok(!holds(l, env, model)? || holds(r, env, model)?),
        TargetFormula::Forall(x, sort, b) => {
            let dom = model.enumerate(sort)?;
            quantify(x, dom.iter(), b, env, model, true)
        }
        TargetFormula::Exists(x, sort, b) => {
            let dom = model.enumerate(sort)?;
            quantify(x, dom.iter(), b, env, model, false)
        }
        TargetFormula::BoundedForall(x, set, b) => {
            let s = eval(set, env, model)?;
            quantify(x, s.as_set()?.iter(), b, env, model, true)
        }
        TargetFormula::BoundedExists(x, set, b) => {
            let s = eval(set, env, model)?;
            quantify(x, s.as_set()?.iter(), b, env, model, false)
        }
    }
}

fn quantify<'a>(
    x: &str,
    dom: impl Iterator<Item = &'a Value>,
    body: &TargetFormula,
    env: &mut Env,
    model: &Model,
    universal: bool,
) -> Result<bool> {
    for v in dom {
        env.push(x, v.clone());
        let r = holds(body, env, model);
        env.pop();
        if r? != universal {
            return Ok(!universal);
        }
    }
    Ok(universal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::model::Bound;
    use crate::syntax::parse_raw_term;

    fn ev(s: &str, k: u32) -> Result<Value> {
        let m = Model::new(Bound::new(k, 4096, 0).unwrap()).unwrap();
        eval_closed(&parse_raw_term(s).unwrap(), &m)
    }

    #[test]
    fn set_application_is_a_union() {
        assert_eq!(
            ev("{fun n:N => {n}, fun n:N => {succ n}}[3]", 5).unwrap().to_string(),
            "{3,4}"
        );
    }

    #[test]
    fn lambdas_become_tables() {
        assert_eq!(
            ev("fun n:N => {n}", 1).unwrap().to_string(),
            "fun-table [0 => {0}, 1 => {1}]"
        );
    }

    #[test]
    fn successor_saturates() {
        assert_eq!(ev("succ 3", 3).unwrap(), Value::Nat(3));
        assert_eq!(ev("7", 3).unwrap(), Value::Nat(3));
    }

    #[test]
    fn comprehension_and_big_union() {
        assert_eq!(ev("{succ x : x in {0, 1}}", 3).unwrap().to_string(), "{1,2}");
        assert_eq!(ev("{{0}, {2}}[]", 3).unwrap().to_string(), "{0,2}");
    }

    #[test]
    fn tables_round_trip() {
        let v = ev("fun-table [1 => {1}, 0 => {0}]", 1).unwrap();
        assert_eq!(v.to_string(), "fun-table [0 => {0}, 1 => {1}]");
        assert!(ev("fun-table [0 => 0, 0 => 1]", 1).is_err());
    }

    #[test]
    fn function_tables_over_large_domains_hit_the_budget() {
        let m = Model::new(Bound::new(2, 16, 0).unwrap()).unwrap();
        let t = parse_raw_term("fun f:N -> N* => 0").unwrap();
        assert!(eval_closed(&t, &m).unwrap_err().is_budget());
    }
}
