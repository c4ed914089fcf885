//! Componentwise inclusion, the formula-indexed order ⊑ on up witnesses and
//! the type-indexed order ≼ on *-types, decided in the bounded model.
//!
//! Universal clauses range over the bounded enumeration only.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::semantics::{set_apply, Model, Value};
use crate::space::{expect_len, for_all};
use crate::syntax::Formula;
use crate::types::{down_types, up_types, FiniteType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Subset,
    Sq,
    Preceq,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Subset, OrderKind::Sq, OrderKind::Preceq];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Subset => "subset",
            OrderKind::Sq => "sq",
            OrderKind::Preceq => "preceq",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown order `{s}` (expected subset, sq or preceq)")))
    }
}

/// `a ⊆ b` componentwise.
pub fn subset(a: &[Value], b: &[Value]) -> Result<bool> {
    expect_len(b, a.len(), "subset operands")?;
    for (x, y) in a.iter().zip(b) {
        if !x.is_subset(y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a ≼_ty b`.
pub fn preceq(ty: &FiniteType, a: &Value, b: &Value) -> Result<bool> {
    match ty {
        FiniteType::Star(_) => a.is_subset(b),
        FiniteType::Arrow(_, cod) => {
            if !ty.is_star_type() {
                return Err(Error::NotAStarType(ty.clone()));
            }
            let (fa, fb) = (a.as_fun()?, b.as_fun()?);
            if fa.len() != fb.len() {
                return Err(Error::type_in(ty, "tables over different domains", "preceq"));
            }
            for ((ka, va), (kb, vb)) in fa.iter().zip(fb) {
                if ka != kb {
                    return Err(Error::type_in(ty, "tables over different domains", "preceq"));
                }
                if !preceq(cod, va, vb)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FiniteType::Nat => Err(Error::NotAStarType(ty.clone())),
    }
}

/// `a ≼ b` componentwise at the tuple of types `tys`.
pub fn preceq_tuple(tys: &[FiniteType], a: &[Value], b: &[Value]) -> Result<bool> {
    expect_len(a, tys.len(), "preceq operands")?;
    expect_len(b, tys.len(), "preceq operands")?;
    for ((t, x), y) in tys.iter().zip(a).zip(b) {
        if !preceq(t, x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn up_pos_len(a: &Formula) -> usize {
    up_types(a).0.len()
}

fn down_pos_len(a: &Formula) -> usize {
    down_types(a).0.len()
}

fn set_apply_all(fs: &[Value], args: &[Value]) -> Result<Vec<Value>> {
    fs.iter().map(|f| set_apply(f, args)).collect()
}

fn apply_each(fs: &[Value], args: &[Value]) -> Result<Vec<Value>> {
    fs.iter().map(|f| f.apply_all(args)).collect()
}

/// `a ⊑_A b` for tuples at the positive up types of `A`.
pub fn sqsubseteq(a_f: &Formula, a: &[Value], b: &[Value], m: &Model) -> Result<bool> {
    let n = up_pos_len(a_f);
    expect_len(a, n, "sq operands")?;
    expect_len(b, n, "sq operands")?;
    match a_f {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) => Ok(true),
        Formula::St(..) => a[0].is_subset(&b[0]),
        Formula::And(l, r) => {
            let k = up_pos_len(l);
            Ok(sqsubseteq(l, &a[..k], &b[..k], m)? && sqsubseteq(r, &a[k..], &b[k..], m)?)
        }
        Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => sqsubseteq(body, a, b, m),
        Formula::ExistsSt(_, _, body) => {
            Ok(a[0].is_subset(&b[0])? && sqsubseteq(body, &a[1..], &b[1..], m)?)
        }
        Formula::ForallSt(_, sort, body) => for_all(std::slice::from_ref(sort), m, "sq clause", |c| {
            sqsubseteq(body, &set_apply_all(a, c)?, &set_apply_all(b, c)?, m)
        }),
        Formula::Implies(ante, cons) => {
            let nb = up_pos_len(cons);
            let (fa, ga) = a.split_at(nb);
            let (fb, gb) = b.split_at(nb);
            let (rt, _) = up_types(ante);
            let (_, ut) = up_types(cons);
            let equality = m.is_mutated(Mutation::SqEquality);
            let f_ok = for_all(&rt.0, m, "sq clause", |r| {
                let (x, y) = (set_apply_all(fa, r)?, set_apply_all(fb, r)?);
                if equality {
                    Ok(x == y)
                } else {
                    sqsubseteq(cons, &x, &y, m)
                }
            })?;
            if !f_ok {
                return Ok(false);
            }
            let ru = [rt.0, ut.0].concat();
            for_all(&ru, m, "sq clause", |args| {
                subset(&set_apply_all(ga, args)?, &set_apply_all(gb, args)?)
            })
        }
    }
}

/// The formula-directed unfolding of `a ≼ b` at the positive down types of `A`.
pub fn preceq_unfold(a_f: &Formula, a: &[Value], b: &[Value], m: &Model) -> Result<bool> {
    let n = down_pos_len(a_f);
    expect_len(a, n, "preceq operands")?;
    expect_len(b, n, "preceq operands")?;
    match a_f {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) => Ok(true),
        Formula::St(..) => a[0].is_subset(&b[0]),
        Formula::And(l, r) => {
            let k = down_pos_len(l);
            Ok(preceq_unfold(l, &a[..k], &b[..k], m)? && preceq_unfold(r, &a[k..], &b[k..], m)?)
        }
        Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => preceq_unfold(body, a, b, m),
        Formula::ExistsSt(_, _, body) => {
            Ok(a[0].is_subset(&b[0])? && preceq_unfold(body, &a[1..], &b[1..], m)?)
        }
        Formula::ForallSt(_, sort, body) => {
            for_all(std::slice::from_ref(sort), m, "preceq clause", |c| {
                preceq_unfold(body, &apply_each(a, c)?, &apply_each(b, c)?, m)
            })
        }
        Formula::Implies(ante, cons) => {
            let nb = down_pos_len(cons);
            let (fa, ga) = a.split_at(nb);
            let (fb, gb) = b.split_at(nb);
            let (rt, _) = down_types(ante);
            let (_, ut) = down_types(cons);
            let f_ok = for_all(&rt.0, m, "preceq clause", |r| {
                preceq_unfold(cons, &apply_each(fa, r)?, &apply_each(fb, r)?, m)
            })?;
            if !f_ok {
                return Ok(false);
            }
            let ru = [rt.0, ut.0].concat();
            for_all(&ru, m, "preceq clause", |args| {
                subset(&apply_each(ga, args)?, &apply_each(gb, args)?)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{parse_value, Bound};
    use crate::syntax::{parse_formula, parse_type};

    fn model(k: u32) -> Model {
        Model::new(Bound::new(k, 1 << 16, 0).unwrap()).unwrap()
    }

    fn val(text: &str, ty: &str, m: &Model) -> Value {
        parse_value(text, &parse_type(ty).unwrap(), m).unwrap()
    }

    const A: &str = "forall^st n:N. exists^st m:N. n = m";
    const NU: &str = "(N -> N*)*";

    #[test]
    fn subset_examples() {
        let m = model(3);
        let t = val("{fun n:N => {n}}", NU, &m);
        let t1 = val("{fun n:N => {n}, fun n:N => {succ n}}", NU, &m);
        let t2 = val("{fun n:N => {n, succ n}}", NU, &m);
        assert!(subset(&[t.clone()], &[t1.clone()]).unwrap());
        assert!(!subset(&[t1.clone()], &[t2.clone()]).unwrap());
        assert!(!subset(&[t2], &[t1]).unwrap());
        assert!(subset(&[t.clone()], &[t]).unwrap());
    }

    #[test]
    fn sq_examples() {
        let m = model(3);
        let a = parse_formula(A).unwrap();
        let t = val("{fun n:N => {n}}", NU, &m);
        let t1 = val("{fun n:N => {n}, fun n:N => {succ n}}", NU, &m);
        let t2 = val("{fun n:N => {n, succ n}}", NU, &m);
        assert!(sqsubseteq(&a, &[t.clone()], &[t1.clone()], &m).unwrap());
        assert!(sqsubseteq(&a, &[t1.clone()], &[t2.clone()], &m).unwrap());
        assert!(sqsubseteq(&a, &[t2.clone()], &[t1.clone()], &m).unwrap());
        assert!(sqsubseteq(&a, &[t.clone()], &[t.clone()], &m).unwrap());
        assert!(!sqsubseteq(&a, &[t1], &[t], &m).unwrap());
    }

    #[test]
    fn preceq_examples() {
        let m = model(2);
        let n_star = parse_type("N*").unwrap();
        assert!(preceq(&n_star, &val("{0}", "N*", &m), &val("{0, 1}", "N*", &m)).unwrap());
        let fty = parse_type("N -> N*").unwrap();
        let f = val("fun n:N => {n}", "N -> N*", &m);
        let g = val("fun n:N => {n, succ n}", "N -> N*", &m);
        assert!(preceq(&fty, &f, &g).unwrap());
        assert!(!preceq(&fty, &g, &f).unwrap());
        assert!(preceq(&fty, &f, &f).unwrap());
    }

    #[test]
    fn preceq_rejects_non_star_types() {
        let m = model(1);
        let nat = parse_type("N").unwrap();
        assert!(matches!(
            preceq(&nat, &Value::Nat(0), &Value::Nat(0)),
            Err(Error::NotAStarType(_))
        ));
        let bad = parse_type("N -> N").unwrap();
        let f = val("fun n:N => n", "N -> N", &m);
        assert!(matches!(preceq(&bad, &f, &f), Err(Error::NotAStarType(_))));
    }

    #[test]
    fn sq_equality_mutation_changes_implication_clause() {
        let b = Bound::new(1, 1 << 16, 0).unwrap();
        let m = Model::with_mutation(b, Some(Mutation::SqEquality)).unwrap();
        let a = parse_formula("st[N](z) -> st[N](w)").unwrap();
        let ty = up_types(&a).0 .0[0].to_string();
        let f = val("{fun x:N* => {0}}", &ty, &m);
        let g = val("{fun x:N* => {0}, fun x:N* => {1}}", &ty, &m);
        assert!(subset(&[f.clone()], &[g.clone()]).unwrap());
        assert!(!sqsubseteq(&a, &[f.clone()], &[g.clone()], &m).unwrap());
        let pure = model(1);
        assert!(sqsubseteq(&a, &[f], &[g], &pure).unwrap());
    }

    #[test]
    fn unfolding_agrees_on_running_example() {
        let m = model(1);
        let a = parse_formula(A).unwrap();
        let (dp, _) = down_types(&a);
        let vals = m.enumerate(&dp.0[0]).unwrap();
        for x in vals.iter() {
            for y in vals.iter() {
                let l = preceq_tuple(&dp.0, &[x.clone()], &[y.clone()]).unwrap();
                let r = preceq_unfold(&a, &[x.clone()], &[y.clone()], &m).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}
