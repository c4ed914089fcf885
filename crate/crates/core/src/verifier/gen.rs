//! Targeted instance generators for sampled mode.

use rand::Rng;

use crate::conversions::{down_pos, up_pos};
use crate::error::Result;
use crate::semantics::{Model, Value};
use crate::syntax::Formula;
use crate::types::FiniteType;

pub fn sample_tuple<R: Rng + ?Sized>(tys: &[FiniteType], m: &Model, rng: &mut R) -> Result<Vec<Value>> {
    tys.iter().map(|t| m.sample(t, rng)).collect()
}

/// Componentwise union of two tuples of sets.
pub fn union_tuple(a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    a.iter().zip(b).map(|(x, y)| x.union(y)).collect()
}

/// Least upper bound of two values of a *-type under `≼`.
pub fn join(ty: &FiniteType, a: &Value, b: &Value) -> Result<Value> {
    match ty {
        FiniteType::Arrow(_, cod) => {
            let rows = a
                .as_fun()?
                .iter()
                .zip(b.as_fun()?)
                .map(|((k, x), (_, y))| Ok((k.clone(), join(cod, x, y)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Value::fun_sorted(rows))
        }
        _ => a.union(b),
    }
}

pub fn join_tuple(tys: &[FiniteType], a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    tys.iter().zip(a).zip(b).map(|((t, x), y)| join(t, x, y)).collect()
}

/// A superset of `r`, componentwise.
pub fn superset<R: Rng + ?Sized>(tys: &[FiniteType], r: &[Value], m: &Model, rng: &mut R) -> Result<Vec<Value>> {
    union_tuple(r, &sample_tuple(tys, m, rng)?)
}

/// A tuple above `r` in `≼`, by pointwise enlargement.
pub fn enlarge_down<R: Rng + ?Sized>(
    tys: &[FiniteType],
    r: &[Value],
    m: &Model,
    rng: &mut R,
) -> Result<Vec<Value>> {
    if rng.gen_bool(0.25) {
        return Ok(r.to_vec());
    }
    join_tuple(tys, r, &sample_tuple(tys, m, rng)?)
}

/// A candidate above `r` in `⊑_A`: a superset, a regrouping through the down
/// presentation, or both.
pub fn enlarge_up<R: Rng + ?Sized>(
    a: &Formula,
    tys: &[FiniteType],
    r: &[Value],
    m: &Model,
    rng: &mut R,
) -> Result<Vec<Value>> {
    match rng.gen_range(0..4) {
        0 => superset(tys, r, m, rng),
        1 => regroup(a, r, m),
        2 => {
            let s = superset(tys, r, m, rng)?;
            regroup(a, &s, m)
        }
        _ => Ok(r.to_vec()),
    }
}

/// `(r↓)↑`, which merges the members of every set of functionals.
pub fn regroup(a: &Formula, r: &[Value], m: &Model) -> Result<Vec<Value>> {
    up_pos(a, &down_pos(a, r, m)?, m)
}

/// The largest value of a type in the bounded model, if it is small enough to build.
pub fn top(ty: &FiniteType, m: &Model) -> Result<Value> {
    match ty {
        FiniteType::Nat => Ok(Value::Nat(m.k())),
        FiniteType::Star(e) => {
            if m.cardinality(e).is_some_and(|n| n <= 8) {
                Value::set(m.enumerate(e)?.to_vec())
            } else {
                Ok(Value::singleton(top(e, m)?))
            }
        }
        FiniteType::Arrow(d, c) => {
            let t = top(c, m)?;
            let rows = m.enumerate(d)?.iter().map(|k| (k.clone(), t.clone())).collect();
            Ok(Value::fun_sorted(rows))
        }
    }
}

pub fn top_tuple(tys: &[FiniteType], m: &Model) -> Result<Vec<Value>> {
    tys.iter().map(|t| top(t, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{preceq_tuple, sqsubseteq, subset};
    use crate::semantics::Bound;
    use crate::space::rng_for;
    use crate::syntax::parse_formula;
    use crate::types::{down_types, up_types};

    fn model() -> Model {
        Model::new(Bound::new(2, 4096, 0).unwrap()).unwrap()
    }

    #[test]
    fn generators_respect_their_orders() {
        let m = model();
        let a = parse_formula("forall^st n:N. exists^st m:N. n = m").unwrap();
        let up = up_types(&a).0 .0;
        let down = down_types(&a).0 .0;
        let mut rng = rng_for(0, "gen");
        for _ in 0..32 {
            let r = sample_tuple(&up, &m, &mut rng).unwrap();
            let s = superset(&up, &r, &m, &mut rng).unwrap();
            assert!(subset(&r, &s).unwrap());
            let g = regroup(&a, &r, &m).unwrap();
            assert!(sqsubseteq(&a, &r, &g, &m).unwrap());
            assert!(sqsubseteq(&a, &g, &r, &m).unwrap());
            let d = sample_tuple(&down, &m, &mut rng).unwrap();
            let e = enlarge_down(&down, &d, &m, &mut rng).unwrap();
            assert!(preceq_tuple(&down, &d, &e).unwrap());
        }
    }

    #[test]
    fn top_is_maximal() {
        let m = model();
        let a = parse_formula("forall^st n:N. exists^st m:N. n = m").unwrap();
        let down = down_types(&a).0 .0;
        let t = top_tuple(&down, &m).unwrap();
        m.check_tuple(&t, &down).unwrap();
        let mut rng = rng_for(0, "top");
        for _ in 0..16 {
            let d = sample_tuple(&down, &m, &mut rng).unwrap();
            assert!(preceq_tuple(&down, &d, &t).unwrap());
        }
    }
}
