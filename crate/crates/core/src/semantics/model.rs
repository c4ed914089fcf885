//! The bounded model: naturals `0..=k`, all non-empty subsets, all total tables.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::semantics::value::Value;
use crate::types::FiniteType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bound {
    pub k: u32,
    pub budget: u64,
    pub seed: u64,
}

impl Default for Bound {
    fn default() -> Self {
        Bound {
            k: 2,
            budget: 4096,
            seed: 0,
        }
    }
}

impl Bound {
    pub fn new(k: u32, budget: u64, seed: u64) -> Result<Bound> {
        if k < 1 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if budget < 1 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        Ok(Bound { k, budget, seed })
    }
}

/// Largest domain for which sets are sampled as uniform non-empty subsets.
const UNIFORM_SUBSET_LIMIT: u128 = 8;

#[derive(Debug)]
pub struct Model {
    bound: Bound,
    mutation: Option<Mutation>,
    cache: RwLock<HashMap<FiniteType, Arc<[Value]>>>,
}

impl Model {
    pub fn new(bound: Bound) -> Result<Model> {
        Bound::new(bound.k, bound.budget, bound.seed)?;
        Ok(Model {
            bound,
            mutation: None,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_mutation(bound: Bound, mutation: Option<Mutation>) -> Result<Model> {
        let mut m = Model::new(bound)?;
        m.mutation = mutation;
        Ok(m)
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn k(&self) -> u32 {
        self.bound.k
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn is_mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    /// Number of values of `ty`; `None` when it does not fit in 128 bits.
    pub fn cardinality(&self, ty: &FiniteType) -> Option<u128> {
        cardinality(ty, self.bound.k)
    }

    pub fn enumerable(&self, ty: &FiniteType) -> bool {
        matches!(self.cardinality(ty), Some(n) if n <= u128::from(self.bound.budget))
    }

    pub fn check_budget(&self, what: impl FnOnce() -> String, size: Option<u128>) -> Result<()> {
        match size {
            Some(n) if n <= u128::from(self.bound.budget) => Ok(()),
            _ => Err(Error::BudgetExceeded {
                what: what(),
                size,
                budget: self.bound.budget,
            }),
        }
    }

    /// All values of `ty` in canonical order.
    pub fn enumerate(&self, ty: &FiniteType) -> Result<Arc<[Value]>> {
        if let Some(v) = self.cache.read().unwrap().get(ty) {
            return Ok(v.clone());
        }
        self.check_budget(|| format!("type {ty}"), self.cardinality(ty))?;
        let vals: Arc<[Value]> = match ty {
            FiniteType::Nat => (0..=self.bound.k).map(Value::Nat).collect(),
            FiniteType::Star(e) => {
                let elems = self.enumerate(e)?;
                let n = elems.len();
                let mut out = Vec::with_capacity((1usize << n) - 1);
                for mask in 1u64..(1u64 << n) {
                    let sub: Vec<Value> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| elems[i].clone())
                        .collect();
                    out.push(Value::Set(sub.into()));
                }
                out.sort();
                out.into()
            }
            FiniteType::Arrow(d, c) => {
                let keys = self.enumerate(d)?;
                let vals = self.enumerate(c)?;
                let mut out = Vec::new();
                let mut idx = vec![0usize; keys.len()];
                loop {
                    let rows: Vec<(Value, Value)> = keys
                        .iter()
                        .zip(&idx)
                        .map(|(k, &i)| (k.clone(), vals[i].clone()))
                        .collect();
                    out.push(Value::Fun(rows.into()));
                    // odometer, last key fastest
                    let mut pos = keys.len();
                    loop {
                        if pos == 0 {
                            out.sort();
                            return Ok(self.store(ty, out.into()));
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < vals.len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        };
        Ok(self.store(ty, vals))
    }

    fn store(&self, ty: &FiniteType, vals: Arc<[Value]>) -> Arc<[Value]> {
        self.cache
            .write()
            .unwrap()
            .entry(ty.clone())
            .or_insert(vals)
            .clone()
    }

    /// One pseudo-random value of `ty`. Function domains must be enumerable.
    pub fn sample<R: Rng + ?Sized>(&self, ty: &FiniteType, rng: &mut R) -> Result<Value> {
        match ty {
            FiniteType::Nat => Ok(Value::Nat(rng.gen_range(0..=self.bound.k))),
            FiniteType::Star(e) => {
                let small = matches!(self.cardinality(e), Some(n) if n <= UNIFORM_SUBSET_LIMIT);
                if small {
                    let elems = self.enumerate(e)?;
                    let n = elems.len() as u32;
                    let mask: u32 = rng.gen_range(1..(1u32 << n));
                    let sub: Vec<Value> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| elems[i as usize].clone())
                        .collect();
                    Ok(Value::Set(sub.into()))
                } else {
                    let size = rng.gen_range(1..=3);
                    let mut elems = Vec::with_capacity(size);
                    for _ in 0..size {
                        elems.push(self.sample(e, rng)?);
                    }
                    Value::set(elems)
                }
            }
            FiniteType::Arrow(d, c) => {
                let keys = self.enumerate(d)?;
                let mut rows = Vec::with_capacity(keys.len());
                for k in keys.iter() {
                    rows.push((k.clone(), self.sample(c, rng)?));
                }
                Ok(Value::Fun(rows.into()))
            }
        }
    }

    /// `count` values of `ty` drawn deterministically from `seed`.
    pub fn sample_n(&self, ty: &FiniteType, seed: u64, count: usize) -> Result<Vec<Value>> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(ty, &mut rng)).collect()
    }

    /// Checks that `v` is a well-formed value of `ty` in this model.
    pub fn check_value(&self, v: &Value, ty: &FiniteType) -> Result<()> {
        match (ty, v) {
            (FiniteType::Nat, Value::Nat(n)) if *n <= self.bound.k => Ok(()),
            (FiniteType::Star(e), Value::Set(es)) => {
                if es.is_empty() || es.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::type_in(ty, "a non-canonical set", v.to_string()));
                }
                es.iter().try_for_each(|x| self.check_value(x, e))
            }
            (FiniteType::Arrow(d, c), Value::Fun(rows)) => {
                let keys = self.enumerate(d)?;
                if rows.len() != keys.len() || rows.iter().zip(keys.iter()).any(|((k, _), e)| k != e)
                {
                    return Err(Error::PartialTable((**d).clone()));
                }
                rows.iter().try_for_each(|(_, r)| self.check_value(r, c))
            }
            _ => Err(Error::type_in(ty, v.kind(), v.to_string())),
        }
    }

    pub fn check_tuple(&self, vals: &[Value], tys: &[FiniteType]) -> Result<()> {
        if vals.len() != tys.len() {
            return Err(Error::Arity(format!(
                "expected {} component(s), found {}",
                tys.len(),
                vals.len()
            )));
        }
        vals.iter().zip(tys).try_for_each(|(v, t)| self.check_value(v, t))
    }
}

pub fn cardinality(ty: &FiniteType, k: u32) -> Option<u128> {
    match ty {
        FiniteType::Nat => Some(u128::from(k) + 1),
        FiniteType::Star(e) => {
            let n = cardinality(e, k)?;
            if n >= 128 {
                None
            } else {
                Some((1u128 << n) - 1)
            }
        }
        FiniteType::Arrow(d, c) => {
            let n = cardinality(d, k)?;
            let m = cardinality(c, k)?;
            let exp = u32::try_from(n).ok()?;
            m.checked_pow(exp)
        }
    }
}

/// Product of the cardinalities of several types.
pub fn product_cardinality<'a>(tys: impl IntoIterator<Item = &'a FiniteType>, k: u32) -> Option<u128> {
    tys.into_iter()
        .try_fold(1u128, |acc, t| acc.checked_mul(cardinality(t, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    fn model(k: u32) -> Model {
        Model::new(Bound::new(k, 1 << 20, 0).unwrap()).unwrap()
    }

    fn strs(vals: &[Value]) -> Vec<String> {
        vals.iter().map(Value::to_string).collect()
    }

    #[test]
    fn small_enumerations() {
        let m = model(1);
        assert_eq!(strs(&m.enumerate(&FiniteType::Nat).unwrap()), ["0", "1"]);
        assert_eq!(
            strs(&m.enumerate(&parse_type("N*").unwrap()).unwrap()),
            ["{0}", "{0,1}", "{1}"]
        );
        assert_eq!(m.enumerate(&parse_type("N -> N").unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let m = model(2);
        for t in ["N**", "N -> N*", "N* -> N", "N -> N -> N"] {
            let ty = parse_type(t).unwrap();
            let vals = m.enumerate(&ty).unwrap();
            assert_eq!(Some(vals.len() as u128), m.cardinality(&ty), "{t}");
            assert!(vals.windows(2).all(|w| w[0] < w[1]), "{t}");
            for v in vals.iter() {
                m.check_value(v, &ty).unwrap();
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let m = Model::new(Bound::new(2, 10, 0).unwrap()).unwrap();
        let e = m.enumerate(&parse_type("N -> N*").unwrap()).unwrap_err();
        assert!(e.is_budget());
        assert_eq!(cardinality(&parse_type("(N -> N*)*").unwrap(), 2), None);
    }

    #[test]
    fn bound_validation() {
        assert!(Bound::new(0, 1, 0).is_err());
        assert!(Bound::new(1, 0, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_well_typed() {
        let m = model(3);
        for t in ["N", "N*", "N**", "N -> N*", "(N -> N*)*"] {
            let ty = parse_type(t).unwrap();
            let a = m.sample_n(&ty, 7, 20).unwrap();
            let b = m.sample_n(&ty, 7, 20).unwrap();
            assert_eq!(a, b);
            for v in &a {
                m.check_value(v, &ty).unwrap();
            }
        }
    }
}
