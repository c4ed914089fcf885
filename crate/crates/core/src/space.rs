//! Products of finite domains: exhaustive iteration or seeded sampling.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::semantics::{product_cardinality, Model, Value};
use crate::types::FiniteType;

/// Calls `f` on every tuple of the product, stopping at the first `false`.
pub fn all_tuples(
    domains: &[Arc<[Value]>],
    mut f: impl FnMut(&[Value]) -> Result<bool>,
) -> Result<bool> {
    if domains.iter().any(|d| d.is_empty()) {
        return Ok(true);
    }
    let mut idx = vec![0usize; domains.len()];
    let mut cur: Vec<Value> = domains.iter().map(|d| d[0].clone()).collect();
    loop {
        if !f(&cur)? {
            return Ok(false);
        }
        let mut pos = domains.len();
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domains[pos].len() {
                cur[pos] = domains[pos][idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            cur[pos] = domains[pos][0].clone();
        }
    }
}

/// All tuples of the product of the given finite lists, in lexicographic order.
pub fn product(lists: &[&[Value]]) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for v in list.iter() {
                let mut t = prefix.clone();
                t.push(v.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Enumerations of every type, after checking the product against the budget.
pub fn domains(tys: &[FiniteType], model: &Model, what: &str) -> Result<Vec<Arc<[Value]>>> {
    model.check_budget(
        || format!("{what} over {}", describe(tys)),
        product_cardinality(tys, model.k()),
    )?;
    tys.iter().map(|t| model.enumerate(t)).collect()
}

pub fn for_all(
    tys: &[FiniteType],
    model: &Model,
    what: &str,
    f: impl FnMut(&[Value]) -> Result<bool>,
) -> Result<bool> {
    let doms = domains(tys, model, what)?;
    all_tuples(&doms, f)
}

fn describe(tys: &[FiniteType]) -> String {
    let parts: Vec<String> = tys.iter().map(|t| t.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// How the instances of a quantified statement are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled(usize),
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled(_) => "sampled",
        }
    }
}

/// Exhaustive when the product fits in the budget, sampled otherwise.
pub fn choose_mode(tys: &[FiniteType], model: &Model, samples: usize) -> Mode {
    match product_cardinality(tys, model.k()) {
        Some(n) if n <= u128::from(model.bound().budget) => Mode::Exhaustive,
        _ => Mode::Sampled(samples),
    }
}

/// Materialises the instances: the full product, or `count` sampled tuples.
pub fn instances(tys: &[FiniteType], model: &Model, mode: Mode, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Value>>> {
    match mode {
        Mode::Exhaustive => {
            let doms = domains(tys, model, "instances")?;
            let lists: Vec<&[Value]> = doms.iter().map(|d| &d[..]).collect();
            Ok(product(&lists))
        }
        Mode::Sampled(count) => (0..count)
            .map(|_| tys.iter().map(|t| model.sample(t, rng)).collect())
            .collect(),
    }
}

/// Deterministic generator derived from the bound's seed and a label.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label.as_bytes()))
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn expect_len<T>(vals: &[T], n: usize, what: &str) -> Result<()> {
    if vals.len() == n {
        Ok(())
    } else {
        Err(Error::Arity(format!(
            "{what}: expected {n} component(s), found {}",
            vals.len()
        )))
    }
}
