//! Bounded denotational model: values, typing, evaluation, enumeration and sampling.

pub mod eval;
pub mod model;
pub mod typecheck;
pub mod value;

pub use eval::{eval, eval_closed, holds, set_apply, Env};
pub use model::{cardinality, product_cardinality, Bound, Model};
pub use typecheck::{check, check_closed, check_formula, check_target, synth, TypeEnv};
pub use value::{tuple_to_string, Value};

use crate::error::Result;
use crate::syntax::parse_term_tuple;
use crate::types::FiniteType;

/// Parses, type-checks and evaluates a closed term, then checks totality of
/// every table it contains.
pub fn parse_value(text: &str, ty: &FiniteType, model: &Model) -> Result<Value> {
    let t = crate::syntax::parse_term(text, ty)?;
    let v = eval_closed(&t, model)?;
    model.check_value(&v, ty)?;
    Ok(v)
}

/// Like [`parse_value`] for a tuple written `()`, `v` or `(v1, v2, ...)`.
pub fn parse_value_tuple(text: &str, tys: &[FiniteType], model: &Model) -> Result<Vec<Value>> {
    let terms = parse_term_tuple(text)?;
    if terms.len() != tys.len() {
        return Err(crate::error::Error::Arity(format!(
            "expected a tuple of {} value(s), found {}",
            tys.len(),
            terms.len()
        )));
    }
    terms
        .iter()
        .zip(tys)
        .map(|(t, ty)| {
            check_closed(t, ty)?;
            let v = eval_closed(t, model)?;
            model.check_value(&v, ty)?;
            Ok(v)
        })
        .collect()
}
