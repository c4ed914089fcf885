//! Runtime values of the bounded model.

use std::fmt::{self, Display, Formatter, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::syntax::Term;

/// A value of the bounded model. The derived ordering is the canonical one:
/// naturals by magnitude, sets by their sorted element lists, functions by
/// their tables in argument order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Nat(u32),
    /// Non-empty, strictly increasing.
    Set(Arc<[Value]>),
    /// Total table keyed in canonical argument order.
    Fun(Arc<[(Value, Value)]>),
}

impl Value {
    /// Canonical set from arbitrary elements. Returns `EmptySetLiteral` on no elements.
    pub fn set(mut elems: Vec<Value>) -> Result<Value> {
        if elems.is_empty() {
            return Err(Error::EmptySetLiteral);
        }
        elems.sort();
        elems.dedup();
        Ok(Value::Set(elems.into()))
    }

    pub fn singleton(v: Value) -> Value {
        Value::Set(Arc::from(vec![v]))
    }

    /// Table from rows already sorted by key with distinct keys.
    pub fn fun_sorted(rows: Vec<(Value, Value)>) -> Value {
        debug_assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
        Value::Fun(rows.into())
    }

    pub fn as_nat(&self) -> Result<u32> {
        match self {
            Value::Nat(n) => Ok(*n),
            other => Err(Error::type_in("a natural number", other.kind(), "value")),
        }
    }

    pub fn as_set(&self) -> Result<&[Value]> {
        match self {
            Value::Set(es) => Ok(es),
            other => Err(Error::type_in("a set", other.kind(), "value")),
        }
    }

    pub fn as_fun(&self) -> Result<&[(Value, Value)]> {
        match self {
            Value::Fun(rows) => Ok(rows),
            other => Err(Error::type_in("a function table", other.kind(), "value")),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Nat(_) => "a natural number",
            Value::Set(_) => "a set",
            Value::Fun(_) => "a function table",
        }
    }

    pub fn apply(&self, arg: &Value) -> Result<Value> {
        let rows = self.as_fun()?;
        match rows.binary_search_by(|(k, _)| k.cmp(arg)) {
            Ok(i) => Ok(rows[i].1.clone()),
            Err(_) => Err(Error::type_in(
                "an argument in the table's domain",
                arg.to_string(),
                "application",
            )),
        }
    }

    /// Curried application to several arguments.
    pub fn apply_all(&self, args: &[Value]) -> Result<Value> {
        let mut cur = self.clone();
        for a in args {
            cur = cur.apply(a)?;
        }
        Ok(cur)
    }

    pub fn contains(&self, elem: &Value) -> Result<bool> {
        Ok(self.as_set()?.binary_search(elem).is_ok())
    }

    pub fn union(&self, other: &Value) -> Result<Value> {
        let (a, b) = (self.as_set()?, other.as_set()?);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Value::Set(out.into()))
    }

    /// Union of a non-empty list of sets.
    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
        let mut elems = Vec::new();
        for s in sets {
            elems.extend_from_slice(s.as_set()?);
        }
        Value::set(elems)
    }

    pub fn is_subset(&self, other: &Value) -> Result<bool> {
        let (a, b) = (self.as_set()?, other.as_set()?);
        if a.len() > b.len() {
            return Ok(false);
        }
        let mut j = 0;
        for x in a {
            while j < b.len() && b[j] < *x {
                j += 1;
            }
            if j == b.len() || b[j] != *x {
                return Ok(false);
            }
            j += 1;
        }
        Ok(true)
    }

    /// The value as a closed term in the canonical text form.
    pub fn to_term(&self) -> Term {
        match self {
            Value::Nat(n) => Term::Nat(u64::from(*n)),
            Value::Set(es) => Term::SetLit(es.iter().map(Value::to_term).collect()),
            Value::Fun(rows) => {
                Term::Table(rows.iter().map(|(k, v)| (k.to_term(), v.to_term())).collect())
            }
        }
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Set(es) => {
                f.write_char('{')?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_char('}')
            }
            Value::Fun(rows) => {
                f.write_str("fun-table [")?;
                for (i, (k, v)) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k} => {v}")?;
                }
                f.write_char(']')
            }
        }
    }
}

/// Tuple text form: `()`, a bare single value, or `(a, b, ...)`.
pub fn tuple_to_string(vals: &[Value]) -> String {
    match vals {
        [] => "()".to_string(),
        [v] => v.to_string(),
        _ => {
            let parts: Vec<String> = vals.iter().map(Value::to_string).collect();
            format!("({})", parts.join(", "))
        }
    }
}
