//! Finite types over ℕ and the two witness-type assignments.
//!
//! Every formula gets a positive and a negative tuple of types in each
//! presentation: the *up types* of the original interpretation (all positive
//! components are finite-set types) and the *down types* of the alternative
//! one (positive components are `*`-types, possibly functional).

use std::fmt;

use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteType {
    Nat,
    Arrow(Box<FiniteType>, Box<FiniteType>),
    Star(Box<FiniteType>),
}

impl FiniteType {
    pub fn arrow(dom: FiniteType, cod: FiniteType) -> Self {
        FiniteType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn star(elem: FiniteType) -> Self {
        FiniteType::Star(Box::new(elem))
    }

    /// `σ₁ → … → σₙ → τ`; the empty prefix yields `τ`.
    pub fn curried(doms: &[FiniteType], cod: FiniteType) -> Self {
        doms.iter()
            .rev()
            .fold(cod, |acc, d| FiniteType::arrow(d.clone(), acc))
    }

    /// Final codomain is a set type.
    pub fn is_star_type(&self) -> bool {
        match self {
            FiniteType::Star(_) => true,
            FiniteType::Arrow(_, cod) => cod.is_star_type(),
            FiniteType::Nat => false,
        }
    }

    pub fn set_element(&self) -> Option<&FiniteType> {
        match self {
            FiniteType::Star(e) => Some(e),
            _ => None,
        }
    }

    /// Strip `n` argument positions, returning the argument types and the result.
    pub fn uncurry(&self, n: usize) -> Option<(Vec<&FiniteType>, &FiniteType)> {
        let mut args = Vec::with_capacity(n);
        let mut cur = self;
        for _ in 0..n {
            match cur {
                FiniteType::Arrow(d, c) => {
                    args.push(&**d);
                    cur = c;
                }
                _ => return None,
            }
        }
        Some((args, cur))
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, arrow_ok: bool) -> fmt::Result {
        match self {
            FiniteType::Nat => f.write_str("N"),
            FiniteType::Star(e) => {
                e.fmt_prec(f, false)?;
                f.write_str("*")
            }
            FiniteType::Arrow(d, c) => {
                if !arrow_ok {
                    f.write_str("(")?;
                }
                d.fmt_prec(f, false)?;
                f.write_str(" -> ")?;
                c.fmt_prec(f, true)?;
                if !arrow_ok {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, true)
    }
}

/// Ordered, flat tuple of types. The empty tuple plays the role of ε.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TypeTuple(pub Vec<FiniteType>);

impl TypeTuple {
    pub fn empty() -> Self {
        TypeTuple(Vec::new())
    }

    pub fn single(t: FiniteType) -> Self {
        TypeTuple(vec![t])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FiniteType> {
        self.0.iter()
    }

    pub fn concat(mut self, other: TypeTuple) -> Self {
        self.0.extend(other.0);
        self
    }

    /// Stars every component; ε stays ε.
    pub fn star_tuple(&self) -> Self {
        TypeTuple(self.0.iter().cloned().map(FiniteType::star).collect())
    }

    /// Componentwise `doms → τᵢ` for each component `τᵢ` of `self`.
    pub fn curried_from(&self, doms: &[FiniteType]) -> Self {
        TypeTuple(
            self.0
                .iter()
                .map(|c| FiniteType::curried(doms, c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl From<Vec<FiniteType>> for TypeTuple {
    fn from(v: Vec<FiniteType>) -> Self {
        TypeTuple(v)
    }
}

/// Positive and negative type tuples of a formula in one presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessTypes {
    pub positive: TypeTuple,
    pub negative: TypeTuple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Presentation {
    Up,
    Down,
}

impl Presentation {
    pub fn name(self) -> &'static str {
        match self {
            Presentation::Up => "up",
            Presentation::Down => "down",
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn witness_types(a: &Formula, p: Presentation) -> WitnessTypes {
    let (positive, negative) = assign(a, p);
    WitnessTypes { positive, negative }
}

/// Up types: (positive, negative).
pub fn up_types(a: &Formula) -> (TypeTuple, TypeTuple) {
    assign(a, Presentation::Up)
}

/// Down types: (positive, negative).
pub fn down_types(a: &Formula) -> (TypeTuple, TypeTuple) {
    assign(a, Presentation::Down)
}

fn assign(a: &Formula, p: Presentation) -> (TypeTuple, TypeTuple) {
    let wrap = |t: TypeTuple| match p {
        Presentation::Up => t.star_tuple(),
        Presentation::Down => t,
    };
    match a {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) => (TypeTuple::empty(), TypeTuple::empty()),
        Formula::St(sort, _) => (
            TypeTuple::single(FiniteType::star(sort.clone())),
            TypeTuple::empty(),
        ),
        Formula::And(l, r) => {
            let (lp, ln) = assign(l, p);
            let (rp, rn) = assign(r, p);
            (lp.concat(rp), ln.concat(rn))
        }
        Formula::Implies(l, r) => {
            let (lp, ln) = assign(l, p);
            let (rp, rn) = assign(r, p);
            let f = wrap(rp.curried_from(&lp.0));
            let mut g_doms = lp.0.clone();
            g_doms.extend(rn.0.iter().cloned());
            let g = wrap(ln.star_tuple().curried_from(&g_doms));
            (f.concat(g), lp.concat(rn))
        }
        Formula::Forall(_, _, body) => assign(body, p),
        Formula::Exists(_, _, body) => {
            let (bp, bn) = assign(body, p);
            (bp, bn.star_tuple())
        }
        Formula::ForallSt(_, sort, body) => {
            let (bp, bn) = assign(body, p);
            let pos = wrap(bp.curried_from(std::slice::from_ref(sort)));
            let mut neg = vec![sort.clone()];
            neg.extend(bn.0);
            (pos, TypeTuple(neg))
        }
        Formula::ExistsSt(_, sort, body) => {
            let (bp, bn) = assign(body, p);
            let mut pos = vec![FiniteType::star(sort.clone())];
            pos.extend(bp.0);
            (TypeTuple(pos), bn.star_tuple())
        }
    }
}
