//! The four witness conversions between up and down presentations.
//!
//! `up_pos : δ⁺ → ν⁺`, `down_pos : ν⁺ → δ⁺`, `up_neg : δ⁻ → ν⁻` and
//! `down_neg : ν⁻ → δ⁻`, by recursion on the formula. Functions are built as
//! total tables over the enumerated argument domains. A set of tuples is
//! represented by its componentwise projections.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::semantics::{product_cardinality, set_apply, Model, Value};
use crate::space::{self, expect_len};
use crate::syntax::{Formula, Term};
use crate::types::{down_types, up_types, FiniteType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    UpPos,
    DownPos,
    UpNeg,
    DownNeg,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::UpPos,
        Direction::DownPos,
        Direction::UpNeg,
        Direction::DownNeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Direction::UpPos => "up-pos",
            Direction::DownPos => "down-pos",
            Direction::UpNeg => "up-neg",
            Direction::DownNeg => "down-neg",
        }
    }

    /// (input types, output types) for formula `a`.
    pub fn signature(self, a: &Formula) -> (Vec<FiniteType>, Vec<FiniteType>) {
        let (up, un) = up_types(a);
        let (dp, dn) = down_types(a);
        match self {
            Direction::UpPos => (dp.0, up.0),
            Direction::DownPos => (up.0, dp.0),
            Direction::UpNeg => (dn.0, un.0),
            Direction::DownNeg => (un.0, dn.0),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Direction::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown direction `{s}` (expected up-pos, down-pos, up-neg or down-neg)"
                ))
            })
    }
}

pub fn convert(dir: Direction, a: &Formula, vals: &[Value], m: &Model) -> Result<Vec<Value>> {
    match dir {
        Direction::UpPos => up_pos(a, vals, m),
        Direction::DownPos => down_pos(a, vals, m),
        Direction::UpNeg => up_neg(a, vals, m),
        Direction::DownNeg => down_neg(a, vals, m),
    }
}

fn pos_len(a: &Formula) -> usize {
    up_types(a).0.len()
}

fn neg_len(a: &Formula) -> usize {
    up_types(a).1.len()
}

/// `n` curried tables over `domains`, the i-th holding component i of `f`.
fn tabulate(
    domains: &[FiniteType],
    n: usize,
    m: &Model,
    f: &mut dyn FnMut(&[Value]) -> Result<Vec<Value>>,
) -> Result<Vec<Value>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    m.check_budget(
        || {
            let d: Vec<String> = domains.iter().map(|t| t.to_string()).collect();
            format!("function table over ({})", d.join(", "))
        },
        product_cardinality(domains, m.k()),
    )?;
    let mut prefix = Vec::with_capacity(domains.len());
    build(domains, n, m, &mut prefix, f)
}

fn build(
    domains: &[FiniteType],
    n: usize,
    m: &Model,
    prefix: &mut Vec<Value>,
    f: &mut dyn FnMut(&[Value]) -> Result<Vec<Value>>,
) -> Result<Vec<Value>> {
    let Some((first, rest)) = domains.split_first() else {
        let out = f(prefix)?;
        expect_len(&out, n, "converted tuple")?;
        return Ok(out);
    };
    let keys = m.enumerate(first)?;
    let mut cols: Vec<Vec<(Value, Value)>> = (0..n).map(|_| Vec::with_capacity(keys.len())).collect();
    for k in keys.iter() {
        prefix.push(k.clone());
        let sub = build(rest, n, m, prefix, f);
        prefix.pop();
        for (col, v) in cols.iter_mut().zip(sub?) {
            col.push((k.clone(), v));
        }
    }
    Ok(cols.into_iter().map(Value::fun_sorted).collect())
}

/// Set application as used by the conversions; `drop-union` keeps only the least member.
fn conv_set_apply(fs: &Value, args: &[Value], m: &Model) -> Result<Value> {
    if m.is_mutated(Mutation::DropUnion) {
        let first = fs
            .as_set()?
            .first()
            .ok_or(Error::EmptySetLiteral)?
            .clone();
        let r = first.apply_all(args)?;
        r.as_set()?;
        Ok(r)
    } else {
        set_apply(fs, args)
    }
}

/// `proj_j {conv(v) : v ∈ ∏ sets}` for every component j of the converted tuples.
fn image_of_product(
    sets: &[Value],
    width: usize,
    m: &Model,
    conv: &mut dyn FnMut(&[Value]) -> Result<Vec<Value>>,
) -> Result<Vec<Value>> {
    let lists = sets
        .iter()
        .map(|s| s.as_set())
        .collect::<Result<Vec<_>>>()?;
    let size = lists
        .iter()
        .try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128));
    m.check_budget(|| "product of counter-witness sets".to_string(), size)?;
    let mut cols: Vec<Vec<Value>> = vec![Vec::new(); width];
    for v in space::product(&lists) {
        let out = conv(&v)?;
        expect_len(&out, width, "converted tuple")?;
        for (c, x) in cols.iter_mut().zip(out) {
            c.push(x);
        }
    }
    cols.into_iter().map(Value::set).collect()
}

pub fn up_pos(a: &Formula, r: &[Value], m: &Model) -> Result<Vec<Value>> {
    expect_len(r, pos_len(a), "up-pos input")?;
    match a {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) => Ok(vec![]),
        Formula::St(..) => {
            r[0].as_set()?;
            Ok(r.to_vec())
        }
        Formula::And(l, rr) => {
            let (x, y) = r.split_at(pos_len(l));
            Ok([up_pos(l, x, m)?, up_pos(rr, y, m)?].concat())
        }
        Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => up_pos(b, r, m),
        Formula::ExistsSt(_, _, b) => {
            r[0].as_set()?;
            let mut out = vec![r[0].clone()];
            out.extend(up_pos(b, &r[1..], m)?);
            Ok(out)
        }
        Formula::ForallSt(_, sort, b) => {
            let tables = tabulate(std::slice::from_ref(sort), r.len(), m, &mut |c| {
                let fc = r.iter().map(|f| f.apply(&c[0])).collect::<Result<Vec<_>>>()?;
                up_pos(b, &fc, m)
            })?;
            Ok(tables.into_iter().map(Value::singleton).collect())
        }
        Formula::Implies(ante, cons) => {
            let nb = pos_len(cons);
            let (fs, gs) = r.split_at(nb);
            let nu_pos_a = up_types(ante).0 .0;
            let nu_neg_b = up_types(cons).1 .0;
            let swap = m.is_mutated(Mutation::SwapUpDown);
            let f_new = tabulate(&nu_pos_a, nb, m, &mut |rs| {
                let rd = down_pos(ante, rs, m)?;
                let fr = fs.iter().map(|f| f.apply_all(&rd)).collect::<Result<Vec<_>>>()?;
                if swap {
                    down_pos(cons, &fr, m)
                } else {
                    up_pos(cons, &fr, m)
                }
            })?;
            let g_doms = [nu_pos_a.clone(), nu_neg_b].concat();
            let split = nu_pos_a.len();
            let g_new = tabulate(&g_doms, gs.len(), m, &mut |args| {
                let (rs, us) = args.split_at(split);
                let dargs = [down_pos(ante, rs, m)?, down_neg(cons, us, m)?].concat();
                let sets = gs.iter().map(|g| g.apply_all(&dargs)).collect::<Result<Vec<_>>>()?;
                image_of_product(&sets, gs.len(), m, &mut |v| up_neg(ante, v, m))
            })?;
            Ok(f_new.into_iter().chain(g_new).map(Value::singleton).collect())
        }
    }
}

pub fn down_pos(a: &Formula, r: &[Value], m: &Model) -> Result<Vec<Value>> {
    expect_len(r, pos_len(a), "down-pos input")?;
    match a {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) => Ok(vec![]),
        Formula::St(..) => {
            r[0].as_set()?;
            Ok(r.to_vec())
        }
        Formula::And(l, rr) => {
            let (x, y) = r.split_at(pos_len(l));
            Ok([down_pos(l, x, m)?, down_pos(rr, y, m)?].concat())
        }
        Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => down_pos(b, r, m),
        Formula::ExistsSt(_, _, b) => {
            r[0].as_set()?;
            let mut out = vec![r[0].clone()];
            out.extend(down_pos(b, &r[1..], m)?);
            Ok(out)
        }
        Formula::ForallSt(_, sort, b) => tabulate(std::slice::from_ref(sort), r.len(), m, &mut |c| {
            let fc = r
                .iter()
                .map(|f| conv_set_apply(f, c, m))
                .collect::<Result<Vec<_>>>()?;
            down_pos(b, &fc, m)
        }),
        Formula::Implies(ante, cons) => {
            let nb = pos_len(cons);
            let (fs, gs) = r.split_at(nb);
            let de_pos_a = down_types(ante).0 .0;
            let de_neg_b = down_types(cons).1 .0;
            let f_new = tabulate(&de_pos_a, nb, m, &mut |rs| {
                let ru = up_pos(ante, rs, m)?;
                let fr = fs
                    .iter()
                    .map(|f| conv_set_apply(f, &ru, m))
                    .collect::<Result<Vec<_>>>()?;
                down_pos(cons, &fr, m)
            })?;
            let g_doms = [de_pos_a.clone(), de_neg_b].concat();
            let split = de_pos_a.len();
            let g_new = tabulate(&g_doms, gs.len(), m, &mut |args| {
                let (rs, us) = args.split_at(split);
                let uargs = [up_pos(ante, rs, m)?, up_neg(cons, us, m)?].concat();
                let sets = gs
                    .iter()
                    .map(|g| conv_set_apply(g, &uargs, m))
                    .collect::<Result<Vec<_>>>()?;
                image_of_product(&sets, gs.len(), m, &mut |v| down_neg(ante, v, m))
            })?;
            Ok([f_new, g_new].concat())
        }
    }
}

pub fn up_neg(a: &Formula, u: &[Value], m: &Model) -> Result<Vec<Value>> {
    expect_len(u, neg_len(a), "up-neg input")?;
    match a {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) | Formula::St(..) => Ok(vec![]),
        Formula::And(l, r) => {
            let (x, y) = u.split_at(neg_len(l));
            Ok([up_neg(l, x, m)?, up_neg(r, y, m)?].concat())
        }
        Formula::Forall(_, _, b) => up_neg(b, u, m),
        Formula::Exists(_, _, b) | Formula::ExistsSt(_, _, b) => {
            if u.is_empty() {
                return Ok(vec![]);
            }
            image_of_product(u, u.len(), m, &mut |v| up_neg(b, v, m))
        }
        Formula::ForallSt(_, _, b) => {
            let mut out = vec![u[0].clone()];
            out.extend(up_neg(b, &u[1..], m)?);
            Ok(out)
        }
        Formula::Implies(ante, cons) => {
            let (r, v) = u.split_at(pos_len(ante));
            Ok([up_pos(ante, r, m)?, up_neg(cons, v, m)?].concat())
        }
    }
}

pub fn down_neg(a: &Formula, u: &[Value], m: &Model) -> Result<Vec<Value>> {
    expect_len(u, neg_len(a), "down-neg input")?;
    match a {
        Formula::Eq(..) | Formula::False | Formula::Mem(..) | Formula::St(..) => Ok(vec![]),
        Formula::And(l, r) => {
            let (x, y) = u.split_at(neg_len(l));
            Ok([down_neg(l, x, m)?, down_neg(r, y, m)?].concat())
        }
        Formula::Forall(_, _, b) => down_neg(b, u, m),
        Formula::Exists(_, _, b) | Formula::ExistsSt(_, _, b) => {
            if u.is_empty() {
                return Ok(vec![]);
            }
            image_of_product(u, u.len(), m, &mut |v| down_neg(b, v, m))
        }
        Formula::ForallSt(_, _, b) => {
            let mut out = vec![u[0].clone()];
            out.extend(down_neg(b, &u[1..], m)?);
            Ok(out)
        }
        Formula::Implies(ante, cons) => {
            let (r, v) = u.split_at(pos_len(ante));
            Ok([down_pos(ante, r, m)?, down_neg(cons, v, m)?].concat())
        }
    }
}

/// Symbolic form of the conversions: terms over the input variables `x#i`
/// that evaluate to the converted components.
pub mod emit {
    use super::*;

    #[derive(Default)]
    pub struct Names {
        next: usize,
    }

    impl Names {
        fn fresh(&mut self) -> String {
            let n = self.next;
            self.next += 1;
            format!("c#{n}")
        }
    }

    /// Input variable names for a conversion of `n` components.
    pub fn inputs(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x#{i}")).collect()
    }

    pub fn convert(dir: Direction, a: &Formula) -> Vec<Term> {
        let (ins, _) = dir.signature(a);
        let xs: Vec<Term> = inputs(ins.len()).into_iter().map(Term::var).collect();
        let mut names = Names::default();
        match dir {
            Direction::UpPos => up_pos(a, &xs, &mut names),
            Direction::DownPos => down_pos(a, &xs, &mut names),
            Direction::UpNeg => up_neg(a, &xs, &mut names),
            Direction::DownNeg => down_neg(a, &xs, &mut names),
        }
    }

    fn lambdas(vars: &[(String, FiniteType)], body: Term) -> Term {
        vars.iter()
            .rev()
            .fold(body, |b, (x, t)| Term::lambda(x.clone(), t.clone(), b))
    }

    fn bind(tys: &[FiniteType], names: &mut Names) -> Vec<(String, FiniteType)> {
        tys.iter().map(|t| (names.fresh(), t.clone())).collect()
    }

    fn var_terms(vs: &[(String, FiniteType)]) -> Vec<Term> {
        vs.iter().map(|(x, _)| Term::var(x.clone())).collect()
    }

    /// Terms for `proj_j {conv(v) : v ∈ ∏ sets}`.
    fn image_of_product(
        sets: &[Term],
        names: &mut Names,
        conv: &mut dyn FnMut(&[Term], &mut Names) -> Vec<Term>,
    ) -> Vec<Term> {
        let vs: Vec<String> = sets.iter().map(|_| names.fresh()).collect();
        let vts: Vec<Term> = vs.iter().cloned().map(Term::var).collect();
        let comps = conv(&vts, names);
        let last = vs.len() - 1;
        comps
            .into_iter()
            .map(|body| {
                let mut t = body;
                for (i, (v, s)) in vs.iter().zip(sets).enumerate().rev() {
                    t = Term::set_map(v.clone(), s.clone(), t);
                    if i < last {
                        t = Term::set_app(t, vec![]);
                    }
                }
                t
            })
            .collect()
    }

    pub fn up_pos(a: &Formula, r: &[Term], names: &mut Names) -> Vec<Term> {
        match a {
            Formula::Eq(..) | Formula::False | Formula::Mem(..) => vec![],
            Formula::St(..) => r.to_vec(),
            Formula::And(l, rr) => {
                let (x, y) = r.split_at(pos_len(l));
                [up_pos(l, x, names), up_pos(rr, y, names)].concat()
            }
            Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => up_pos(b, r, names),
            Formula::ExistsSt(_, _, b) => {
                let mut out = vec![r[0].clone()];
                out.extend(up_pos(b, &r[1..], names));
                out
            }
            Formula::ForallSt(_, sort, b) => {
                let c = names.fresh();
                let fc: Vec<Term> = r.iter().map(|f| Term::app(f.clone(), Term::var(c.clone()))).collect();
                up_pos(b, &fc, names)
                    .into_iter()
                    .map(|body| Term::SetLit(vec![Term::lambda(c.clone(), sort.clone(), body)]))
                    .collect()
            }
            Formula::Implies(ante, cons) => {
                let nb = pos_len(cons);
                let (fs, gs) = r.split_at(nb);
                let rv = bind(&up_types(ante).0 .0, names);
                let uv = bind(&up_types(cons).1 .0, names);
                let rd = down_pos(ante, &var_terms(&rv), names);
                let fr: Vec<Term> = fs.iter().map(|f| Term::apps(f.clone(), rd.clone())).collect();
                let f_new = up_pos(cons, &fr, names)
                    .into_iter()
                    .map(|body| Term::SetLit(vec![lambdas(&rv, body)]))
                    .collect::<Vec<_>>();
                let ud = down_neg(cons, &var_terms(&uv), names);
                let dargs = [rd, ud].concat();
                let sets: Vec<Term> = gs.iter().map(|g| Term::apps(g.clone(), dargs.clone())).collect();
                let all = [rv.clone(), uv].concat();
                let g_new = if gs.is_empty() {
                    vec![]
                } else {
                    image_of_product(&sets, names, &mut |v, n| up_neg(ante, v, n))
                }
                .into_iter()
                .map(|body| Term::SetLit(vec![lambdas(&all, body)]));
                f_new.into_iter().chain(g_new).collect()
            }
        }
    }

    pub fn down_pos(a: &Formula, r: &[Term], names: &mut Names) -> Vec<Term> {
        match a {
            Formula::Eq(..) | Formula::False | Formula::Mem(..) => vec![],
            Formula::St(..) => r.to_vec(),
            Formula::And(l, rr) => {
                let (x, y) = r.split_at(pos_len(l));
                [down_pos(l, x, names), down_pos(rr, y, names)].concat()
            }
            Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => down_pos(b, r, names),
            Formula::ExistsSt(_, _, b) => {
                let mut out = vec![r[0].clone()];
                out.extend(down_pos(b, &r[1..], names));
                out
            }
            Formula::ForallSt(_, sort, b) => {
                let c = names.fresh();
                let fc: Vec<Term> = r
                    .iter()
                    .map(|f| Term::set_app(f.clone(), vec![Term::var(c.clone())]))
                    .collect();
                down_pos(b, &fc, names)
                    .into_iter()
                    .map(|body| Term::lambda(c.clone(), sort.clone(), body))
                    .collect()
            }
            Formula::Implies(ante, cons) => {
                let nb = pos_len(cons);
                let (fs, gs) = r.split_at(nb);
                let rv = bind(&down_types(ante).0 .0, names);
                let uv = bind(&down_types(cons).1 .0, names);
                let ru = up_pos(ante, &var_terms(&rv), names);
                let fr: Vec<Term> = fs.iter().map(|f| Term::set_app(f.clone(), ru.clone())).collect();
                let f_new = down_pos(cons, &fr, names)
                    .into_iter()
                    .map(|body| lambdas(&rv, body))
                    .collect::<Vec<_>>();
                let uu = up_neg(cons, &var_terms(&uv), names);
                let uargs = [ru, uu].concat();
                let sets: Vec<Term> = gs.iter().map(|g| Term::set_app(g.clone(), uargs.clone())).collect();
                let all = [rv.clone(), uv].concat();
                let g_new = if gs.is_empty() {
                    vec![]
                } else {
                    image_of_product(&sets, names, &mut |v, n| down_neg(ante, v, n))
                }
                .into_iter()
                .map(|body| lambdas(&all, body));
                f_new.into_iter().chain(g_new).collect()
            }
        }
    }

    pub fn up_neg(a: &Formula, u: &[Term], names: &mut Names) -> Vec<Term> {
        match a {
            Formula::Eq(..) | Formula::False | Formula::Mem(..) | Formula::St(..) => vec![],
            Formula::And(l, r) => {
                let (x, y) = u.split_at(neg_len(l));
                [up_neg(l, x, names), up_neg(r, y, names)].concat()
            }
            Formula::Forall(_, _, b) => up_neg(b, u, names),
            Formula::Exists(_, _, b) | Formula::ExistsSt(_, _, b) => {
                if u.is_empty() {
                    return vec![];
                }
                image_of_product(u, names, &mut |v, n| up_neg(b, v, n))
            }
            Formula::ForallSt(_, _, b) => {
                let mut out = vec![u[0].clone()];
                out.extend(up_neg(b, &u[1..], names));
                out
            }
            Formula::Implies(ante, cons) => {
                let (r, v) = u.split_at(pos_len(ante));
                [up_pos(ante, r, names), up_neg(cons, v, names)].concat()
            }
        }
    }

    pub fn down_neg(a: &Formula, u: &[Term], names: &mut Names) -> Vec<Term> {
        match a {
            Formula::Eq(..) | Formula::False | Formula::Mem(..) | Formula::St(..) => vec![],
            Formula::And(l, r) => {
                let (x, y) = u.split_at(neg_len(l));
                [down_neg(l, x, names), down_neg(r, y, names)].concat()
            }
            Formula::Forall(_, _, b) => down_neg(b, u, names),
            Formula::Exists(_, _, b) | Formula::ExistsSt(_, _, b) => {
                if u.is_empty() {
                    return vec![];
                }
                image_of_product(u, names, &mut |v, n| down_neg(b, v, n))
            }
            Formula::ForallSt(_, _, b) => {
                let mut out = vec![u[0].clone()];
                out.extend(down_neg(b, &u[1..], names));
                out
            }
            Formula::Implies(ante, cons) => {
                let (r, v) = u.split_at(pos_len(ante));
                [down_pos(ante, r, names), down_neg(cons, v, names)].concat()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{eval, parse_value, parse_value_tuple, Bound, Env};
    use crate::space::rng_for;
    use crate::syntax::parse_formula;

    fn model(k: u32) -> Model {
        Model::new(Bound::new(k, 1 << 16, 0).unwrap()).unwrap()
    }

    const FORMULAS: &[&str] = &[
        "forall^st n:N. exists^st m:N. n = m",
        "st[N](z)",
        "exists^st m:N. m = c",
        "forall^st n:N. st[N](n)",
        "(exists^st m:N. n = m) -> exists^st m:N. n = m",
        "forall n:N. exists^st m:N. n = m",
        "st[N](z) /\\ exists^st m:N. m = z",
        "exists x:N. forall^st n:N. x = n",
        "(forall^st n:N. n = c) -> c = 0",
        "st[N](z) -> forall^st n:N. st[N](n)",
    ];

    #[test]
    fn running_example_up_pos() {
        let m = model(3);
        let a = parse_formula(FORMULAS[0]).unwrap();
        let f = parse_value("fun n:N => {n}", &"N -> N*".parse_ty(), &m).unwrap();
        let up = up_pos(&a, &[f.clone()], &m).unwrap();
        assert_eq!(up, vec![Value::singleton(f.clone())]);
        assert_eq!(down_pos(&a, &up, &m).unwrap(), vec![f]);
    }

    #[test]
    fn down_pos_unions_over_members() {
        let m = model(3);
        let a = parse_formula(FORMULAS[0]).unwrap();
        let ty = "(N -> N*)*".parse_ty();
        let t = parse_value("{fun n:N => {n}, fun n:N => {succ n}}", &ty, &m).unwrap();
        let d = down_pos(&a, &[t], &m).unwrap();
        let want = parse_value("fun n:N => {n, succ n}", &"N -> N*".parse_ty(), &m).unwrap();
        assert_eq!(d, vec![want]);
    }

    #[test]
    fn implication_negative_images() {
        let m = model(2);
        let a = parse_formula(FORMULAS[8]).unwrap();
        let (dp, _) = down_types(&a);
        let g = parse_value("{0, 1}", &dp.0[0], &m).unwrap();
        let up = up_pos(&a, &[g.clone()], &m).unwrap();
        assert_eq!(up, vec![Value::singleton(g.clone())]);
        assert_eq!(down_pos(&a, &up, &m).unwrap(), vec![g]);
    }

    #[test]
    fn outputs_have_declared_types() {
        let m = model(2);
        for src in FORMULAS {
            let a = parse_formula(src).unwrap();
            for dir in Direction::ALL {
                let (ins, outs) = dir.signature(&a);
                let mut rng = rng_for(7, src);
                for _ in 0..8 {
                    let vals: Vec<Value> = ins.iter().map(|t| m.sample(t, &mut rng).unwrap()).collect();
                    let out = convert(dir, &a, &vals, &m).unwrap();
                    m.check_tuple(&out, &outs).unwrap_or_else(|e| panic!("{src} {dir}: {e}"));
                }
            }
        }
    }

    #[test]
    fn emitted_terms_agree_with_values() {
        let m = model(2);
        for src in FORMULAS {
            let a = parse_formula(src).unwrap();
            for dir in Direction::ALL {
                let (ins, outs) = dir.signature(&a);
                let terms = emit::convert(dir, &a);
                assert_eq!(terms.len(), outs.len());
                let names = emit::inputs(ins.len());
                let mut tenv =
                    crate::semantics::TypeEnv::with(names.iter().cloned().zip(ins.iter().cloned()));
                for (t, ty) in terms.iter().zip(&outs) {
                    crate::semantics::check(t, ty, &mut tenv)
                        .unwrap_or_else(|e| panic!("{src} {dir} {t}: {e}"));
                }
                let mut rng = rng_for(11, src);
                for _ in 0..6 {
                    let vals: Vec<Value> = ins.iter().map(|t| m.sample(t, &mut rng).unwrap()).collect();
                    let want = convert(dir, &a, &vals, &m).unwrap();
                    let mut env = Env::with(names.iter().cloned().zip(vals.iter().cloned()));
                    let got: Vec<Value> = terms.iter().map(|t| eval(t, &mut env, &m).unwrap()).collect();
                    assert_eq!(got, want, "{src} {dir}");
                }
            }
        }
    }

    #[test]
    fn drop_union_keeps_one_member() {
        let b = Bound::new(3, 1 << 16, 0).unwrap();
        let m = Model::with_mutation(b, Some(Mutation::DropUnion)).unwrap();
        let a = parse_formula(FORMULAS[0]).unwrap();
        let t = parse_value_tuple(
            "{fun n:N => {n}, fun n:N => {succ n}}",
            &up_types(&a).0 .0,
            &m,
        )
        .unwrap();
        let d = down_pos(&a, &t, &m).unwrap();
        let want = parse_value("fun n:N => {n}", &"N -> N*".parse_ty(), &m).unwrap();
        assert_eq!(d, vec![want]);
    }

    #[test]
    fn direction_names_round_trip() {
        for d in Direction::ALL {
            assert_eq!(d.name().parse::<Direction>().unwrap(), d);
        }
        assert!("sideways".parse::<Direction>().is_err());
    }

    trait ParseTy {
        fn parse_ty(&self) -> FiniteType;
    }

    impl ParseTy for str {
        fn parse_ty(&self) -> FiniteType {
            crate::syntax::parse_type(self).unwrap()
        }
    }
}
