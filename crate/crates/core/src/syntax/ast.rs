use crate::types::FiniteType;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Nat(u64),
    Succ(Box<Term>),
    Lambda(String, FiniteType, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `f[r₁, …, rₙ]`: union of `f′ r₁ … rₙ` over `f′ ∈ f`. With no arguments
    /// this is the union of a set of sets.
    SetApp(Box<Term>, Vec<Term>),
    SetLit(Vec<Term>),
    Union(Box<Term>, Box<Term>),
    /// `{ body : var in over }`
    SetMap {
        var: String,
        over: Box<Term>,
        body: Box<Term>,
    },
    /// `fun-table [a => b, …]`, the printed form of a function value.
    Table(Vec<(Term, Term)>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(f: Term, x: Term) -> Self {
        Term::App(Box::new(f), Box::new(x))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Self {
        args.into_iter().fold(f, Term::app)
    }

    pub fn set_app(f: Term, args: Vec<Term>) -> Self {
        Term::SetApp(Box::new(f), args)
    }

    pub fn lambda(var: impl Into<String>, sort: FiniteType, body: Term) -> Self {
        Term::Lambda(var.into(), sort, Box::new(body))
    }

    pub fn succ(t: Term) -> Self {
        Term::Succ(Box::new(t))
    }

    pub fn union(a: Term, b: Term) -> Self {
        Term::Union(Box::new(a), Box::new(b))
    }

    pub fn set_map(var: impl Into<String>, over: Term, body: Term) -> Self {
        Term::SetMap {
            var: var.into(),
            over: Box::new(over),
            body: Box::new(body),
        }
    }

    /// Capture-avoiding only in the sense the translations need: the
    /// replacement never mentions binders of `self`.
    pub fn rename_free(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Nat(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.rename_free(from, to)),
            Term::Lambda(x, s, b) => {
                if x == from {
                    self.clone()
                } else {
                    Term::lambda(x.clone(), s.clone(), b.rename_free(from, to))
                }
            }
            Term::App(f, x) => Term::app(f.rename_free(from, to), x.rename_free(from, to)),
            Term::SetApp(f, args) => Term::set_app(
                f.rename_free(from, to),
                args.iter().map(|a| a.rename_free(from, to)).collect(),
            ),
            Term::SetLit(es) => Term::SetLit(es.iter().map(|e| e.rename_free(from, to)).collect()),
            Term::Union(a, b) => Term::union(a.rename_free(from, to), b.rename_free(from, to)),
            Term::SetMap { var, over, body } => {
                let over = over.rename_free(from, to);
                let body = if var == from {
                    (**body).clone()
                } else {
                    body.rename_free(from, to)
                };
                Term::set_map(var.clone(), over, body)
            }
            Term::Table(rows) => Term::Table(
                rows.iter()
                    .map(|(a, b)| (a.rename_free(from, to), b.rename_free(from, to)))
                    .collect(),
            ),
        }
    }

    /// Replace free occurrences of `var` by `by`. Callers guarantee `by`
    /// mentions no binder of `self`.
    pub fn subst(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) | Term::Nat(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.subst(var, by)),
            Term::Lambda(x, s, b) => {
                if x == var {
                    self.clone()
                } else {
                    Term::lambda(x.clone(), s.clone(), b.subst(var, by))
                }
            }
            Term::App(f, x) => Term::app(f.subst(var, by), x.subst(var, by)),
            Term::SetApp(f, args) => Term::set_app(
                f.subst(var, by),
                args.iter().map(|a| a.subst(var, by)).collect(),
            ),
            Term::SetLit(es) => Term::SetLit(es.iter().map(|e| e.subst(var, by)).collect()),
            Term::Union(a, b) => Term::union(a.subst(var, by), b.subst(var, by)),
            Term::SetMap { var: x, over, body } => {
                let over = over.subst(var, by);
                let body = if x == var {
                    (**body).clone()
                } else {
                    body.subst(var, by)
                };
                Term::set_map(x.clone(), over, body)
            }
            Term::Table(rows) => Term::Table(
                rows.iter()
                    .map(|(a, b)| (a.subst(var, by), b.subst(var, by)))
                    .collect(),
            ),
        }
    }

    pub fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Nat(_) => {}
            Term::Succ(t) => t.free_vars_into(bound, out),
            Term::Lambda(x, _, b) => {
                bound.push(x.clone());
                b.free_vars_into(bound, out);
                bound.pop();
            }
            Term::App(f, x) => {
                f.free_vars_into(bound, out);
                x.free_vars_into(bound, out);
            }
            Term::SetApp(f, args) => {
                f.free_vars_into(bound, out);
                for a in args {
                    a.free_vars_into(bound, out);
                }
            }
            Term::SetLit(es) => {
                for e in es {
                    e.free_vars_into(bound, out);
                }
            }
            Term::Union(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Term::SetMap { var, over, body } => {
                over.free_vars_into(bound, out);
                bound.push(var.clone());
                body.free_vars_into(bound, out);
                bound.pop();
            }
            Term::Table(rows) => {
                for (a, b) in rows {
                    a.free_vars_into(bound, out);
                    b.free_vars_into(bound, out);
                }
            }
        }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }
}

/// Source formulas, with the standardness predicate and the standard quantifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    False,
    Mem(Term, Term),
    St(FiniteType, Term),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, FiniteType, Box<Formula>),
    Exists(String, FiniteType, Box<Formula>),
    ForallSt(String, FiniteType, Box<Formula>),
    ExistsSt(String, FiniteType, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Self {
        Formula::implies(a, Formula::False)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Mem(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::False => {}
            Formula::St(_, t) => t.free_vars_into(bound, out),
            Formula::And(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(x, _, b)
            | Formula::Exists(x, _, b)
            | Formula::ForallSt(x, _, b)
            | Formula::ExistsSt(x, _, b) => {
                bound.push(x.clone());
                b.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_formula(self, other, &mut Vec::new())
    }
}

fn alpha_formula(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    use Formula::*;
    match (a, b) {
        (Eq(a1, a2), Eq(b1, b2)) | (Mem(a1, a2), Mem(b1, b2)) => {
            alpha_term(a1, b1, env) && alpha_term(a2, b2, env)
        }
        (False, False) => true,
        (St(s, t), St(s2, t2)) => s == s2 && alpha_term(t, t2, env),
        (And(a1, a2), And(b1, b2)) | (Implies(a1, a2), Implies(b1, b2)) => {
            alpha_formula(a1, b1, env) && alpha_formula(a2, b2, env)
        }
        (Forall(x, s, p), Forall(y, t, q))
        | (Exists(x, s, p), Exists(y, t, q))
        | (ForallSt(x, s, p), ForallSt(y, t, q))
        | (ExistsSt(x, s, p), ExistsSt(y, t, q)) => {
            if s != t {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let ok = alpha_formula(p, q, env);
            env.pop();
            ok
        }
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, env: &mut Vec<(String, String)>) -> bool {
    use Term::*;
    match (a, b) {
        (Var(x), Var(y)) => {
            for (l, r) in env.iter().rev() {
                if l == x || r == y {
                    return l == x && r == y;
                }
            }
            x == y
        }
        (Nat(m), Nat(n)) => m == n,
        (Succ(s), Succ(t)) => alpha_term(s, t, env),
        (Lambda(x, s, p), Lambda(y, t, q)) => {
            if s != t {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let ok = alpha_term(p, q, env);
            env.pop();
            ok
        }
        (App(f, x), App(g, y)) | (Union(f, x), Union(g, y)) => {
            alpha_term(f, g, env) && alpha_term(x, y, env)
        }
        (SetApp(f, xs), SetApp(g, ys)) => {
            xs.len() == ys.len()
                && alpha_term(f, g, env)
                && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (SetLit(xs), SetLit(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (
            SetMap { var: x, over: o1, body: b1 },
            SetMap { var: y, over: o2, body: b2 },
        ) => {
            if !alpha_term(o1, o2, env) {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let ok = alpha_term(b1, b2, env);
            env.pop();
            ok
        }
        (Table(r1), Table(r2)) => {
            r1.len() == r2.len()
                && r1
                    .iter()
                    .zip(r2)
                    .all(|((a1, b1), (a2, b2))| alpha_term(a1, a2, env) && alpha_term(b1, b2, env))
        }
        _ => false,
    }
}

/// Translated formulas: no standardness, bounded quantifiers over set terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetFormula {
    Eq(Term, Term),
    False,
    Mem(Term, Term),
    And(Box<TargetFormula>, Box<TargetFormula>),
    Implies(Box<TargetFormula>, Box<TargetFormula>),
    Forall(String, FiniteType, Box<TargetFormula>),
    Exists(String, FiniteType, Box<TargetFormula>),
    BoundedForall(String, Term, Box<TargetFormula>),
    BoundedExists(String, Term, Box<TargetFormula>),
}

impl TargetFormula {
    pub fn and(a: TargetFormula, b: TargetFormula) -> Self {
        TargetFormula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: TargetFormula, b: TargetFormula) -> Self {
        TargetFormula::Implies(Box::new(a), Box::new(b))
    }

    /// Substitute a term for a free variable, respecting shadowing.
    pub fn subst(&self, var: &str, by: &Term) -> TargetFormula {
        use TargetFormula::*;
        let sb = |x: &String, b: &TargetFormula| {
            if x == var {
                b.clone()
            } else {
                b.subst(var, by)
            }
        };
        match self {
            Eq(a, b) => Eq(a.subst(var, by), b.subst(var, by)),
            Mem(a, b) => Mem(a.subst(var, by), b.subst(var, by)),
            False => False,
            And(a, b) => TargetFormula::and(a.subst(var, by), b.subst(var, by)),
            Implies(a, b) => TargetFormula::implies(a.subst(var, by), b.subst(var, by)),
            Forall(x, s, b) => Forall(x.clone(), s.clone(), Box::new(sb(x, b))),
            Exists(x, s, b) => Exists(x.clone(), s.clone(), Box::new(sb(x, b))),
            BoundedForall(x, set, b) => {
                BoundedForall(x.clone(), set.subst(var, by), Box::new(sb(x, b)))
            }
            BoundedExists(x, set, b) => {
                BoundedExists(x.clone(), set.subst(var, by), Box::new(sb(x, b)))
            }
        }
    }

    /// Rename a free variable everywhere it is not shadowed.
    pub fn rename_free(&self, from: &str, to: &str) -> TargetFormula {
        use TargetFormula::*;
        let rb = |x: &String, b: &TargetFormula| {
            if x == from {
                b.clone()
            } else {
                b.rename_free(from, to)
            }
        };
        match self {
            Eq(a, b) => Eq(a.rename_free(from, to), b.rename_free(from, to)),
            Mem(a, b) => Mem(a.rename_free(from, to), b.rename_free(from, to)),
            False => False,
            And(a, b) => TargetFormula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Implies(a, b) => {
                TargetFormula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Forall(x, s, b) => Forall(x.clone(), s.clone(), Box::new(rb(x, b))),
            Exists(x, s, b) => Exists(x.clone(), s.clone(), Box::new(rb(x, b))),
            BoundedForall(x, set, b) => {
                BoundedForall(x.clone(), set.rename_free(from, to), Box::new(rb(x, b)))
            }
            BoundedExists(x, set, b) => {
                BoundedExists(x.clone(), set.rename_free(from, to), Box::new(rb(x, b)))
            }
        }
    }
}
