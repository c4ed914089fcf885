//! The two symbolic translations and their satisfaction in the bounded model.
//!
//! Positive witness variables are named `r#i` and negative ones `u#i`, both
//! numbered left to right; variables bound by the translation are `v#i`.

use serde_json::{json, Value as Json};

use crate::error::Result;
use crate::semantics::{holds, Env, Model, Value};
use crate::space::{self, Mode};
use crate::syntax::{Formula, TargetFormula, Term};
use crate::types::{FiniteType, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVar {
    pub name: String,
    pub ty: FiniteType,
    /// Source variable this position instantiates, if any.
    pub hint: Option<String>,
}

impl WitnessVar {
    pub fn label(&self) -> &str {
        self.hint.as_deref().unwrap_or(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub source: Formula,
    pub presentation: Presentation,
    pub positive: Vec<WitnessVar>,
    pub negative: Vec<WitnessVar>,
    /// Free variables of the source formula, all of type `N`.
    pub params: Vec<String>,
    pub body: TargetFormula,
}

impl Translation {
    pub fn positive_types(&self) -> Vec<FiniteType> {
        self.positive.iter().map(|v| v.ty.clone()).collect()
    }

    pub fn negative_types(&self) -> Vec<FiniteType> {
        self.negative.iter().map(|v| v.ty.clone()).collect()
    }

    pub fn to_json(&self) -> Json {
        let vars = |vs: &[WitnessVar]| -> Json {
            vs.iter()
                .map(|v| json!({"name": v.name, "type": v.ty.to_string()}))
                .collect()
        };
        json!({
            "source": self.source.to_string(),
            "presentation": self.presentation.name(),
            "positive": vars(&self.positive),
            "negative": vars(&self.negative),
            "params": self.params,
            "body": self.body.to_string(),
        })
    }
}

struct Part {
    pos: Vec<WitnessVar>,
    neg: Vec<WitnessVar>,
    body: TargetFormula,
}

#[derive(Default)]
struct Fresh {
    tmp: usize,
    bound: usize,
}

impl Fresh {
    fn var(&mut self, ty: FiniteType, hint: Option<String>) -> WitnessVar {
        self.tmp += 1;
        WitnessVar {
            name: format!("t#{}", self.tmp),
            ty,
            hint,
        }
    }

    fn bound(&mut self) -> String {
        let n = self.bound;
        self.bound += 1;
        format!("v#{n}")
    }
}

pub fn translate_up(a: &Formula) -> Translation {
    translate(a, Presentation::Up)
}

pub fn translate_down(a: &Formula) -> Translation {
    translate(a, Presentation::Down)
}

pub fn translate(a: &Formula, p: Presentation) -> Translation {
    let mut fresh = Fresh::default();
    let part = go(a, p, &mut fresh);
    let mut body = part.body;
    let mut rename = |vars: Vec<WitnessVar>, prefix: &str| -> Vec<WitnessVar> {
        vars.into_iter()
            .enumerate()
            .map(|(i, v)| {
                let name = format!("{prefix}#{i}");
                body = body.rename_free(&v.name, &name);
                WitnessVar { name, ..v }
            })
            .collect()
    };
    let positive = rename(part.pos, "r");
    let negative = rename(part.neg, "u");
    Translation {
        source: a.clone(),
        presentation: p,
        positive,
        negative,
        params: a.free_vars(),
        body,
    }
}

fn vars(ws: &[WitnessVar]) -> Vec<Term> {
    ws.iter().map(|w| Term::var(w.name.clone())).collect()
}

fn types(ws: &[WitnessVar]) -> Vec<FiniteType> {
    ws.iter().map(|w| w.ty.clone()).collect()
}

fn apply(p: Presentation, f: &WitnessVar, args: Vec<Term>) -> Term {
    let f = Term::var(f.name.clone());
    match p {
        Presentation::Up => Term::set_app(f, args),
        Presentation::Down => Term::apps(f, args),
    }
}

fn wrap(p: Presentation, t: FiniteType) -> FiniteType {
    match p {
        Presentation::Up => FiniteType::star(t),
        Presentation::Down => t,
    }
}

/// `∀v ∈ sets  body[negs := v]`, one bounded quantifier per component.
fn bounded_forall(
    negs: &[WitnessVar],
    sets: Vec<Term>,
    body: TargetFormula,
    fresh: &mut Fresh,
) -> TargetFormula {
    let names: Vec<String> = negs.iter().map(|_| fresh.bound()).collect();
    let mut body = negs
        .iter()
        .zip(&names)
        .fold(body, |b, (n, v)| b.rename_free(&n.name, v));
    for (v, set) in names.into_iter().zip(sets).rev() {
        body = TargetFormula::BoundedForall(v, set, Box::new(body));
    }
    body
}

fn go(a: &Formula, p: Presentation, fresh: &mut Fresh) -> Part {
    let atom = |body| Part {
        pos: vec![],
        neg: vec![],
        body,
    };
    match a {
        Formula::Eq(x, y) => atom(TargetFormula::Eq(x.clone(), y.clone())),
        Formula::Mem(x, y) => atom(TargetFormula::Mem(x.clone(), y.clone())),
        Formula::False => atom(TargetFormula::False),
        Formula::St(sort, t) => {
            let s = fresh.var(FiniteType::star(sort.clone()), None);
            let body = TargetFormula::Mem(t.clone(), Term::var(s.name.clone()));
            Part {
                pos: vec![s],
                neg: vec![],
                body,
            }
        }
        Formula::And(l, r) => {
            let l = go(l, p, fresh);
            let r = go(r, p, fresh);
            Part {
                pos: [l.pos, r.pos].concat(),
                neg: [l.neg, r.neg].concat(),
                body: TargetFormula::and(l.body, r.body),
            }
        }
        Formula::Implies(l, r) => {
            let pa = go(l, p, fresh);
            let pb = go(r, p, fresh);
            let doms = types(&pa.pos);
            let mut g_doms = doms.clone();
            g_doms.extend(types(&pb.neg));
            let fs: Vec<WitnessVar> = pb
                .pos
                .iter()
                .map(|b| fresh.var(wrap(p, FiniteType::curried(&doms, b.ty.clone())), None))
                .collect();
            let gs: Vec<WitnessVar> = pa
                .neg
                .iter()
                .map(|n| {
                    let cod = FiniteType::star(n.ty.clone());
                    fresh.var(wrap(p, FiniteType::curried(&g_doms, cod)), None)
                })
                .collect();
            let ra = vars(&pa.pos);
            let mut g_args = ra.clone();
            g_args.extend(vars(&pb.neg));
            let sets: Vec<Term> = gs.iter().map(|g| apply(p, g, g_args.clone())).collect();
            let antecedent = bounded_forall(&pa.neg, sets, pa.body, fresh);
            let consequent = pb
                .pos
                .iter()
                .zip(&fs)
                .fold(pb.body, |b, (rb, f)| b.subst(&rb.name, &apply(p, f, ra.clone())));
            Part {
                pos: [fs, gs].concat(),
                neg: [pa.pos, pb.neg].concat(),
                body: TargetFormula::implies(antecedent, consequent),
            }
        }
        Formula::Forall(x, sort, b) => {
            let pb = go(b, p, fresh);
            Part {
                body: TargetFormula::Forall(x.clone(), sort.clone(), Box::new(pb.body)),
                ..pb
            }
        }
        Formula::Exists(x, sort, b) => {
            let pb = go(b, p, fresh);
            let us: Vec<WitnessVar> = pb
                .neg
                .iter()
                .map(|n| fresh.var(FiniteType::star(n.ty.clone()), n.hint.clone()))
                .collect();
            let inner = bounded_forall(&pb.neg, vars(&us), pb.body, fresh);
            Part {
                pos: pb.pos,
                neg: us,
                body: TargetFormula::Exists(x.clone(), sort.clone(), Box::new(inner)),
            }
        }
        Formula::ForallSt(x, sort, b) => {
            let pb = go(b, p, fresh);
            let c = fresh.var(sort.clone(), Some(x.clone()));
            let fs: Vec<WitnessVar> = pb
                .pos
                .iter()
                .map(|r| {
                    fresh.var(
                        wrap(p, FiniteType::arrow(sort.clone(), r.ty.clone())),
                        None,
                    )
                })
                .collect();
            let cv = Term::var(c.name.clone());
            let body = pb.body.subst(x, &cv);
            let body = pb
                .pos
                .iter()
                .zip(&fs)
                .fold(body, |b, (r, f)| b.subst(&r.name, &apply(p, f, vec![cv.clone()])));
            let mut neg = vec![c];
            neg.extend(pb.neg);
            Part { pos: fs, neg, body }
        }
        Formula::ExistsSt(x, sort, b) => {
            let pb = go(b, p, fresh);
            let s = fresh.var(FiniteType::star(sort.clone()), Some(x.clone()));
            let us: Vec<WitnessVar> = pb
                .neg
                .iter()
                .map(|n| fresh.var(FiniteType::star(n.ty.clone()), n.hint.clone()))
                .collect();
            let inner = bounded_forall(&pb.neg, vars(&us), pb.body, fresh);
            let body = TargetFormula::BoundedExists(
                x.clone(),
                Term::var(s.name.clone()),
                Box::new(inner),
            );
            let mut pos = vec![s];
            pos.extend(pb.pos);
            Part { pos, neg: us, body }
        }
    }
}

/// Assignment of values to named variables.
pub type Assignment = Vec<(String, Value)>;

/// Truth of the translated body for the given witnesses, counter-witnesses and parameters.
pub fn sat(
    tr: &Translation,
    positive: &[Value],
    negative: &[Value],
    params: &[(String, Value)],
    model: &Model,
) -> Result<bool> {
    space::expect_len(positive, tr.positive.len(), "positive witnesses")?;
    space::expect_len(negative, tr.negative.len(), "negative witnesses")?;
    let mut env = Env::with(params.iter().cloned());
    for (w, v) in tr.positive.iter().zip(positive) {
        env.push(w.name.clone(), v.clone());
    }
    for (w, v) in tr.negative.iter().zip(negative) {
        env.push(w.name.clone(), v.clone());
    }
    holds(&tr.body, &mut env, model)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessOutcome {
    pub holds: bool,
    pub mode: Mode,
    pub checked: u64,
    /// Parameters then negative variables, labelled by their source names when known.
    pub counterexample: Option<Assignment>,
}

#[derive(Debug, Clone)]
pub struct WitnessOptions {
    pub samples: usize,
    /// Fixed parameter values; unlisted parameters range over `0..=k`.
    pub params: Vec<(String, Value)>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            samples: 256,
            params: Vec::new(),
        }
    }
}

/// Whether `positive` satisfies the translation for every parameter and
/// negative tuple, or for a seeded sample of them when there are too many.
pub fn is_witness(
    tr: &Translation,
    positive: &[Value],
    model: &Model,
    opts: &WitnessOptions,
) -> Result<WitnessOutcome> {
    let free: Vec<&String> = tr
        .params
        .iter()
        .filter(|p| !opts.params.iter().any(|(n, _)| n == *p))
        .collect();
    let mut tys: Vec<FiniteType> = free.iter().map(|_| FiniteType::Nat).collect();
    tys.extend(tr.negative_types());
    let mode = space::choose_mode(&tys, model, opts.samples);
    let label = format!("witness {} {}", tr.presentation, tr.source);
    let mut rng = space::rng_for(model.bound().seed, &label);
    let insts = space::instances(&tys, model, mode, &mut rng)?;
    let mut checked = 0;
    for inst in insts {
        let (pv, nv) = inst.split_at(free.len());
        let mut params = opts.params.clone();
        params.extend(free.iter().map(|n| n.to_string()).zip(pv.iter().cloned()));
        checked += 1;
        if !sat(tr, positive, nv, &params, model)? {
            let mut cx: Assignment = free
                .iter()
                .map(|n| n.to_string())
                .zip(pv.iter().cloned())
                .collect();
            cx.extend(
                tr.negative
                    .iter()
                    .map(|w| w.label().to_string())
                    .zip(nv.iter().cloned()),
            );
            return Ok(WitnessOutcome {
                holds: false,
                mode,
                checked,
                counterexample: Some(cx),
            });
        }
    }
    Ok(WitnessOutcome {
        holds: true,
        mode,
        checked,
        counterexample: None,
    })
}
