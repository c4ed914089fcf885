//! Bounded checking of the order, monotonicity and equivalence properties
//! over a corpus of formulas, with structured reports.

pub mod corpus;
pub mod gen;
pub mod replay;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::conversions::{self, Direction};
use crate::error::{Error, Result};
use crate::interpretation::{self, is_witness, sat, Translation, WitnessOptions};
use crate::mutation::Mutation;
use crate::orders::{self, OrderKind};
use crate::semantics::{parse_value, tuple_to_string, Bound, Model, Value};
use crate::space::{self, Mode};
use crate::syntax::Formula;
use crate::types::{FiniteType, Presentation};

pub use corpus::{default_corpus, load_dir, CorpusEntry};
pub use replay::ReplayStep;

/// At most this many failures are kept per report.
pub const MAX_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    MonoUpSubset,
    MonoUpSq,
    MonoDownPreceq,
    OrderImplication,
    OrderCounterexample,
    ThmMain1,
    ThmMain2,
    CorWitnessIff,
    LemmaUnfoldPreceq,
    PreorderLaws,
    ConversionTypeSound,
}

impl PropertyId {
    pub const ALL: [PropertyId; 11] = [
        PropertyId::MonoUpSubset,
        PropertyId::MonoUpSq,
        PropertyId::MonoDownPreceq,
        PropertyId::OrderImplication,
        PropertyId::OrderCounterexample,
        PropertyId::ThmMain1,
        PropertyId::ThmMain2,
        PropertyId::CorWitnessIff,
        PropertyId::LemmaUnfoldPreceq,
        PropertyId::PreorderLaws,
        PropertyId::ConversionTypeSound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::MonoUpSubset => "MONO_UP_SUBSET",
            PropertyId::MonoUpSq => "MONO_UP_SQ",
            PropertyId::MonoDownPreceq => "MONO_DOWN_PRECEQ",
            PropertyId::OrderImplication => "ORDER_IMPLICATION",
            PropertyId::OrderCounterexample => "ORDER_COUNTEREXAMPLE",
            PropertyId::ThmMain1 => "THM_MAIN_1",
            PropertyId::ThmMain2 => "THM_MAIN_2",
            PropertyId::CorWitnessIff => "COR_WITNESS_IFF",
            PropertyId::LemmaUnfoldPreceq => "LEMMA_UNFOLD_PRECEQ",
            PropertyId::PreorderLaws => "PREORDER_LAWS",
            PropertyId::ConversionTypeSound => "CONVERSION_TYPE_SOUND",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown property id `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub bound: Bound,
    pub samples: usize,
    pub mutation: Option<Mutation>,
    pub ids: Vec<PropertyId>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: Bound::default(),
            samples: 256,
            mutation: None,
            ids: PropertyId::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    PassSampled,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub vars: Map<String, Json>,
    pub expected: String,
    pub got: String,
    pub detail: String,
    pub replay: Vec<ReplayStep>,
}

impl Failure {
    /// Runs every replay step, reporting the first mismatch.
    pub fn replay(&self) -> std::result::Result<(), String> {
        if self.replay.is_empty() {
            return Err("failure has no replay steps".to_string());
        }
        self.replay.iter().try_for_each(ReplayStep::run)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub id: String,
    pub name: String,
    pub formula: String,
    pub bound: Bound,
    pub mutation: Option<String>,
    pub mode: String,
    pub status: Status,
    pub instances: u64,
    pub satisfied: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

pub fn reports_json(reports: &[Report]) -> Json {
    json!({ "reports": reports })
}

/// Whether any report failed.
pub fn any_fail(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.status.is_fail())
}

/// One report per (formula, id), formula-major, in input order.
pub fn run_suite(corpus: &[CorpusEntry], cfg: &Config) -> Result<Vec<Report>> {
    let model = Model::with_mutation(cfg.bound, cfg.mutation)?;
    let pure = Model::new(cfg.bound)?;
    let mut out = Vec::with_capacity(corpus.len() * cfg.ids.len());
    for entry in corpus {
        let ctx = Context::new(entry, &model, &pure, cfg.samples);
        for &id in &cfg.ids {
            out.push(check_property(&ctx, id));
        }
    }
    Ok(out)
}

pub struct Context<'a> {
    pub name: &'a str,
    pub formula: &'a Formula,
    pub syntax_only: bool,
    /// Model under test, possibly mutated.
    pub model: &'a Model,
    /// Unmutated model used to generate instances.
    pub pure: &'a Model,
    pub samples: usize,
    pub up: Translation,
    pub down: Translation,
}

impl<'a> Context<'a> {
    pub fn new(entry: &'a CorpusEntry, model: &'a Model, pure: &'a Model, samples: usize) -> Self {
        Context {
            name: &entry.name,
            formula: &entry.formula,
            syntax_only: entry.syntax_only,
            model,
            pure,
            samples,
            up: interpretation::translate_up(&entry.formula),
            down: interpretation::translate_down(&entry.formula),
        }
    }

    fn tr(&self, p: Presentation) -> &Translation {
        match p {
            Presentation::Up => &self.up,
            Presentation::Down => &self.down,
        }
    }

    fn params(&self) -> &[String] {
        &self.up.params
    }

    fn nats(&self) -> Vec<FiniteType> {
        vec![FiniteType::Nat; self.params().len()]
    }

    fn assign(&self, pv: &[Value]) -> Vec<(String, Value)> {
        self.params().iter().cloned().zip(pv.iter().cloned()).collect()
    }

    fn rng(&self, id: PropertyId, part: &str) -> ChaCha8Rng {
        space::rng_for(self.model.bound().seed, &format!("{id} {part} {}", self.formula))
    }

    /// Exhaustive instances when they fit the budget, `samples` generated ones otherwise.
    fn instances(
        &self,
        tys: &[FiniteType],
        rng: &mut ChaCha8Rng,
        mut gen: impl FnMut(&mut ChaCha8Rng) -> Result<Vec<Value>>,
    ) -> Result<(Mode, Vec<Vec<Value>>)> {
        let mode = space::choose_mode(tys, self.pure, self.samples);
        let insts = match mode {
            Mode::Exhaustive => space::instances(tys, self.pure, mode, rng)?,
            Mode::Sampled(n) => (0..n).map(|_| gen(rng)).collect::<Result<_>>()?,
        };
        Ok((mode, insts))
    }
}

impl Context<'_> {
    /// Runs a conversion and checks its output type; a failure carries a `convert` replay.
    fn convert_checked(
        &self,
        dir: Direction,
        input: &[Value],
        vars: &Vars,
    ) -> std::result::Result<Vec<Value>, Verdict> {
        let outs = dir.signature(self.formula).1;
        conversions::convert(dir, self.formula, input, self.model)
            .and_then(|out| self.model.check_tuple(&out, &outs).map(|()| out))
            .map_err(|e| {
                failure(
                    vars,
                    format!("{dir} yields a value of type ({})", crate::types::TypeTuple(outs.clone())),
                    e.to_string(),
                    format!("{dir} failed"),
                    vec![self.replay_convert(dir, input, e.to_string())],
                )
            })
    }
}

macro_rules! converted {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(verdict) => return Ok(verdict),
        }
    };
}

enum Verdict {
    /// Hypothesis false.
    Vacuous,
    Held,
    Violated(Box<Failure>),
}

struct Tally {
    mode: Mode,
    instances: u64,
    satisfied: u64,
    failed: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn new(mode: Mode) -> Self {
        Tally {
            mode,
            instances: 0,
            satisfied: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn merge(&mut self, other: Tally) {
        if other.mode != Mode::Exhaustive {
            self.mode = other.mode;
        }
        self.instances += other.instances;
        self.satisfied += other.satisfied;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

type Vars = Vec<(String, Value)>;

fn vars_map(vars: &Vars) -> Map<String, Json> {
    vars.iter()
        .map(|(n, v)| (n.clone(), Json::String(v.to_string())))
        .collect()
}

fn named(prefix: &str, vals: &[Value]) -> Vars {
    vals.iter()
        .enumerate()
        .map(|(i, v)| (format!("{prefix}#{i}"), v.clone()))
        .collect()
}

fn failure(vars: &Vars, expected: impl Into<String>, got: impl Into<String>, detail: impl Into<String>, replay: Vec<ReplayStep>) -> Verdict {
    Verdict::Violated(Box::new(Failure {
        vars: vars_map(vars),
        expected: expected.into(),
        got: got.into(),
        detail: detail.into(),
        replay,
    }))
}

/// Checks every instance in parallel and aggregates in input order.
fn drive<T: Sync>(
    mode: Mode,
    insts: &[T],
    vars: impl Fn(&T) -> Vars + Sync,
    check: impl Fn(&T, &Vars) -> Result<Verdict> + Sync,
) -> Tally {
    let verdicts: Vec<Verdict> = insts
        .par_iter()
        .map(|t| {
            let vs = vars(t);
            check(t, &vs).unwrap_or_else(|e| failure(&vs, "successful evaluation", e.to_string(), "evaluation error", vec![]))
        })
        .collect();
    let mut tally = Tally::new(mode);
    tally.instances = insts.len() as u64;
    for v in verdicts {
        match v {
            Verdict::Vacuous => {}
            Verdict::Held => tally.satisfied += 1,
            Verdict::Violated(f) => {
                tally.satisfied += 1;
                tally.failed += 1;
                if tally.failures.len() < MAX_FAILURES {
                    tally.failures.push(*f);
                }
            }
        }
    }
    tally
}

/// Splits a flat instance into consecutive slices of the given widths.
fn split<'v>(v: &'v [Value], widths: &[usize]) -> Vec<&'v [Value]> {
    let mut out = Vec::with_capacity(widths.len());
    let mut rest = v;
    for &w in widths {
        let (a, b) = rest.split_at(w);
        out.push(a);
        rest = b;
    }
    out
}

pub fn check_property(ctx: &Context<'_>, id: PropertyId) -> Report {
    let start = Instant::now();
    let (note, result) = if ctx.syntax_only {
        (Some("syntax-only corpus entry"), Ok(None))
    } else {
        (None, run_property(ctx, id))
    };
    let bound = ctx.model.bound();
    let mut report = Report {
        id: id.name().to_string(),
        name: ctx.name.to_string(),
        formula: ctx.formula.to_string(),
        bound,
        mutation: ctx.model.mutation().map(|m| m.name().to_string()),
        mode: Mode::Exhaustive.name().to_string(),
        status: Status::NotApplicable,
        instances: 0,
        satisfied: 0,
        failed: 0,
        note: None,
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    match result {
        Ok(None) => {
            report.note = Some(note.unwrap_or("not applicable to this formula").to_string());
        }
        Ok(Some(t)) => {
            report.mode = t.mode.name().to_string();
            report.instances = t.instances;
            report.satisfied = t.satisfied;
            report.failed = t.failed;
            report.status = if t.failed > 0 {
                Status::Fail
            } else if t.mode == Mode::Exhaustive {
                Status::Pass
            } else {
                Status::PassSampled
            };
            report.failures = t.failures;
        }
        Err(e) => {
            report.status = Status::Fail;
            report.failed = 1;
            report.failures.push(Failure {
                vars: Map::new(),
                expected: "the property can be checked".to_string(),
                got: e.to_string(),
                detail: "setup error".to_string(),
                replay: vec![],
            });
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn run_property(ctx: &Context<'_>, id: PropertyId) -> Result<Option<Tally>> {
    match id {
        PropertyId::MonoUpSubset => mono_up(ctx, id, false).map(Some),
        PropertyId::MonoUpSq => mono_up(ctx, id, true).map(Some),
        PropertyId::MonoDownPreceq => mono_down(ctx).map(Some),
        PropertyId::OrderImplication => order_implication(ctx).map(Some),
        PropertyId::OrderCounterexample => order_counterexample(ctx),
        PropertyId::ThmMain1 => thm_main_1(ctx).map(Some),
        PropertyId::ThmMain2 => thm_main_2(ctx).map(Some),
        PropertyId::CorWitnessIff => cor_witness_iff(ctx).map(Some),
        PropertyId::LemmaUnfoldPreceq => lemma_unfold(ctx).map(Some),
        PropertyId::PreorderLaws => preorder_laws(ctx).map(Some),
        PropertyId::ConversionTypeSound => conversion_type_sound(ctx).map(Some),
    }
}

/// `|A|^r_u ∧ r ≤ r' ⊢ |A|^r'_u` with `≤` either `⊆` or `⊑_A`.
fn mono_up(ctx: &Context<'_>, id: PropertyId, sq: bool) -> Result<Tally> {
    let (np, pt, nt) = (ctx.params().len(), ctx.up.positive_types(), ctx.up.negative_types());
    let tys = [ctx.nats(), pt.clone(), pt.clone(), nt.clone()].concat();
    let mut rng = ctx.rng(id, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| {
        let pv = gen::sample_tuple(&ctx.nats(), ctx.pure, rng)?;
        let r = gen::sample_tuple(&pt, ctx.pure, rng)?;
        let r2 = if sq {
            gen::enlarge_up(ctx.formula, &pt, &r, ctx.pure, rng)?
        } else {
            gen::superset(&pt, &r, ctx.pure, rng)?
        };
        let u = gen::sample_tuple(&nt, ctx.pure, rng)?;
        Ok([pv, r, r2, u].concat())
    })?;
    let widths = [np, pt.len(), pt.len(), nt.len()];
    let (kind, rel) = if sq { (OrderKind::Sq, "⊑") } else { (OrderKind::Subset, "⊆") };
    Ok(drive(
        mode,
        &insts,
        |inst| {
            let p = split(inst, &widths);
            [ctx.assign(p[0]), named("r", p[1]), named("r'", p[2]), named("u", p[3])].concat()
        },
        |inst, vars| {
            let p = split(inst, &widths);
            let (pa, r, r2, u) = (ctx.assign(p[0]), p[1], p[2], p[3]);
            let below = if sq {
                orders::sqsubseteq(ctx.formula, r, r2, ctx.model)?
            } else {
                orders::subset(r, r2)?
            };
            if !below || !sat(&ctx.up, r, u, &pa, ctx.model)? {
                return Ok(Verdict::Vacuous);
            }
            if sat(&ctx.up, r2, u, &pa, ctx.model)? {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "up translation holds at r'",
                "false",
                format!("r {rel} r' and the up translation holds at r but not at r'"),
                vec![
                    ctx.replay_sat(Presentation::Up, r, u, &pa, true),
                    ctx.replay_order(kind, false, r, r2, true),
                    ctx.replay_sat(Presentation::Up, r2, u, &pa, false),
                ],
            ))
        },
    ))
}

/// `⟨A⟩^r_u ∧ r ≼_A r' ⊢ ⟨A⟩^r'_u`.
fn mono_down(ctx: &Context<'_>) -> Result<Tally> {
    let (np, pt, nt) = (ctx.params().len(), ctx.down.positive_types(), ctx.down.negative_types());
    let tys = [ctx.nats(), pt.clone(), pt.clone(), nt.clone()].concat();
    let mut rng = ctx.rng(PropertyId::MonoDownPreceq, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| {
        let pv = gen::sample_tuple(&ctx.nats(), ctx.pure, rng)?;
        let r = gen::sample_tuple(&pt, ctx.pure, rng)?;
        let r2 = gen::enlarge_down(&pt, &r, ctx.pure, rng)?;
        let u = gen::sample_tuple(&nt, ctx.pure, rng)?;
        Ok([pv, r, r2, u].concat())
    })?;
    let widths = [np, pt.len(), pt.len(), nt.len()];
    Ok(drive(
        mode,
        &insts,
        |inst| {
            let p = split(inst, &widths);
            [ctx.assign(p[0]), named("r", p[1]), named("r'", p[2]), named("u", p[3])].concat()
        },
        |inst, vars| {
            let p = split(inst, &widths);
            let (pa, r, r2, u) = (ctx.assign(p[0]), p[1], p[2], p[3]);
            if !orders::preceq_tuple(&pt, r, r2)? || !sat(&ctx.down, r, u, &pa, ctx.model)? {
                return Ok(Verdict::Vacuous);
            }
            if sat(&ctx.down, r2, u, &pa, ctx.model)? {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "down translation holds at r'",
                "false",
                "r ≼ r' and the down translation holds at r but not at r'",
                vec![
                    ctx.replay_sat(Presentation::Down, r, u, &pa, true),
                    ctx.replay_order(OrderKind::Preceq, false, r, r2, true),
                    ctx.replay_sat(Presentation::Down, r2, u, &pa, false),
                ],
            ))
        },
    ))
}

/// `r ⊆ r' ⇒ r ⊑_A r'`.
fn order_implication(ctx: &Context<'_>) -> Result<Tally> {
    let pt = ctx.up.positive_types();
    let tys = [pt.clone(), pt.clone()].concat();
    let mut rng = ctx.rng(PropertyId::OrderImplication, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| {
        let r = gen::sample_tuple(&pt, ctx.pure, rng)?;
        let r2 = gen::superset(&pt, &r, ctx.pure, rng)?;
        Ok([r, r2].concat())
    })?;
    let n = pt.len();
    Ok(drive(
        mode,
        &insts,
        |inst| [named("r", &inst[..n]), named("r'", &inst[n..])].concat(),
        |inst, vars| {
            let (r, r2) = inst.split_at(n);
            if !orders::subset(r, r2)? {
                return Ok(Verdict::Vacuous);
            }
            if orders::sqsubseteq(ctx.formula, r, r2, ctx.model)? {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "r ⊑ r'",
                "not r ⊑ r'",
                "r ⊆ r' but not r ⊑ r'",
                vec![
                    ctx.replay_order(OrderKind::Subset, false, r, r2, true),
                    ctx.replay_order(OrderKind::Sq, false, r, r2, false),
                ],
            ))
        },
    ))
}

pub const PAIR_T1: &str = "{fun n:N => {n}, fun n:N => {succ n}}";
pub const PAIR_T2: &str = "{fun n:N => {n, succ n}}";
pub const EXAMPLE_WITNESSES: [&str; 3] = ["{fun n:N => {n}}", PAIR_T1, PAIR_T2];

fn running_shape(ctx: &Context<'_>) -> Option<FiniteType> {
    let pt = ctx.up.positive_types();
    let want = FiniteType::star(FiniteType::arrow(FiniteType::Nat, FiniteType::star(FiniteType::Nat)));
    (pt == [want.clone()]).then_some(want)
}

/// The fixed pair related by `⊑` both ways and by `⊆` neither way.
fn order_counterexample(ctx: &Context<'_>) -> Result<Option<Tally>> {
    let Some(ty) = running_shape(ctx) else {
        return Ok(None);
    };
    let t1 = parse_value(PAIR_T1, &ty, ctx.pure)?;
    let t2 = parse_value(PAIR_T2, &ty, ctx.pure)?;
    let insts = vec![vec![t1, t2]];
    Ok(Some(drive(
        Mode::Exhaustive,
        &insts,
        |inst| vec![("t1".to_string(), inst[0].clone()), ("t2".to_string(), inst[1].clone())],
        |inst, vars| {
            let (a, b) = (&inst[..1], &inst[1..]);
            let sq_ab = orders::sqsubseteq(ctx.formula, a, b, ctx.model)?;
            let sq_ba = orders::sqsubseteq(ctx.formula, b, a, ctx.model)?;
            let sub_ab = orders::subset(a, b)?;
            let sub_ba = orders::subset(b, a)?;
            if sq_ab && sq_ba && !sub_ab && !sub_ba {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "t1 ⊑ t2, t2 ⊑ t1, not t1 ⊆ t2, not t2 ⊆ t1",
                format!("t1 ⊑ t2: {sq_ab}, t2 ⊑ t1: {sq_ba}, t1 ⊆ t2: {sub_ab}, t2 ⊆ t1: {sub_ba}"),
                "fixed pair does not separate ⊑ from ⊆",
                vec![
                    ctx.replay_order(OrderKind::Sq, false, a, b, sq_ab),
                    ctx.replay_order(OrderKind::Sq, false, b, a, sq_ba),
                    ctx.replay_order(OrderKind::Subset, false, a, b, sub_ab),
                    ctx.replay_order(OrderKind::Subset, false, b, a, sub_ba),
                ],
            ))
        },
    )))
}

/// `|A|^r_{u↑} ⊢ ⟨A⟩^{r↓}_u`.
fn thm_main_1(ctx: &Context<'_>) -> Result<Tally> {
    let (np, pt, nt) = (ctx.params().len(), ctx.up.positive_types(), ctx.down.negative_types());
    let tys = [ctx.nats(), pt.clone(), nt.clone()].concat();
    let mut rng = ctx.rng(PropertyId::ThmMain1, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| gen::sample_tuple(&tys, ctx.pure, rng))?;
    let widths = [np, pt.len(), nt.len()];
    Ok(drive(
        mode,
        &insts,
        |inst| {
            let p = split(inst, &widths);
            [ctx.assign(p[0]), named("r", p[1]), named("u", p[2])].concat()
        },
        |inst, vars| {
            let p = split(inst, &widths);
            let (pa, r, u) = (ctx.assign(p[0]), p[1], p[2]);
            let uu = converted!(ctx.convert_checked(Direction::UpNeg, u, vars));
            if !sat(&ctx.up, r, &uu, &pa, ctx.model)? {
                return Ok(Verdict::Vacuous);
            }
            let rd = converted!(ctx.convert_checked(Direction::DownPos, r, vars));
            if sat(&ctx.down, &rd, u, &pa, ctx.model)? {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "down translation holds at r↓, u",
                format!("false at r↓ = {}", tuple_to_string(&rd)),
                format!(
                    "up translation holds at r, u↑ = {} but the down translation fails at r↓, u",
                    tuple_to_string(&uu)
                ),
                vec![
                    ctx.replay_convert(Direction::UpNeg, u, tuple_to_string(&uu)),
                    ctx.replay_sat(Presentation::Up, r, &uu, &pa, true),
                    ctx.replay_convert(Direction::DownPos, r, tuple_to_string(&rd)),
                    ctx.replay_sat(Presentation::Down, &rd, u, &pa, false),
                ],
            ))
        },
    ))
}

/// `⟨A⟩^r_{u↓} ⊢ |A|^{r↑}_u`.
fn thm_main_2(ctx: &Context<'_>) -> Result<Tally> {
    let (np, pt, nt) = (ctx.params().len(), ctx.down.positive_types(), ctx.up.negative_types());
    let tys = [ctx.nats(), pt.clone(), nt.clone()].concat();
    let mut rng = ctx.rng(PropertyId::ThmMain2, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| gen::sample_tuple(&tys, ctx.pure, rng))?;
    let widths = [np, pt.len(), nt.len()];
    Ok(drive(
        mode,
        &insts,
        |inst| {
            let p = split(inst, &widths);
            [ctx.assign(p[0]), named("r", p[1]), named("u", p[2])].concat()
        },
        |inst, vars| {
            let p = split(inst, &widths);
            let (pa, r, u) = (ctx.assign(p[0]), p[1], p[2]);
            let ud = converted!(ctx.convert_checked(Direction::DownNeg, u, vars));
            if !sat(&ctx.down, r, &ud, &pa, ctx.model)? {
                return Ok(Verdict::Vacuous);
            }
            let ru = converted!(ctx.convert_checked(Direction::UpPos, r, vars));
            if sat(&ctx.up, &ru, u, &pa, ctx.model)? {
                return Ok(Verdict::Held);
            }
            Ok(failure(
                vars,
                "up translation holds at r↑, u",
                format!("false at r↑ = {}", tuple_to_string(&ru)),
                format!(
                    "down translation holds at r, u↓ = {} but the up translation fails at r↑, u",
                    tuple_to_string(&ud)
                ),
                vec![
                    ctx.replay_convert(Direction::DownNeg, u, tuple_to_string(&ud)),
                    ctx.replay_sat(Presentation::Down, r, &ud, &pa, true),
                    ctx.replay_convert(Direction::UpPos, r, tuple_to_string(&ru)),
                    ctx.replay_sat(Presentation::Up, &ru, u, &pa, false),
                ],
            ))
        },
    ))
}

/// Witnesses of one presentation convert to witnesses of the other, both ways.
fn cor_witness_iff(ctx: &Context<'_>) -> Result<Tally> {
    let opts = WitnessOptions {
        samples: ctx.samples,
        params: Vec::new(),
    };
    let mut tally = Tally::new(Mode::Exhaustive);
    for (from, to, dir) in [
        (Presentation::Up, Presentation::Down, Direction::DownPos),
        (Presentation::Down, Presentation::Up, Direction::UpPos),
    ] {
        let tys = ctx.tr(from).positive_types();
        let mut rng = ctx.rng(PropertyId::CorWitnessIff, from.name());
        let (mode, mut insts) = ctx.instances(&tys, &mut rng, |rng| gen::sample_tuple(&tys, ctx.pure, rng))?;
        if mode != Mode::Exhaustive {
            if let Ok(t) = gen::top_tuple(&tys, ctx.pure) {
                insts.push(t);
            }
            if from == Presentation::Up {
                if let Some(ty) = running_shape(ctx) {
                    for w in EXAMPLE_WITNESSES {
                        insts.push(vec![parse_value(w, &ty, ctx.pure)?]);
                    }
                }
            }
        }
        let t = drive(
            mode,
            &insts,
            |inst| named("r", inst),
            |r, vars| {
                if !is_witness(ctx.tr(from), r, ctx.model, &opts)?.holds {
                    return Ok(Verdict::Vacuous);
                }
                let conv = converted!(ctx.convert_checked(dir, r, vars));
                let w = is_witness(ctx.tr(to), &conv, ctx.model, &opts)?;
                if w.holds {
                    return Ok(Verdict::Held);
                }
                let cx = w
                    .counterexample
                    .map(|c| c.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", "))
                    .unwrap_or_default();
                Ok(failure(
                    vars,
                    format!("{} is a {to} witness", tuple_to_string(&conv)),
                    format!("counterexample {cx}"),
                    format!("r is a {from} witness but its conversion is not a {to} witness"),
                    vec![
                        ctx.replay_witness(from, r, true),
                        ctx.replay_convert(dir, r, tuple_to_string(&conv)),
                        ctx.replay_witness(to, &conv, false),
                    ],
                ))
            },
        );
        tally.merge(t);
    }
    Ok(tally)
}

/// Type-directed `≼` over `δ⁺_A` against its formula-directed unfolding.
fn lemma_unfold(ctx: &Context<'_>) -> Result<Tally> {
    let pt = ctx.down.positive_types();
    let tys = [pt.clone(), pt.clone()].concat();
    let mut rng = ctx.rng(PropertyId::LemmaUnfoldPreceq, "");
    let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| {
        let r = gen::sample_tuple(&pt, ctx.pure, rng)?;
        let r2 = if rand::Rng::gen_bool(rng, 0.5) {
            gen::enlarge_down(&pt, &r, ctx.pure, rng)?
        } else {
            gen::sample_tuple(&pt, ctx.pure, rng)?
        };
        Ok([r, r2].concat())
    })?;
    let n = pt.len();
    Ok(drive(
        mode,
        &insts,
        |inst| [named("r", &inst[..n]), named("r'", &inst[n..])].concat(),
        |inst, vars| {
            let (r, r2) = inst.split_at(n);
            let typed = orders::preceq_tuple(&pt, r, r2)?;
            let unfolded = orders::preceq_unfold(ctx.formula, r, r2, ctx.model)?;
            if typed == unfolded {
                return Ok(if typed { Verdict::Held } else { Verdict::Vacuous });
            }
            Ok(failure(
                vars,
                format!("unfolding gives {typed}"),
                format!("unfolding gives {unfolded}"),
                "type-directed and formula-directed ≼ disagree",
                vec![
                    ctx.replay_order(OrderKind::Preceq, false, r, r2, typed),
                    ctx.replay_order(OrderKind::Preceq, true, r, r2, unfolded),
                ],
            ))
        },
    ))
}

/// Reflexivity and transitivity of `⊑_A` and `≼_A`; antisymmetry of `≼_A`.
fn preorder_laws(ctx: &Context<'_>) -> Result<Tally> {
    let mut tally = Tally::new(Mode::Exhaustive);
    for kind in [OrderKind::Sq, OrderKind::Preceq] {
        let pt = match kind {
            OrderKind::Sq => ctx.up.positive_types(),
            _ => ctx.down.positive_types(),
        };
        let n = pt.len();
        let tys = [pt.clone(), pt.clone(), pt.clone()].concat();
        let mut rng = ctx.rng(PropertyId::PreorderLaws, kind.name());
        let enlarge = |r: &[Value], rng: &mut ChaCha8Rng| match kind {
            OrderKind::Sq => gen::enlarge_up(ctx.formula, &pt, r, ctx.pure, rng),
            _ => gen::enlarge_down(&pt, r, ctx.pure, rng),
        };
        let (mode, insts) = ctx.instances(&tys, &mut rng, |rng| {
            let a = gen::sample_tuple(&pt, ctx.pure, rng)?;
            if rand::Rng::gen_bool(rng, 0.5) {
                let b = enlarge(&a, rng)?;
                let c = enlarge(&b, rng)?;
                Ok([a, b, c].concat())
            } else {
                let b = gen::sample_tuple(&pt, ctx.pure, rng)?;
                let c = gen::sample_tuple(&pt, ctx.pure, rng)?;
                Ok([a, b, c].concat())
            }
        })?;
        let le = |x: &[Value], y: &[Value]| match kind {
            OrderKind::Sq => orders::sqsubseteq(ctx.formula, x, y, ctx.model),
            _ => orders::preceq_tuple(&pt, x, y),
        };
        let t = drive(
            mode,
            &insts,
            |inst| [named("a", &inst[..n]), named("b", &inst[n..2 * n]), named("c", &inst[2 * n..])].concat(),
            |inst, vars| {
                let (a, b, c) = (&inst[..n], &inst[n..2 * n], &inst[2 * n..]);
                let k = kind.name();
                if !le(a, a)? {
                    return Ok(failure(
                        vars,
                        format!("a {k} a"),
                        "false",
                        "reflexivity fails",
                        vec![ctx.replay_order(kind, false, a, a, false)],
                    ));
                }
                let (ab, bc) = (le(a, b)?, le(b, c)?);
                if ab && bc && !le(a, c)? {
                    return Ok(failure(
                        vars,
                        format!("a {k} c"),
                        "false",
                        "transitivity fails",
                        vec![
                            ctx.replay_order(kind, false, a, b, true),
                            ctx.replay_order(kind, false, b, c, true),
                            ctx.replay_order(kind, false, a, c, false),
                        ],
                    ));
                }
                if kind == OrderKind::Preceq && ab && le(b, a)? && a != b {
                    return Ok(failure(
                        vars,
                        "a = b",
                        "a ≠ b",
                        "antisymmetry fails",
                        vec![
                            ctx.replay_order(kind, false, a, b, true),
                            ctx.replay_order(kind, false, b, a, true),
                        ],
                    ));
                }
                Ok(if ab && bc { Verdict::Held } else { Verdict::Vacuous })
            },
        );
        tally.merge(t);
    }
    Ok(tally)
}

/// Every conversion maps well-typed inputs to well-typed outputs.
fn conversion_type_sound(ctx: &Context<'_>) -> Result<Tally> {
    let mut tally = Tally::new(Mode::Exhaustive);
    for dir in Direction::ALL {
        let (ins, _) = dir.signature(ctx.formula);
        let mut rng = ctx.rng(PropertyId::ConversionTypeSound, dir.name());
        let (mode, insts) = ctx.instances(&ins, &mut rng, |rng| gen::sample_tuple(&ins, ctx.pure, rng))?;
        let t = drive(
            mode,
            &insts,
            |inst| named("x", inst),
            |x, vars| {
                converted!(ctx.convert_checked(dir, x, vars));
                Ok(Verdict::Held)
            },
        );
        tally.merge(t);
    }
    Ok(tally)
}
