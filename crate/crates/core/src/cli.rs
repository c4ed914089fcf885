//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a negative check or a failed property, 2 a
//! parse, type, flag or configuration error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conversions::{self, Direction};
use crate::error::{Error, Result};
use crate::interpretation::{self, is_witness, sat, Translation, WitnessOptions};
use crate::mutation::Mutation;
use crate::orders::{self, OrderKind};
use crate::semantics::{parse_value, parse_value_tuple, tuple_to_string, Bound, Model, Value};
use crate::space::Mode;
use crate::syntax::{parse_formula, parse_type, Formula};
use crate::types::{down_types, up_types, FiniteType, Presentation, TypeTuple};
use crate::verifier::{self, Config, PropertyId};

#[derive(Parser, Debug)]
#[command(name = "herbrand", version, about = "Witness types, translations, conversions and bounded verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct BoundArgs {
    /// Largest natural number of the bounded model.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Largest enumeration size before sampling or refusing.
    #[arg(long, env = "HERBRAND_BUDGET", default_value_t = 4096)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled instances when enumeration exceeds the budget.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Built-in mutation: drop-union, swap-updown or sq-equality.
    #[arg(long)]
    mutate: Option<Mutation>,
}

impl BoundArgs {
    fn bound(&self) -> Result<Bound> {
        Bound::new(self.k, self.budget, self.seed)
    }

    fn model(&self) -> Result<Model> {
        Model::with_mutation(self.bound()?, self.mutate)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PresentationArg {
    Up,
    Down,
}

impl From<PresentationArg> for Presentation {
    fn from(p: PresentationArg) -> Self {
        match p {
            PresentationArg::Up => Presentation::Up,
            PresentationArg::Down => Presentation::Down,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the up and down witness types of a formula.
    Types {
        /// Formula text, or @FILE.
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the up or down translation of a formula.
    Translate {
        formula: String,
        #[arg(long, value_enum, default_value = "up")]
        presentation: PresentationArg,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a tuple witnesses a formula, or satisfies it against a counter-witness.
    Check {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "up")]
        presentation: PresentationArg,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        counter: Option<String>,
        /// Fix a free variable, as NAME=VALUE.
        #[arg(long = "param")]
        params: Vec<String>,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Apply a witness conversion to a value tuple, or print it as terms.
    Convert {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        dir: Direction,
        #[arg(long)]
        value: Option<String>,
        #[arg(long)]
        emit_term: bool,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Compare two tuples by ⊆, ⊑ or ≼.
    Order {
        #[arg(long)]
        kind: OrderKind,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long = "type")]
        ty: Option<String>,
        /// Decide ≼ by its formula-directed unfolding.
        #[arg(long)]
        unfold: bool,
        v1: String,
        v2: String,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Check properties over a corpus.
    Verify {
        /// Directory of .hfi files; the shipped corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated property ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<PropertyId>,
        /// Write the JSON report here; `-` for standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        bound: BoundArgs,
    },
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_formula(arg: &str) -> Result<Formula> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            let raw = fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            raw.lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join("\n")
        }
        None => arg.to_string(),
    };
    parse_formula(&text)
}

fn io(r: std::io::Result<()>) -> Result<()> {
    r.map_err(Error::from)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Types { formula, json } => {
            let a = read_formula(&formula)?;
            let (up, un) = up_types(&a);
            let (dp, dn) = down_types(&a);
            if json {
                let list = |t: &TypeTuple| t.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                let j = serde_json::json!({
                    "formula": a.to_string(),
                    "up": {"positive": list(&up), "negative": list(&un)},
                    "down": {"positive": list(&dp), "negative": list(&dn)},
                });
                io(writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("json")))?;
            } else {
                io(writeln!(out, "up+: {up}  up-: {un}  down+: {dp}  down-: {dn}"))?;
            }
            Ok(0)
        }
        Command::Translate { formula, presentation, json } => {
            let a = read_formula(&formula)?;
            let tr = interpretation::translate(&a, presentation.into());
            if json {
                io(writeln!(out, "{}", serde_json::to_string_pretty(&tr.to_json()).expect("json")))?;
            } else {
                print_translation(&tr, out)?;
            }
            Ok(0)
        }
        Command::Check {
            formula,
            presentation,
            witness,
            counter,
            params,
            bound,
        } => {
            let a = read_formula(&formula)?;
            let model = bound.model()?;
            let tr = interpretation::translate(&a, presentation.into());
            let pos = parse_value_tuple(&witness, &tr.positive_types(), &model)?;
            let fixed = parse_params(&params, &tr, &model)?;
            match counter {
                Some(c) => {
                    let neg = parse_value_tuple(&c, &tr.negative_types(), &model)?;
                    let missing: Vec<&String> =
                        tr.params.iter().filter(|p| !fixed.iter().any(|(n, _)| n == *p)).collect();
                    if let Some(p) = missing.first() {
                        return Err(Error::Config(format!("--counter needs a value for `{p}` (use --param {p}=V)")));
                    }
                    let ok = sat(&tr, &pos, &neg, &fixed, &model)?;
                    io(writeln!(out, "SAT: {} (k={})", yes_no(ok), model.k()))?;
                    Ok(if ok { 0 } else { 1 })
                }
                None => {
                    let opts = WitnessOptions {
                        samples: bound.samples,
                        params: fixed.clone(),
                    };
                    let w = is_witness(&tr, &pos, &model, &opts)?;
                    match &w.counterexample {
                        None => io(writeln!(out, "WITNESS: yes ({})", coverage(&tr, &fixed, &model, w.mode, w.checked)))?,
                        Some(cx) => {
                            let c: Vec<String> = cx.iter().map(|(n, v)| format!("{n}={v}")).collect();
                            io(writeln!(out, "WITNESS: no (counterexample: {})", c.join(", ")))?
                        }
                    }
                    Ok(if w.holds { 0 } else { 1 })
                }
            }
        }
        Command::Convert {
            formula,
            dir,
            value,
            emit_term,
            bound,
        } => {
            let a = read_formula(&formula)?;
            let model = bound.model()?;
            let (ins, outs) = dir.signature(&a);
            if value.is_none() && !emit_term {
                return Err(Error::Config("convert needs --value or --emit-term".to_string()));
            }
            if let Some(v) = value {
                let vals = parse_value_tuple(&v, &ins, &model)?;
                let res = conversions::convert(dir, &a, &vals, &model)?;
                model.check_tuple(&res, &outs)?;
                io(writeln!(out, "{}", tuple_to_string(&res)))?;
            }
            if emit_term {
                let names = conversions::emit::inputs(ins.len());
                for (n, t) in names.iter().zip(&ins) {
                    io(writeln!(out, "input {n} : {t}"))?;
                }
                for (t, ty) in conversions::emit::convert(dir, &a).iter().zip(&outs) {
                    io(writeln!(out, "{t} : {ty}"))?;
                }
            }
            Ok(0)
        }
        Command::Order {
            kind,
            formula,
            ty,
            unfold,
            v1,
            v2,
            bound,
        } => {
            let model = bound.model()?;
            let a = formula.as_deref().map(read_formula).transpose()?;
            let ty = ty.as_deref().map(parse_type).transpose()?;
            let tys: Vec<FiniteType> = match (&ty, &a, kind) {
                (Some(t), _, OrderKind::Subset | OrderKind::Preceq) => vec![t.clone()],
                (_, Some(a), OrderKind::Subset | OrderKind::Sq) => up_types(a).0 .0,
                (_, Some(a), OrderKind::Preceq) => down_types(a).0 .0,
                (Some(_), None, OrderKind::Sq) => return Err(Error::Config("--kind sq needs --formula".to_string())),
                (None, None, _) => return Err(Error::Config("order needs --formula or --type".to_string())),
            };
            let x = parse_value_tuple(&v1, &tys, &model)?;
            let y = parse_value_tuple(&v2, &tys, &model)?;
            let res = match kind {
                OrderKind::Subset => orders::subset(&x, &y)?,
                OrderKind::Sq => orders::sqsubseteq(a.as_ref().expect("checked above"), &x, &y, &model)?,
                OrderKind::Preceq if unfold => match &a {
                    Some(a) => orders::preceq_unfold(a, &x, &y, &model)?,
                    None => return Err(Error::Config("--unfold needs --formula".to_string())),
                },
                OrderKind::Preceq => orders::preceq_tuple(&tys, &x, &y)?,
            };
            io(writeln!(out, "{kind}: {res} (k={})", model.k()))?;
            Ok(0)
        }
        Command::Verify { corpus, ids, json, bound } => {
            let entries = match &corpus {
                Some(dir) => verifier::load_dir(dir)?,
                None => verifier::default_corpus(),
            };
            let cfg = Config {
                bound: bound.bound()?,
                samples: bound.samples,
                mutation: bound.mutate,
                ids: if ids.is_empty() { PropertyId::ALL.to_vec() } else { ids },
            };
            let reports = verifier::run_suite(&entries, &cfg)?;
            let to_stdout = json.as_deref().is_some_and(|p| p.as_os_str() == "-");
            if let Some(path) = &json {
                let text = serde_json::to_string_pretty(&verifier::reports_json(&reports)).expect("json") + "\n";
                if to_stdout {
                    io(out.write_all(text.as_bytes()))?;
                } else {
                    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                }
            }
            if !to_stdout {
                for r in &reports {
                    let status = match r.status {
                        verifier::Status::Pass => "PASS",
                        verifier::Status::PassSampled => "PASS(sampled)",
                        verifier::Status::Fail => "FAIL",
                        verifier::Status::NotApplicable => "N/A",
                    };
                    io(writeln!(
                        out,
                        "{status:<13} {:<22} {:<20} {:<10} instances={} satisfied={} failed={}",
                        r.id, r.name, r.mode, r.instances, r.satisfied, r.failed
                    ))?;
                    for f in &r.failures {
                        io(writeln!(out, "    {}: expected {}, got {}", f.detail, f.expected, f.got))?;
                    }
                }
                let count = |s| reports.iter().filter(|r| r.status == s).count();
                io(writeln!(
                    out,
                    "{} reports: {} pass, {} pass sampled, {} fail, {} not applicable (k={}, budget={}, seed={})",
                    reports.len(),
                    count(verifier::Status::Pass),
                    count(verifier::Status::PassSampled),
                    count(verifier::Status::Fail),
                    count(verifier::Status::NotApplicable),
                    cfg.bound.k,
                    cfg.bound.budget,
                    cfg.bound.seed,
                ))?;
            }
            Ok(if verifier::any_fail(&reports) { 1 } else { 0 })
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_params(params: &[String], tr: &Translation, model: &Model) -> Result<Vec<(String, Value)>> {
    params
        .iter()
        .map(|p| {
            let (name, val) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--param `{p}` is not NAME=VALUE")))?;
            let name = name.trim();
            if !tr.params.iter().any(|x| x == name) {
                return Err(Error::Config(format!("`{name}` is not a free variable of the formula")));
            }
            Ok((name.to_string(), parse_value(val, &FiniteType::Nat, model)?))
        })
        .collect()
}

/// Human description of the instances a witness check ranged over.
fn coverage(tr: &Translation, fixed: &[(String, Value)], model: &Model, mode: Mode, checked: u64) -> String {
    if let Mode::Sampled(_) = mode {
        return format!("sampled {checked} instances, seed {}", model.bound().seed);
    }
    let mut parts: Vec<String> = tr
        .params
        .iter()
        .filter(|p| !fixed.iter().any(|(n, _)| n == *p))
        .map(|p| format!("{p}=0..{}", model.k()))
        .collect();
    for w in &tr.negative {
        parts.push(match w.ty {
            FiniteType::Nat => format!("{}=0..{}", w.label(), model.k()),
            ref t => format!(
                "{} over {t}, {} values",
                w.label(),
                model.cardinality(t).map_or("many".to_string(), |n| n.to_string())
            ),
        });
    }
    if parts.is_empty() {
        format!("checked {checked} instance")
    } else {
        format!("checked {}", parts.join(", "))
    }
}

fn print_translation(tr: &Translation, out: &mut dyn Write) -> Result<()> {
    io(writeln!(out, "presentation: {}", tr.presentation))?;
    let show = |vs: &[interpretation::WitnessVar]| -> String {
        if vs.is_empty() {
            return "()".to_string();
        }
        vs.iter()
            .map(|v| match &v.hint {
                Some(h) => format!("{} : {} [{h}]", v.name, v.ty),
                None => format!("{} : {}", v.name, v.ty),
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    io(writeln!(out, "positive: {}", show(&tr.positive)))?;
    io(writeln!(out, "negative: {}", show(&tr.negative)))?;
    if !tr.params.is_empty() {
        io(writeln!(out, "params: {}", tr.params.join(", ")))?;
    }
    io(writeln!(out, "body: {}", tr.body))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("herbrand").chain(args.iter().copied()).map(String::from).collect();
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    const A: &str = "forall^st n:N. exists^st m:N. n = m";

    #[test]
    fn types_line() {
        let (code, out, _) = call(&["types", A]);
        assert_eq!(code, 0);
        assert_eq!(out, "up+: (N -> N*)*  up-: N  down+: N -> N*  down-: N\n");
    }

    #[test]
    fn convert_flattens() {
        let (code, out, err) = call(&[
            "convert", "--dir", "down-pos", "--formula", A, "--value",
            "{fun n:N => {n}, fun n:N => {succ n}}", "--k", "3",
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, "fun-table [0 => {0,1}, 1 => {1,2}, 2 => {2,3}, 3 => {3}]\n");
    }

    #[test]
    fn check_witness() {
        let (code, out, _) = call(&["check", "--presentation", "up", "--formula", A, "--witness", "{fun n:N => {n}}", "--k", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "WITNESS: yes (checked n=0..5)\n");
        let (code, out, _) = call(&["check", "--formula", A, "--witness", "{fun n:N => {succ n}}", "--k", "5"]);
        assert_eq!(code, 1);
        assert_eq!(out, "WITNESS: no (counterexample: n=0)\n");
    }

    #[test]
    fn check_with_counter_needs_params() {
        let (code, _, err) = call(&["check", "--formula", "st[N](z)", "--witness", "{0}", "--counter", "()"]);
        assert_eq!(code, 2);
        assert!(err.contains("--param z="), "{err}");
        let (code, out, _) = call(&["check", "--formula", "st[N](z)", "--witness", "{0}", "--counter", "()", "--param", "z=0"]);
        assert_eq!((code, out.as_str()), (0, "SAT: yes (k=2)\n"));
    }

    #[test]
    fn order_kinds() {
        let (_, out, _) = call(&["order", "--kind", "sq", "--formula", A, crate::verifier::PAIR_T1, crate::verifier::PAIR_T2]);
        assert_eq!(out, "sq: true (k=2)\n");
        let (_, out, _) = call(&["order", "--kind", "subset", "--formula", A, crate::verifier::PAIR_T1, crate::verifier::PAIR_T2]);
        assert_eq!(out, "subset: false (k=2)\n");
        let (_, out, _) = call(&["order", "--kind", "preceq", "--type", "N*", "{0}", "{0, 1}"]);
        assert_eq!(out, "preceq: true (k=2)\n");
        let (code, _, err) = call(&["order", "--kind", "preceq", "--type", "N", "0", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("not a *-type"), "{err}");
    }

    #[test]
    fn errors_exit_two_with_position() {
        let (code, _, err) = call(&["types", "forall^st n:N. n ="]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: parse error at 1:"), "{err}");
        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["verify", "--k", "0"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["check", "--formula", A, "--witness", "{}", "--mutate", "nope"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}
