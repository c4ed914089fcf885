//! Command lines that reproduce a failure through the CLI.

use serde::Serialize;

use crate::conversions::Direction;
use crate::orders::OrderKind;
use crate::semantics::{tuple_to_string, Value};
use crate::syntax::print_formula;
use crate::types::Presentation;

use super::Context;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayStep {
    pub args: Vec<String>,
    /// Text the command's output must contain.
    pub expect: String,
}

impl ReplayStep {
    /// Runs the step in-process; on mismatch returns the captured output.
    pub fn run(&self) -> Result<(), String> {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<String> = std::iter::once("herbrand".to_string())
            .chain(self.args.iter().cloned())
            .collect();
        crate::cli::run(&argv, &mut out, &mut err);
        let text = format!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        if text.contains(&self.expect) {
            Ok(())
        } else {
            Err(format!("expected `{}` in output of {:?}, got `{}`", self.expect, self.args, text.trim_end()))
        }
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

impl Context<'_> {
    fn bound_args(&self) -> Vec<String> {
        let b = self.model.bound();
        let mut v = vec![
            s("--k"),
            b.k.to_string(),
            s("--budget"),
            b.budget.to_string(),
            s("--seed"),
            b.seed.to_string(),
        ];
        if let Some(m) = self.model.mutation() {
            v.push(s("--mutate"));
            v.push(m.name().to_string());
        }
        v
    }

    fn formula_arg(&self) -> String {
        print_formula(self.formula)
    }

    fn param_args(&self, params: &[(String, Value)]) -> Vec<String> {
        params
            .iter()
            .flat_map(|(n, v)| [s("--param"), format!("{n}={v}")])
            .collect()
    }

    /// `check` with an explicit counter-witness; expects `SAT: yes` or `SAT: no`.
    pub fn replay_sat(
        &self,
        p: Presentation,
        pos: &[Value],
        neg: &[Value],
        params: &[(String, Value)],
        expect: bool,
    ) -> ReplayStep {
        let mut args = vec![
            s("check"),
            s("--presentation"),
            p.name().to_string(),
            s("--formula"),
            self.formula_arg(),
            s("--witness"),
            tuple_to_string(pos),
            s("--counter"),
            tuple_to_string(neg),
        ];
        args.extend(self.param_args(params));
        args.extend(self.bound_args());
        ReplayStep {
            args,
            expect: format!("SAT: {}", if expect { "yes" } else { "no" }),
        }
    }

    /// `check` quantifying over every counter-witness.
    pub fn replay_witness(&self, p: Presentation, pos: &[Value], expect: bool) -> ReplayStep {
        let mut args = vec![
            s("check"),
            s("--presentation"),
            p.name().to_string(),
            s("--formula"),
            self.formula_arg(),
            s("--witness"),
            tuple_to_string(pos),
            s("--samples"),
            self.samples.to_string(),
        ];
        args.extend(self.bound_args());
        ReplayStep {
            args,
            expect: format!("WITNESS: {}", if expect { "yes" } else { "no" }),
        }
    }

    pub fn replay_convert(&self, dir: Direction, input: &[Value], expect: String) -> ReplayStep {
        let mut args = vec![
            s("convert"),
            s("--dir"),
            dir.name().to_string(),
            s("--formula"),
            self.formula_arg(),
            s("--value"),
            tuple_to_string(input),
        ];
        args.extend(self.bound_args());
        ReplayStep { args, expect }
    }

    pub fn replay_order(&self, kind: OrderKind, unfold: bool, a: &[Value], b: &[Value], expect: bool) -> ReplayStep {
        let mut args = vec![
            s("order"),
            s("--kind"),
            kind.name().to_string(),
            s("--formula"),
            self.formula_arg(),
        ];
        if unfold {
            args.push(s("--unfold"));
        }
        args.push(tuple_to_string(a));
        args.push(tuple_to_string(b));
        args.extend(self.bound_args());
        ReplayStep {
            args,
            expect: format!("{}: {expect}", kind.name()),
        }
    }
}
