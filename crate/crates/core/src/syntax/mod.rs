//! Abstract syntax, parser and printer for source and translated formulas.

mod ast;
mod parser;
mod print;

pub use ast::{Formula, TargetFormula, Term};

use crate::error::Result;
use crate::semantics::typecheck;
use crate::types::FiniteType;

/// Parses and type-checks a source formula. Free variables are parameters of type `N`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let f = parser::parse_source_str(text)?;
    typecheck::check_formula(&f)?;
    Ok(f)
}

/// Parses a term and checks it against `expected` in the empty context.
pub fn parse_term(text: &str, expected: &FiniteType) -> Result<Term> {
    let t = parser::parse_term_str(text)?;
    typecheck::check_closed(&t, expected)?;
    Ok(t)
}

/// Parses a term without type checking.
pub fn parse_raw_term(text: &str) -> Result<Term> {
    parser::parse_term_str(text)
}

/// Parses `()`, a bare term, or `(t1, t2, ...)`.
pub fn parse_term_tuple(text: &str) -> Result<Vec<Term>> {
    parser::parse_term_tuple_str(text)
}

pub fn parse_type(text: &str) -> Result<FiniteType> {
    parser::parse_type_str(text)
}

/// Parses a translated formula without type checking.
pub fn parse_target(text: &str) -> Result<TargetFormula> {
    parser::parse_target_str(text)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn print_target(f: &TargetFormula) -> String {
    f.to_string()
}
