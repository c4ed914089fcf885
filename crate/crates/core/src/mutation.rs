//! Deliberate faults used to check that the verifier notices broken code.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// Set application inside the conversions keeps only the least member
    /// of the function set instead of taking the union.
    DropUnion,
    /// The up conversion of an implication converts the consequent's
    /// witnesses down instead of up.
    SwapUpDown,
    /// The implication clause of the witness order compares consequent
    /// witnesses by equality instead of by the order itself.
    SqEquality,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::DropUnion, Mutation::SwapUpDown, Mutation::SqEquality];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DropUnion => "drop-union",
            Mutation::SwapUpDown => "swap-updown",
            Mutation::SqEquality => "sq-equality",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown mutation `{s}` (expected drop-union, swap-updown or sq-equality)"
                ))
            })
    }
}
