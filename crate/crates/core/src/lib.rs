//! Witness types, translations, witness conversions and bounded verification
//! for a Herbrand-style functional interpretation of nonstandard Heyting arithmetic.

pub mod cli;
pub mod conversions;
pub mod error;
pub mod interpretation;
pub mod mutation;
pub mod orders;
pub mod semantics;
pub mod space;
pub mod syntax;
pub mod types;
pub mod verifier;

pub use error::{Error, Result};
