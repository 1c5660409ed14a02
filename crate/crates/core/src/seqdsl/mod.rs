//! Smoothness-sequence expressions: syntax tree, parser, evaluation and
//! asymptotic profile.

mod ast;
mod eval;
mod parser;
mod profile;

pub use ast::{SeqExpr, MAX_DEPTH};
pub use eval::{oscillation_log2, pw2_log2, Scale, Value};
pub use parser::{parse, parse_omega};
pub use profile::{canonicalize, exact_boyd, growth_orders, BoydIndex, NormalForm, SequenceProfile};

/// Serde adapter writing expressions as DSL text.
pub mod serde_expr {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse, SeqExpr};

    pub fn serialize<S: Serializer>(e: &SeqExpr, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&e.render())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SeqExpr, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}
