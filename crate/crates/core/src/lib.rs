//! Compactness, nuclearity and entropy numbers of embeddings between Besov
//! spaces of generalised smoothness, decided through their sequence-space
//! models.

pub mod embanalyzer;
pub mod error;
pub mod rational;
pub mod seqcore;
pub mod seqdsl;
pub mod seqspacelab;

pub use error::{AnalysisError, LabError, ParseError, SequenceError};
pub use rational::{Exponent, Rational};
pub use seqdsl::SeqExpr;
