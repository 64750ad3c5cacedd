//! Executable machinery around ω-regular languages and their extensions by a
//! single non-regular language: Büchi automata, finite-index congruences on
//! finite words, membership oracles for concrete non-regular languages, the
//! congruence game, MSO formulas with a language predicate, and the
//! finite-word full-trio pipeline.

pub mod buchi;
pub mod congruence;
pub mod error;
pub mod game;
pub mod mso;
mod graph;
pub mod oracles;
pub mod sample;
pub mod trio;
pub mod words;

pub use buchi::{BuchiAutomaton, Emptiness, Limits, TransitionMonoid};
pub use congruence::{Classifier, Condition1Violation, Condition2Witness};
pub use error::{Error, Result};
pub use oracles::{oracle_by_name, LanguageOracle};
pub use words::{Alphabet, BlockWord, FiniteWord, Homomorphism, Lengths, OmegaWord, UpWord};
