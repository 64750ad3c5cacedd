//! Monadic second-order logic over `(ω, <)` with language predicates.
//!
//! Formulas without language atoms compile to Büchi automata over the base
//! alphabet extended by one bit per free variable. Evaluation on lasso
//! valuations is a separate, direct route.

mod algebra;
mod compile;
mod eval;
mod formula;
mod game;
mod parse;

pub use compile::{compile_to_buchi, compile_with_limits, mso_satisfiable, Coding, CompiledFormula, UpValuation};
pub use eval::{evaluate, Oracles};
pub use formula::{Formula, Sort, Var};
pub use game::encode_congruence_game;
