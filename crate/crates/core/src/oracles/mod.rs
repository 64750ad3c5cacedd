//! Membership oracles for concrete ω-languages on finitely presented words.
//!
//! Each oracle declares which presentations it decides and reports
//! [`Error::Unsupported`] for the rest.

mod finder;
mod languages;
mod neutral;

pub use finder::block_growth_violation;
pub use languages::{PrimeBlocks, Regular, Singleton, UltimatelyPeriodic, Unbounded, UnboundedNeutral};
pub use neutral::{neutral_letter_property_test, NeutralCounterexample};

use crate::congruence::{Classifier, Condition2Witness};
use crate::error::{Error, Result};
use crate::words::{Alphabet, BlockWord, OmegaWord, UpWord};

/// A decidable ω-language over a fixed alphabet.
pub trait LanguageOracle {
    fn name(&self) -> String;

    fn alphabet(&self) -> &Alphabet;

    fn neutral_letter(&self) -> Option<char> {
        None
    }

    /// Membership of a lasso word already checked against the alphabet.
    fn decide_up(&self, w: &UpWord) -> Result<bool>;

    /// Membership of a block word already checked against the alphabet.
    /// Defaults to the lasso decision for periodic lengths.
    fn decide_block(&self, w: &BlockWord) -> Result<bool> {
        match w.to_up() {
            Some(up) => self.decide_up(&up),
            None => Err(Error::unsupported(format!("oracle {} does not decide block word {w}", self.name()))),
        }
    }

    fn contains_up(&self, w: &UpWord) -> Result<bool> {
        w.prefix().check_over(self.alphabet())?;
        w.period().check_over(self.alphabet())?;
        self.decide_up(w)
    }

    fn contains_block(&self, w: &BlockWord) -> Result<bool> {
        self.alphabet().check_letters(&[w.block_letter(), w.separator()])?;
        self.decide_block(w)
    }

    fn contains(&self, w: &OmegaWord) -> Result<bool> {
        match w {
            OmegaWord::Up(u) => self.contains_up(u),
            OmegaWord::Block(b) => self.contains_block(b),
        }
    }

    fn has_violation_finder(&self) -> bool {
        false
    }

    /// A failure of infinite-product compatibility for `c`, which exists for
    /// every classifier when the language is not ω-regular.
    fn find_violation(&self, c: &Classifier) -> Result<Condition2Witness> {
        let _ = c;
        Err(Error::unsupported(format!("oracle {} has no violation finder", self.name())))
    }
}

/// Looks up `U`, `Uprime`, `P`, `primes`, `singleton:<lasso word>` or
/// `regular:<automaton file>`.
pub fn oracle_by_name(name: &str) -> Result<Box<dyn LanguageOracle>> {
    if let Some(w) = name.strip_prefix("singleton:") {
        return Ok(Box::new(Singleton::new(w.parse()?)));
    }
    if let Some(path) = name.strip_prefix("regular:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
        return Ok(Box::new(Regular::new(text.parse()?)));
    }
    match name {
        "U" => Ok(Box::new(Unbounded::new())),
        "Uprime" => Ok(Box::new(UnboundedNeutral::new())),
        "P" => Ok(Box::new(UltimatelyPeriodic::new())),
        "primes" => Ok(Box::new(PrimeBlocks::new())),
        other => Err(Error::invalid(format!(
            "unknown oracle {other:?}; expected U, Uprime, P, primes, singleton:<word> or regular:<file>"
        ))),
    }
}
