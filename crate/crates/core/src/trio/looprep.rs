use crate::error::Result;
use crate::oracles::LanguageOracle;
use crate::words::{primitive_root, Alphabet, FiniteWord, UpWord};

use super::FiniteLanguage;

/// Default bound on the power of a rotated root tried against the language.
pub const DEFAULT_POWER_BOUND: usize = 16;

/// The ω-language `{w·v^ω : v ∈ L}` of a finite-word language `L`.
///
/// `x·y^ω` has this form exactly when some power of a rotation of the
/// primitive root of `y` lies in `L`. Powers are tried up to a fixed bound,
/// so a negative answer only covers powers up to it.
pub struct LoopRepresentation {
    language: Box<dyn FiniteLanguage>,
    power_bound: usize,
}

pub fn loop_representation(language: Box<dyn FiniteLanguage>, power_bound: usize) -> LoopRepresentation {
    LoopRepresentation { language, power_bound }
}

impl LoopRepresentation {
    pub fn power_bound(&self) -> usize {
        self.power_bound
    }
}

impl LanguageOracle for LoopRepresentation {
    fn name(&self) -> String {
        format!("loop({}, K={})", self.language.name(), self.power_bound)
    }

    fn alphabet(&self) -> &Alphabet {
        self.language.alphabet()
    }

    fn decide_up(&self, w: &UpWord) -> Result<bool> {
        let root = primitive_root(w.period().letters());
        let found = (0..root.len()).any(|r| {
            let rotation: FiniteWord = root[r..].iter().chain(&root[..r]).copied().collect();
            (1..=self.power_bound).any(|k| self.language.contains(&rotation.repeat(k)))
        });
        Ok(found)
    }
}
