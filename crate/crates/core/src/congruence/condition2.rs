//! Bounded search for failures of infinite-product compatibility.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::LanguageOracle;
use crate::words::{omega_product, BlockWord, FiniteWord, Lengths, OmegaWord};

use super::Classifier;

/// A sequence `u₁, u₂, …` of nonempty finite words with a finite presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WordSequence {
    /// `head` then `cycle` repeated forever.
    Periodic { head: Vec<FiniteWord>, cycle: Vec<FiniteWord> },
    /// `uₙ = block^{kₙ} sep`.
    Blocks { block: char, sep: char, lengths: Lengths },
}

impl WordSequence {
    /// The `n`-th word, counting from 1.
    pub fn get(&self, n: usize) -> FiniteWord {
        assert!(n >= 1, "sequences are indexed from 1");
        match self {
            WordSequence::Periodic { head, cycle } => {
                if n <= head.len() {
                    head[n - 1].clone()
                } else {
                    cycle[(n - 1 - head.len()) % cycle.len()].clone()
                }
            }
            WordSequence::Blocks { block, sep, lengths } => {
                let mut w: FiniteWord = std::iter::repeat_n(*block, lengths.get(n as u64) as usize).collect();
                w.push(*sep);
                w
            }
        }
    }

    /// The infinite product `u₁u₂⋯`.
    pub fn product(&self) -> Result<OmegaWord> {
        match self {
            WordSequence::Periodic { head, cycle } => {
                if cycle.is_empty() {
                    return Err(Error::invalid("periodic sequence with an empty cycle"));
                }
                Ok(OmegaWord::Up(omega_product(head, cycle)?))
            }
            WordSequence::Blocks { block, sep, lengths } => {
                Ok(OmegaWord::Block(BlockWord::new(*block, *sep, lengths.clone())?))
            }
        }
    }

    /// Index from which the sequence is periodic, and the period, when it is periodic.
    fn period(&self) -> Option<(usize, usize)> {
        match self {
            WordSequence::Periodic { head, cycle } => Some((head.len() + 1, cycle.len())),
            WordSequence::Blocks { lengths: Lengths::Constant(_), .. } => Some((1, 1)),
            WordSequence::Blocks { lengths: Lengths::EventuallyPeriodic { head, cycle }, .. } => {
                Some((head.len() + 1, cycle.len()))
            }
            WordSequence::Blocks { lengths: Lengths::Affine { .. }, .. } => None,
        }
    }
}

/// Two sequences with elementwise equivalent words whose products get
/// different verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition2Witness {
    pub original: WordSequence,
    pub replaced: WordSequence,
    pub original_product: OmegaWord,
    pub replaced_product: OmegaWord,
    pub original_member: bool,
    pub replaced_member: bool,
}

impl Condition2Witness {
    pub fn new(oracle: &dyn LanguageOracle, original: WordSequence, replaced: WordSequence) -> Result<Self> {
        let original_product = original.product()?;
        let replaced_product = replaced.product()?;
        let original_member = oracle.contains(&original_product)?;
        let replaced_member = oracle.contains(&replaced_product)?;
        Ok(Condition2Witness { original, replaced, original_product, replaced_product, original_member, replaced_member })
    }

    /// Recomputes both products and verdicts; true iff they match the
    /// recorded ones and differ from each other.
    pub fn verify(&self, oracle: &dyn LanguageOracle) -> Result<bool> {
        let again = Condition2Witness::new(oracle, self.original.clone(), self.replaced.clone())?;
        Ok(again == *self && self.original_member != self.replaced_member)
    }

    /// Checks `uᵢ ∼ u′ᵢ` for every index. When both sequences are periodic
    /// this is exact; otherwise the first `bound` indices are checked.
    pub fn verify_classes(&self, c: &Classifier, bound: usize) -> Result<bool> {
        let limit = match (self.original.period(), self.replaced.period()) {
            (Some((s1, p1)), Some((s2, p2))) => s1.max(s2) + crate::words::lcm(p1 as u64, p2 as u64) as usize,
            _ => bound,
        };
        for n in 1..=limit {
            if !c.equivalent(&self.original.get(n), &self.replaced.get(n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Bounds for [`check_condition2_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition2Bounds {
    /// Maximum length of each `uᵢ` (words are nonempty).
    pub word_len: usize,
    /// Maximum number of words before the cycle.
    pub head_len: usize,
    /// Maximum number of words in the cycle (at least one).
    pub cycle_len: usize,
}

impl Default for Condition2Bounds {
    fn default() -> Self {
        Condition2Bounds { word_len: 2, head_len: 2, cycle_len: 2 }
    }
}

fn tuples(words: &[FiniteWord], len: usize) -> Vec<Vec<FiniteWord>> {
    let mut out: Vec<Vec<FiniteWord>> = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| words.iter().map(move |w| {
            let mut t2 = t.clone();
            t2.push(w.clone());
            t2
        })).collect();
    }
    out
}

/// Compares every periodic sequence of nonempty words within `bounds`
/// against the sequence of shortlex-least nonempty representatives of the
/// same classes. Two sequences of equivalent words share that
/// representative sequence, so within the bounds this covers every pair.
pub fn check_condition2_bounded(
    c: &Classifier,
    oracle: &dyn LanguageOracle,
    bounds: Condition2Bounds,
) -> Result<Option<Condition2Witness>> {
    if c.alphabet() != oracle.alphabet() {
        return Err(Error::AlphabetsDiffer { left: c.alphabet().to_string(), right: oracle.alphabet().to_string() });
    }
    let reps = c.nonempty_representatives();
    let rep = |w: &FiniteWord| -> Result<FiniteWord> {
        let class = c.class_of(w)?;
        Ok(reps.iter().find(|(d, _)| *d == class).expect("nonempty class has a nonempty representative").1.clone())
    };
    let words: Vec<FiniteWord> =
        FiniteWord::enumerate(c.alphabet(), bounds.word_len).into_iter().filter(|w| !w.is_empty()).collect();
    for cycle_len in 1..=bounds.cycle_len.max(1) {
        for cycle in tuples(&words, cycle_len) {
            for head_len in 0..=bounds.head_len {
                for head in tuples(&words, head_len) {
                    let rhead = head.iter().map(&rep).collect::<Result<Vec<_>>>()?;
                    let rcycle = cycle.iter().map(&rep).collect::<Result<Vec<_>>>()?;
                    if rhead == head && rcycle == cycle {
                        continue;
                    }
                    let w = Condition2Witness::new(
                        oracle,
                        WordSequence::Periodic { head, cycle: cycle.clone() },
                        WordSequence::Periodic { head: rhead, cycle: rcycle },
                    )
                    .map_err(|e| match e {
                        Error::Unsupported(m) => Error::Unsupported(format!("condition (2) search: {m}")),
                        other => other,
                    })?;
                    if w.original_member != w.replaced_member {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}
