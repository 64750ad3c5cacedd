use std::collections::{HashMap, VecDeque};

use crate::congruence::{Classifier, Condition2Witness, WordSequence};
use crate::error::{Error, Result};
use crate::words::{FiniteWord, Lengths};

use super::LanguageOracle;

/// Violation for languages that hold for `x¹y x²y x³y ⋯` but for no lasso
/// word with `y` in its period.
///
/// The sequence is `uᵢ = xⁱy`. Each `uᵢ` is replaced by the shortlex-least
/// word of its class that contains `y`. The state after `xⁱ` is eventually
/// periodic in `i`, and so is the replacement sequence. Its product is a
/// lasso word with `y` in the period.
pub fn block_growth_violation(
    oracle: &dyn LanguageOracle,
    c: &Classifier,
    block: char,
    sep: char,
) -> Result<Condition2Witness> {
    if c.alphabet() != oracle.alphabet() {
        return Err(Error::AlphabetsDiffer { left: c.alphabet().to_string(), right: oracle.alphabet().to_string() });
    }
    let x = c.alphabet().index_or_err(block)?;
    let y = c.alphabet().index_or_err(sep)?;

    // States after x⁰, x¹, … up to the first repetition.
    let mut states = vec![c.initial()];
    let mut first_seen = HashMap::from([(c.initial(), 0usize)]);
    let (entry, period) = loop {
        let next = c.step(*states.last().expect("nonempty"), x);
        if let Some(&i) = first_seen.get(&next) {
            break (i, states.len() - i);
        }
        first_seen.insert(next, states.len());
        states.push(next);
    };
    let state_at = |i: usize| if i < entry { states[i] } else { states[entry + (i - entry) % period] };

    let reps = representatives_containing(c, y);
    let replacement = |i: usize| -> FiniteWord {
        let class = c.class_of_state(c.step(state_at(i), y));
        reps.get(&class).cloned().expect("uᵢ itself contains the separator")
    };
    let start = entry.max(1);
    let head: Vec<FiniteWord> = (1..start).map(replacement).collect();
    let cycle: Vec<FiniteWord> = (start..start + period).map(replacement).collect();

    let original = WordSequence::Blocks { block, sep, lengths: Lengths::Affine { slope: 1, offset: 0 } };
    let witness = Condition2Witness::new(oracle, original, WordSequence::Periodic { head, cycle })?;
    if witness.original_member == witness.replaced_member {
        return Err(Error::invalid(format!(
            "oracle {} does not separate growing blocks from their replacement",
            oracle.name()
        )));
    }
    Ok(witness)
}

/// Shortlex-least word containing letter `y` for every class that has one.
fn representatives_containing(c: &Classifier, y: usize) -> HashMap<usize, FiniteWord> {
    let k = c.alphabet().len();
    let n = c.num_states();
    let mut seen = vec![[false; 2]; n];
    let mut out = HashMap::new();
    let mut queue = VecDeque::from([(c.initial(), false, FiniteWord::empty())]);
    seen[c.initial()][0] = true;
    while let Some((q, has_y, w)) = queue.pop_front() {
        if has_y {
            out.entry(c.class_of_state(q)).or_insert_with(|| w.clone());
        }
        for ci in 0..k {
            let t = c.step(q, ci);
            let h = has_y || ci == y;
            if !seen[t][h as usize] {
                seen[t][h as usize] = true;
                let mut x = w.clone();
                x.push(c.alphabet().letter(ci));
                queue.push_back((t, h, x));
            }
        }
    }
    out
}
