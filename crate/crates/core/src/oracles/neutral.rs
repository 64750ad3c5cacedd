use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{FiniteWord, UpWord};

use super::LanguageOracle;

/// Two words differing only in neutral letters, with different verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeutralCounterexample {
    pub original: UpWord,
    pub modified: UpWord,
    pub original_member: bool,
    pub modified_member: bool,
}

fn insert_at(w: &FiniteWord, pos: usize, c: char) -> FiniteWord {
    let mut v = w.letters().to_vec();
    v.insert(pos, c);
    FiniteWord::new(v)
}

/// Samples lasso words (period with at least one non-neutral letter) and
/// compares each against three variants: a neutral letter inserted into the
/// prefix (finitely many insertions), one inserted into the period
/// (infinitely many), and every neutral letter deleted from the prefix.
pub fn neutral_letter_property_test(
    oracle: &dyn LanguageOracle,
    samples: usize,
    seed: u64,
) -> Result<Option<NeutralCounterexample>> {
    let neutral = oracle
        .neutral_letter()
        .ok_or_else(|| Error::invalid(format!("oracle {} has no neutral letter", oracle.name())))?;
    let letters = oracle.alphabet().letters().to_vec();
    let others: Vec<char> = letters.iter().copied().filter(|&c| c != neutral).collect();
    if others.is_empty() {
        return Err(Error::invalid("alphabet has only the neutral letter"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_word = |rng: &mut ChaCha8Rng, len: usize| -> FiniteWord {
        (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
    };
    for _ in 0..samples {
        let plen = rng.gen_range(0..=4);
        let prefix = random_word(&mut rng, plen);
        let qlen = rng.gen_range(1..=4);
        let mut period = random_word(&mut rng, qlen);
        if period.letters().iter().all(|&c| c == neutral) {
            let pos = rng.gen_range(0..period.len());
            let mut v = period.letters().to_vec();
            v[pos] = others[rng.gen_range(0..others.len())];
            period = FiniteWord::new(v);
        }
        let original = UpWord::new(prefix.clone(), period.clone())?;
        let variants = [
            UpWord::new(insert_at(&prefix, rng.gen_range(0..=prefix.len()), neutral), period.clone())?,
            UpWord::new(prefix.clone(), insert_at(&period, rng.gen_range(0..=period.len()), neutral))?,
            UpWord::new(prefix.erase(neutral), period.clone())?,
        ];
        let base = oracle.contains_up(&original)?;
        for modified in variants {
            let m = oracle.contains_up(&modified)?;
            if m != base {
                return Ok(Some(NeutralCounterexample {
                    original,
                    modified,
                    original_member: base,
                    modified_member: m,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::UnboundedNeutral;
    use crate::words::Alphabet;

    /// Reads the letter at position 1, neutral letters included.
    struct PositionReader(Alphabet);

    impl LanguageOracle for PositionReader {
        fn name(&self) -> String {
            "position-reader".into()
        }
        fn alphabet(&self) -> &Alphabet {
            &self.0
        }
        fn neutral_letter(&self) -> Option<char> {
            Some('1')
        }
        fn decide_up(&self, w: &UpWord) -> Result<bool> {
            Ok(w.letter_at(1) == 'a')
        }
    }

    #[test]
    fn u_prime_passes() {
        assert_eq!(neutral_letter_property_test(&UnboundedNeutral::new(), 100, 0).unwrap(), None);
        let o = UnboundedNeutral::new();
        assert_eq!(o.contains_up(&UpWord::lit("", "ab")).unwrap(), o.contains_up(&UpWord::lit("", "a1b")).unwrap());
    }

    #[test]
    fn broken_oracle_is_caught() {
        let broken = PositionReader(Alphabet::new("ab1").unwrap());
        let cex = neutral_letter_property_test(&broken, 100, 0).unwrap().expect("counterexample");
        assert_ne!(cex.original_member, cex.modified_member);
    }
}
