use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord};

/// Suffix bound used when a language offers no exact congruence test.
pub const DEFAULT_SUFFIX_BOUND: usize = 8;

/// A decidable language of finite words.
pub trait FiniteLanguage {
    fn name(&self) -> String;

    fn alphabet(&self) -> &Alphabet;

    /// Membership; words with foreign letters are non-members.
    fn contains(&self, w: &FiniteWord) -> bool;

    /// Exact right-congruence test, when the language knows one.
    fn exact_equivalent(&self, u: &FiniteWord, v: &FiniteWord) -> Option<bool> {
        let _ = (u, v);
        None
    }
}

/// Outcome of a right-congruence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub equivalent: bool,
    /// False when only suffixes up to the bound were tried.
    pub exact: bool,
    /// A separating suffix, when one was searched for and found.
    pub witness: Option<FiniteWord>,
}

/// Searches suffixes of length at most `bound` in shortlex order for one
/// that separates `u` from `v`.
pub fn right_congruence_bounded(l: &dyn FiniteLanguage, u: &FiniteWord, v: &FiniteWord, bound: usize) -> Congruence {
    let witness =
        FiniteWord::enumerate(l.alphabet(), bound).into_iter().find(|s| l.contains(&u.concat(s)) != l.contains(&v.concat(s)));
    Congruence { equivalent: witness.is_none(), exact: false, witness }
}

/// The exact test when `l` offers one, otherwise the bounded search.
pub fn right_congruence_finite(l: &dyn FiniteLanguage, u: &FiniteWord, v: &FiniteWord, bound: usize) -> Congruence {
    match l.exact_equivalent(u, v) {
        Some(equivalent) => Congruence { equivalent, exact: true, witness: None },
        None => right_congruence_bounded(l, u, v, bound),
    }
}

/// `{aⁿbⁿ : n ≥ 1}` over `{a,b}`.
#[derive(Clone, Debug)]
pub struct AnBn {
    alphabet: Alphabet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AnBnClass {
    /// `aⁱ`
    Open(usize),
    /// `aⁱbʲ` with `1 ≤ j ≤ i`, keyed by `i − j`.
    Closing(usize),
    Dead,
}

impl AnBn {
    pub fn new() -> Self {
        AnBn { alphabet: Alphabet::new("ab").expect("valid") }
    }

    fn class(w: &FiniteWord) -> AnBnClass {
        let s = w.letters();
        let i = s.iter().take_while(|&&c| c == 'a').count();
        let j = s[i..].iter().take_while(|&&c| c == 'b').count();
        if i + j != s.len() {
            AnBnClass::Dead
        } else if j == 0 {
            AnBnClass::Open(i)
        } else if j <= i {
            AnBnClass::Closing(i - j)
        } else {
            AnBnClass::Dead
        }
    }
}

impl Default for AnBn {
    fn default() -> Self {
        Self::new()
    }
}

impl FiniteLanguage for AnBn {
    fn name(&self) -> String {
        "anbn".into()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &FiniteWord) -> bool {
        AnBn::class(w) == AnBnClass::Closing(0)
    }

    fn exact_equivalent(&self, u: &FiniteWord, v: &FiniteWord) -> Option<bool> {
        Some(AnBn::class(u) == AnBn::class(v))
    }
}

/// A finite set of words.
#[derive(Clone, Debug)]
pub struct FiniteSet {
    alphabet: Alphabet,
    words: BTreeSet<FiniteWord>,
}

impl FiniteSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = FiniteWord>) -> Result<Self> {
        let words: BTreeSet<FiniteWord> = words.into_iter().collect();
        for w in &words {
            w.check_over(&alphabet)?;
        }
        Ok(FiniteSet { alphabet, words })
    }
}

impl FiniteLanguage for FiniteSet {
    fn name(&self) -> String {
        let ws: Vec<String> = self.words.iter().map(ToString::to_string).collect();
        format!("{{{}}}", ws.join(","))
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &FiniteWord) -> bool {
        self.words.contains(w)
    }
}

/// Looks up `anbn` or `set:<w1>,<w2>,...` (alphabet `ab`).
pub fn finite_language_by_name(name: &str) -> Result<Box<dyn FiniteLanguage>> {
    if let Some(list) = name.strip_prefix("set:") {
        let words = list.split(',').map(str::parse).collect::<Result<Vec<FiniteWord>>>()?;
        let letters = words.iter().flat_map(|w| w.letters().to_vec()).chain("ab".chars());
        return Ok(Box::new(FiniteSet::new(Alphabet::union_of(letters)?, words)?));
    }
    match name {
        "anbn" => Ok(Box::new(AnBn::new())),
        other => Err(Error::invalid(format!("unknown finite-word language {other:?}; expected anbn or set:<words>"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FiniteWord {
        s.into()
    }

    #[test]
    fn anbn_membership() {
        let l = AnBn::new();
        assert!(l.contains(&w("ab")) && l.contains(&w("aaabbb")));
        assert!(!l.contains(&w("")) && !l.contains(&w("aab")) && !l.contains(&w("ba")) && !l.contains(&w("abab")));
    }

    #[test]
    fn bounded_search_finds_separators() {
        let l = AnBn::new();
        let c = right_congruence_bounded(&l, &w("a"), &w("aa"), 6);
        assert!(!c.equivalent && !c.exact);
        assert_eq!(c.witness, Some(w("b")));
        assert!(right_congruence_finite(&l, &w("a"), &w("a"), 6).equivalent);
        for k in 0..=5 {
            for m in k + 1..=5 {
                assert!(!right_congruence_bounded(&l, &w("a").repeat(k), &w("a").repeat(m), 6).equivalent);
            }
        }
    }

    #[test]
    fn exact_test_matches_bounded_on_short_words() {
        let l = AnBn::new();
        let words = FiniteWord::enumerate(l.alphabet(), 5);
        for u in &words {
            for v in &words {
                let exact = right_congruence_finite(&l, u, v, 0);
                assert!(exact.exact);
                // Classes of words up to length 5 separate within 6 letters.
                assert_eq!(exact.equivalent, right_congruence_bounded(&l, u, v, 6).equivalent, "{u} {v}");
            }
        }
    }

    #[test]
    fn registry() {
        assert_eq!(finite_language_by_name("anbn").unwrap().name(), "anbn");
        let s = finite_language_by_name("set:aa").unwrap();
        assert!(s.contains(&w("aa")) && !s.contains(&w("a")));
        assert!(finite_language_by_name("nope").is_err());
    }
}
