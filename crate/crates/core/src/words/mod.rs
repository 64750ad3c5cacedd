//! Alphabets, finite words and the two finitely presented classes of
//! ω-words: lasso words `u·v^ω` ([`UpWord`]) and symbolic block words
//! `x^{k₁} y x^{k₂} y ⋯` ([`BlockWord`]).
//!
//! Text syntax, used by the CLI and by test fixtures:
//!
//! | kind   | example                    |
//! |--------|----------------------------|
//! | finite | `ab1a`, `ε`                |
//! | lasso  | `ab(ba)^w`, `(a)^w`        |
//! | blocks | `blocks(a,b;affine 1 0)`   |
//!
//! Parsing is exact and `Display` round-trips.

mod alphabet;
mod block;
mod hom;
mod up;

pub use alphabet::Alphabet;
pub use block::{BlockWord, Lengths};
pub use hom::{HomImage, Homomorphism};
pub use up::{concat, omega_product, UpWord};
pub(crate) use up::{lcm, primitive_root};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Textual placeholder for the empty word.
pub const EPSILON: &str = "ε";

/// A finite word. Words do not carry an alphabet; membership of letters in an
/// alphabet is checked at automaton and oracle boundaries.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(Vec<char>);

impl FiniteWord {
    pub fn new(letters: Vec<char>) -> Self {
        FiniteWord(letters)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    pub fn repeat(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0.repeat(n))
    }

    pub fn push(&mut self, c: char) {
        self.0.push(c);
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.contains(&c)
    }

    /// Checks every letter against `alphabet`.
    pub fn check_over(&self, alphabet: &Alphabet) -> Result<()> {
        alphabet.check_letters(&self.0)
    }

    /// Shortlex order: shorter words first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &FiniteWord) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Every word over `alphabet` of length at most `max_len`, in shortlex order.
    pub fn enumerate(alphabet: &Alphabet, max_len: usize) -> Vec<FiniteWord> {
        let mut out = vec![FiniteWord::empty()];
        let mut layer = vec![FiniteWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for w in &layer {
                for &c in alphabet.letters() {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Removes every occurrence of `letter`.
    pub fn erase(&self, letter: char) -> FiniteWord {
        FiniteWord(self.0.iter().copied().filter(|&c| c != letter).collect())
    }
}

impl From<&str> for FiniteWord {
    fn from(s: &str) -> Self {
        if s == EPSILON {
            FiniteWord::empty()
        } else {
            FiniteWord(s.chars().collect())
        }
    }
}

impl FromIterator<char> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        FiniteWord(iter.into_iter().collect())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EPSILON);
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

const RESERVED: &[char] = &['(', ')', '^', ';', ',', ' ', '\t', '\n'];

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == EPSILON || s == "eps" {
            return Ok(FiniteWord::empty());
        }
        if let Some(c) = s.chars().find(|c| RESERVED.contains(c)) {
            return Err(Error::parse(format!("reserved character {c:?} in finite word {s:?}")));
        }
        Ok(FiniteWord(s.chars().collect()))
    }
}

/// An ω-word in one of the two supported presentations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum OmegaWord {
    Up(UpWord),
    Block(BlockWord),
}

impl OmegaWord {
    pub fn letter_at(&self, i: u64) -> char {
        match self {
            OmegaWord::Up(w) => w.letter_at(i),
            OmegaWord::Block(w) => w.letter_at(i),
        }
    }

    /// The same word as a lasso, when it is ultimately periodic.
    pub fn to_up(&self) -> Option<UpWord> {
        match self {
            OmegaWord::Up(w) => Some(w.clone()),
            OmegaWord::Block(b) => b.to_up(),
        }
    }

    pub fn letters(&self) -> Vec<char> {
        match self {
            OmegaWord::Up(w) => {
                let mut v: Vec<char> = w.prefix().letters().iter().chain(w.period().letters()).copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            OmegaWord::Block(b) => {
                let mut v = vec![b.block_letter(), b.separator()];
                v.sort_unstable();
                v
            }
        }
    }

    /// First interval `[p, p+min_len)` with `p ≥ from` in which every letter
    /// equals `letter`. Gives up after scanning `budget` positions, or as soon
    /// as periodicity proves no such interval exists.
    pub fn find_run(&self, letter: char, from: u64, min_len: u64, budget: u64) -> Option<u64> {
        if min_len == 0 {
            return Some(from);
        }
        // For a lasso, every run pattern shows up within one period after the
        // prefix, so a window of prefix + 2·period + min_len is exhaustive.
        let proof_limit = self.to_up().map(|w| {
            if w.period().letters().iter().all(|&c| c == letter) {
                u64::MAX
            } else {
                from.max(w.prefix().len() as u64) + 2 * w.period().len() as u64 + min_len
            }
        });
        let mut run_start = from;
        let mut run_len = 0u64;
        let mut p = from;
        let mut scanned = 0u64;
        while scanned < budget {
            if let Some(limit) = proof_limit {
                if p > limit {
                    return None;
                }
            }
            if self.letter_at(p) == letter {
                if run_len == 0 {
                    run_start = p;
                }
                run_len += 1;
                if run_len >= min_len {
                    return Some(run_start);
                }
            } else {
                run_len = 0;
            }
            p += 1;
            scanned += 1;
        }
        None
    }
}

impl From<UpWord> for OmegaWord {
    fn from(w: UpWord) -> Self {
        OmegaWord::Up(w)
    }
}

impl From<BlockWord> for OmegaWord {
    fn from(w: BlockWord) -> Self {
        OmegaWord::Block(w)
    }
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaWord::Up(w) => w.fmt(f),
            OmegaWord::Block(w) => w.fmt(f),
        }
    }
}

impl fmt::Debug for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for OmegaWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("blocks(") {
            Ok(OmegaWord::Block(s.parse()?))
        } else {
            Ok(OmegaWord::Up(s.parse()?))
        }
    }
}

macro_rules! serde_via_text {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_via_text!(FiniteWord, UpWord, BlockWord, OmegaWord);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_word_text() {
        let w: FiniteWord = "ab1a".parse().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "ab1a");
        assert_eq!("ε".parse::<FiniteWord>().unwrap(), FiniteWord::empty());
        assert_eq!(FiniteWord::empty().to_string(), "ε");
        assert!("a(b".parse::<FiniteWord>().is_err());
    }

    #[test]
    fn enumerate_is_shortlex() {
        let ab = Alphabet::new("ab").unwrap();
        let words = FiniteWord::enumerate(&ab, 2);
        let text: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(text, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn omega_word_dispatch() {
        let w: OmegaWord = "blocks(a,b;affine 1 0)".parse().unwrap();
        assert!(matches!(w, OmegaWord::Block(_)));
        assert_eq!(w.letter_at(0), 'a');
        assert_eq!(w.letter_at(1), 'b');
        let u: OmegaWord = "a(ba)^w".parse().unwrap();
        assert_eq!(u.letter_at(2), 'a');
    }

    #[test]
    fn find_run_on_lasso_and_blocks() {
        let w: OmegaWord = "(ab)^w".parse().unwrap();
        assert_eq!(w.find_run('a', 0, 1, 1000), Some(0));
        assert_eq!(w.find_run('a', 0, 2, 1_000_000), None);
        let g: OmegaWord = "blocks(a,b;affine 1 0)".parse().unwrap();
        // a b aa b aaa b: the first run of three a's starts at position 5.
        assert_eq!(g.find_run('a', 0, 3, 1000), Some(5));
        let tail: OmegaWord = "b(a)^w".parse().unwrap();
        assert_eq!(tail.find_run('a', 0, 50, 1000), Some(1));
    }
}
