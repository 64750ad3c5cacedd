use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered, nonempty set of distinct letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    /// Builds an alphabet from the letters of `letters`, sorted. Duplicates are rejected.
    pub fn new(letters: impl AsRef<str>) -> Result<Self> {
        Self::from_letters(letters.as_ref().chars())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut v: Vec<char> = letters.into_iter().collect();
        v.sort_unstable();
        let n = v.len();
        v.dedup();
        if v.len() != n {
            return Err(Error::invalid("alphabet has duplicate letters"));
        }
        if v.is_empty() {
            return Err(Error::invalid("alphabet is empty"));
        }
        Ok(Alphabet(v))
    }

    /// Like [`Alphabet::from_letters`] but silently merges duplicates.
    pub fn union_of(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut v: Vec<char> = letters.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::from_letters(v)
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

    pub fn contains(&self, c: char) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.binary_search(&c).ok()
    }

    pub fn letter(&self, i: usize) -> char {
        self.0[i]
    }

    pub fn index_or_err(&self, c: char) -> Result<usize> {
        self.index_of(c).ok_or_else(|| Error::AlphabetMismatch { letter: c, alphabet: self.to_string() })
    }

    pub fn check_letters(&self, letters: &[char]) -> Result<()> {
        for &c in letters {
            self.index_or_err(c)?;
        }
        Ok(())
    }

    pub fn without(&self, c: char) -> Result<Alphabet> {
        Alphabet::from_letters(self.0.iter().copied().filter(|&x| x != c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `ab1`, `a,b,1` and `{a,b,1}`.
impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        Alphabet::from_letters(s.chars().filter(|c| *c != ',' && !c.is_whitespace()))
    }
}

impl TryFrom<String> for Alphabet {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Alphabet> for String {
    fn from(a: Alphabet) -> String {
        a.0.iter().collect()
    }
}
