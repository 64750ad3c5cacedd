use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::FiniteWord;

/// The ω-word `prefix · period^ω`. The period is never empty.
///
/// Presentations are kept as given; [`UpWord::canonical`] computes the
/// shortest one on demand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpWord {
    prefix: FiniteWord,
    period: FiniteWord,
}

impl UpWord {
    pub fn new(prefix: FiniteWord, period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("period of a lasso word must be nonempty"));
        }
        Ok(UpWord { prefix, period })
    }

    /// Convenience constructor for literals; panics on an empty period.
    pub fn lit(prefix: &str, period: &str) -> Self {
        UpWord::new(prefix.into(), period.into()).expect("nonempty period")
    }

    pub fn prefix(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    /// Number of letters in the presentation.
    pub fn size(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn letter_at(&self, i: u64) -> char {
        let p = self.prefix.len() as u64;
        if i < p {
            self.prefix.letters()[i as usize]
        } else {
            let q = self.period.len() as u64;
            self.period.letters()[((i - p) % q) as usize]
        }
    }

    /// Semantic equality of the denoted ω-words.
    ///
    /// Beyond the longer prefix both words are periodic, so agreement on a
    /// window of `lcm` of the period lengths settles it.
    pub fn up_equal(&self, other: &UpWord) -> bool {
        let start = self.prefix.len().max(other.prefix.len()) as u64;
        let window = lcm(self.period.len() as u64, other.period.len() as u64);
        (0..start + window).all(|i| self.letter_at(i) == other.letter_at(i))
    }

    /// `w · self`.
    pub fn prepend(&self, w: &FiniteWord) -> UpWord {
        UpWord { prefix: w.concat(&self.prefix), period: self.period.clone() }
    }

    /// Shortest period (the primitive root) and shortest prefix.
    pub fn canonical(&self) -> UpWord {
        let root = primitive_root(self.period.letters());
        let mut prefix = self.prefix.letters().to_vec();
        let mut period = root;
        // Roll the period back into the prefix while the last letters agree.
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        UpWord { prefix: FiniteWord::new(prefix), period: FiniteWord::new(period) }
    }

    /// Every presentation with `|prefix| ≤ max_prefix` and
    /// `1 ≤ |period| ≤ max_period`, prefixes and periods in shortlex order.
    pub fn enumerate(alphabet: &super::Alphabet, max_prefix: usize, max_period: usize) -> Vec<UpWord> {
        let prefixes = FiniteWord::enumerate(alphabet, max_prefix);
        let periods = FiniteWord::enumerate(alphabet, max_period);
        let mut out = Vec::new();
        for u in &prefixes {
            for v in periods.iter().filter(|v| !v.is_empty()) {
                out.push(UpWord { prefix: u.clone(), period: v.clone() });
            }
        }
        out
    }

    /// The first `n` letters.
    pub fn take(&self, n: usize) -> FiniteWord {
        (0..n as u64).map(|i| self.letter_at(i)).collect()
    }
}

/// `w · x`, the concatenation of a finite word with a lasso word.
pub fn concat(w: &FiniteWord, x: &UpWord) -> UpWord {
    x.prepend(w)
}

/// Presents `h₁ h₂ ⋯ (c₁ c₂ ⋯)^ω` as a lasso word.
pub fn omega_product(head: &[FiniteWord], cycle: &[FiniteWord]) -> Result<UpWord> {
    let prefix: FiniteWord = head.iter().flat_map(|w| w.letters().iter().copied()).collect();
    let period: FiniteWord = cycle.iter().flat_map(|w| w.letters().iter().copied()).collect();
    if period.is_empty() {
        return Err(Error::invalid("cycle of an ω-product concatenates to the empty word"));
    }
    UpWord::new(prefix, period)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The shortest `r` with `w = r^k`.
pub(crate) fn primitive_root(w: &[char]) -> Vec<char> {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]) {
            return w[..d].to_vec();
        }
    }
    w.to_vec()
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{}", self.prefix)?;
        }
        write!(f, "({})^w", self.period)
    }
}

impl fmt::Debug for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for UpWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_suffix(")^w")
            .or_else(|| s.strip_suffix(")^ω"))
            .ok_or_else(|| Error::parse(format!("lasso word must end in `)^w`: {s:?}")))?;
        let open = body.rfind('(').ok_or_else(|| Error::parse(format!("missing `(` in {s:?}")))?;
        let prefix: FiniteWord = body[..open].parse()?;
        let period: FiniteWord = body[open + 1..].parse()?;
        UpWord::new(prefix, period)
    }
}
