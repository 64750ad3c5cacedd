use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{FiniteWord, UpWord};

/// Symbolic block-length sequence `k₁, k₂, …` (indexed from 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lengths {
    /// `k_n = c`
    Constant(u64),
    /// `k_n = slope·n + offset`, with `slope ≥ 1`.
    Affine { slope: u64, offset: u64 },
    /// `head` followed by `cycle` repeated forever.
    EventuallyPeriodic { head: Vec<u64>, cycle: Vec<u64> },
}

impl Lengths {
    pub fn affine(slope: u64, offset: u64) -> Result<Self> {
        if slope == 0 {
            return Err(Error::invalid("affine lengths with slope 0 must be written as a constant"));
        }
        Ok(Lengths::Affine { slope, offset })
    }

    pub fn periodic(head: Vec<u64>, cycle: Vec<u64>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::invalid("eventually periodic lengths need a nonempty cycle"));
        }
        Ok(Lengths::EventuallyPeriodic { head, cycle })
    }

    /// `k_n` for `n ≥ 1`.
    pub fn get(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        match self {
            Lengths::Constant(c) => *c,
            Lengths::Affine { slope, offset } => slope * n + offset,
            Lengths::EventuallyPeriodic { head, cycle } => {
                let i = (n - 1) as usize;
                if i < head.len() {
                    head[i]
                } else {
                    cycle[(i - head.len()) % cycle.len()]
                }
            }
        }
    }

    /// `limsup k_n = ∞`, which holds exactly for the affine case.
    pub fn is_unbounded(&self) -> bool {
        matches!(self, Lengths::Affine { .. })
    }
}

/// The ω-word `x^{k₁} y x^{k₂} y ⋯` with block letter `x` and separator `y`.
/// It always has infinitely many separators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockWord {
    block: char,
    sep: char,
    lengths: Lengths,
}

impl BlockWord {
    pub fn new(block: char, sep: char, lengths: Lengths) -> Result<Self> {
        if block == sep {
            return Err(Error::invalid("block letter and separator must differ"));
        }
        if let Lengths::Affine { slope: 0, .. } = lengths {
            return Err(Error::invalid("affine lengths with slope 0 must be written as a constant"));
        }
        if let Lengths::EventuallyPeriodic { cycle, .. } = &lengths {
            if cycle.is_empty() {
                return Err(Error::invalid("eventually periodic lengths need a nonempty cycle"));
            }
        }
        Ok(BlockWord { block, sep, lengths })
    }

    pub fn block_letter(&self) -> char {
        self.block
    }

    pub fn separator(&self) -> char {
        self.sep
    }

    pub fn lengths(&self) -> &Lengths {
        &self.lengths
    }

    pub fn with_letters(&self, block: char, sep: char) -> Result<BlockWord> {
        BlockWord::new(block, sep, self.lengths.clone())
    }

    fn segment(&self, k: u64) -> FiniteWord {
        let mut w: FiniteWord = std::iter::repeat_n(self.block, k as usize).collect();
        w.push(self.sep);
        w
    }

    /// The same word as a lasso, unless the lengths are affine.
    pub fn to_up(&self) -> Option<UpWord> {
        match &self.lengths {
            Lengths::Constant(c) => UpWord::new(FiniteWord::empty(), self.segment(*c)).ok(),
            Lengths::EventuallyPeriodic { head, cycle } => {
                let prefix = head.iter().fold(FiniteWord::empty(), |acc, &k| acc.concat(&self.segment(k)));
                let period = cycle.iter().fold(FiniteWord::empty(), |acc, &k| acc.concat(&self.segment(k)));
                UpWord::new(prefix, period).ok()
            }
            Lengths::Affine { .. } => None,
        }
    }

    /// Total length of the first `n` segments (blocks plus separators).
    fn segments_len(&self, n: u64) -> u128 {
        match &self.lengths {
            Lengths::Constant(c) => n as u128 * (*c as u128 + 1),
            Lengths::Affine { slope, offset } => {
                let n = n as u128;
                *slope as u128 * n * (n + 1) / 2 + (*offset as u128 + 1) * n
            }
            Lengths::EventuallyPeriodic { head, cycle } => {
                let mut total = 0u128;
                let n_head = (n as usize).min(head.len());
                total += head[..n_head].iter().map(|&k| k as u128 + 1).sum::<u128>();
                let rest = n as usize - n_head;
                if rest > 0 {
                    let cyc: u128 = cycle.iter().map(|&k| k as u128 + 1).sum();
                    total += (rest / cycle.len()) as u128 * cyc;
                    total += cycle[..rest % cycle.len()].iter().map(|&k| k as u128 + 1).sum::<u128>();
                }
                total
            }
        }
    }

    /// Start position of segment `n` (1-based) together with its block length.
    pub fn segment_at(&self, i: u64) -> (u64, u64, u64) {
        let target = i as u128;
        // Smallest n with segments_len(n) > i.
        let (mut lo, mut hi) = (1u64, 1u64);
        while self.segments_len(hi) <= target {
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.segments_len(mid) > target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let n = lo;
        let start = self.segments_len(n - 1) as u64;
        (n, start, self.lengths.get(n))
    }

    pub fn letter_at(&self, i: u64) -> char {
        let (_, start, k) = self.segment_at(i);
        if i - start < k {
            self.block
        } else {
            self.sep
        }
    }
}

impl fmt::Display for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "blocks({},{};", self.block, self.sep)?;
        match &self.lengths {
            Lengths::Constant(c) => write!(f, "const {c}")?,
            Lengths::Affine { slope, offset } => write!(f, "affine {slope} {offset}")?,
            Lengths::EventuallyPeriodic { head, cycle } => {
                write!(f, "periodic")?;
                for k in head {
                    write!(f, " {k}")?;
                }
                write!(f, " |")?;
                for k in cycle {
                    write!(f, " {k}")?;
                }
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_nums(s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::parse(format!("bad block length {t:?}: {e}"))))
        .collect()
}

impl FromStr for BlockWord {
    type Err = Error;

    /// `blocks(a,b;const 3)`, `blocks(a,b;affine 1 0)`, `blocks(a,b;periodic 1 2 | 3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("blocks(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("expected blocks(x,y;...): {s:?}")))?;
        let (letters, spec) =
            inner.split_once(';').ok_or_else(|| Error::parse(format!("missing `;` in {s:?}")))?;
        let mut it = letters.split(',').map(str::trim);
        let mut one = |what: &str| -> Result<char> {
            let t = it.next().ok_or_else(|| Error::parse(format!("missing {what} letter")))?;
            let mut cs = t.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::parse(format!("{what} letter must be one character: {t:?}"))),
            }
        };
        let block = one("block")?;
        let sep = one("separator")?;
        let spec = spec.trim();
        let (kind, rest) = spec.split_once(' ').unwrap_or((spec, ""));
        let lengths = match kind {
            "const" => match parse_nums(rest)?.as_slice() {
                [c] => Lengths::Constant(*c),
                _ => return Err(Error::parse("const takes one number")),
            },
            "affine" => match parse_nums(rest)?.as_slice() {
                [a, b] => Lengths::affine(*a, *b)?,
                _ => return Err(Error::parse("affine takes two numbers")),
            },
            "periodic" => {
                let (h, c) = rest.split_once('|').ok_or_else(|| Error::parse("periodic needs `head | cycle`"))?;
                Lengths::periodic(parse_nums(h)?, parse_nums(c)?)?
            }
            other => return Err(Error::parse(format!("unknown length kind {other:?}"))),
        };
        BlockWord::new(block, sep, lengths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_letters(b: &BlockWord, n: usize) -> String {
        let mut out = String::new();
        let mut k = 1;
        while out.len() < n {
            for _ in 0..b.lengths.get(k) {
                out.push(b.block);
            }
            out.push(b.sep);
            k += 1;
        }
        out.truncate(n);
        out
    }

    #[test]
    fn letter_at_matches_expansion() {
        for s in [
            "blocks(a,b;affine 1 0)",
            "blocks(a,b;affine 2 3)",
            "blocks(a,b;const 0)",
            "blocks(a,b;const 3)",
            "blocks(x,y;periodic 0 4 | 1 0 2)",
        ] {
            let b: BlockWord = s.parse().unwrap();
            let expected = brute_letters(&b, 300);
            let got: String = (0..300).map(|i| b.letter_at(i)).collect();
            assert_eq!(got, expected, "{s}");
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["blocks(a,b;affine 1 0)", "blocks(a,b;const 3)", "blocks(a,b;periodic 1 2 | 3 4)", "blocks(a,b;periodic | 5)"] {
            let b: BlockWord = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
    }

    #[test]
    fn invariants_enforced() {
        assert!("blocks(a,a;const 1)".parse::<BlockWord>().is_err());
        assert!("blocks(a,b;affine 0 3)".parse::<BlockWord>().is_err());
        assert!("blocks(a,b;periodic 1 |)".parse::<BlockWord>().is_err());
    }

    #[test]
    fn periodic_lengths_become_lasso() {
        let b: BlockWord = "blocks(a,b;const 2)".parse().unwrap();
        assert_eq!(b.to_up().unwrap(), UpWord::lit("", "aab"));
        let b: BlockWord = "blocks(a,b;periodic 1 | 0 2)".parse().unwrap();
        let up = b.to_up().unwrap();
        assert_eq!(up, UpWord::lit("ab", "baab"));
        for i in 0..50 {
            assert_eq!(b.letter_at(i), up.letter_at(i));
        }
        assert!("blocks(a,b;affine 1 0)".parse::<BlockWord>().unwrap().to_up().is_none());
    }
}
