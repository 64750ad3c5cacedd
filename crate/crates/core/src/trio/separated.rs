use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{FiniteWord, EPSILON};

/// A letter or one of the two fresh separators. The second separator is
/// written `%#` in text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    Letter(char),
    Hash,
    RhoHash,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Letter(c) => write!(f, "{c}"),
            Token::Hash => f.write_str("#"),
            Token::RhoHash => f.write_str("%#"),
        }
    }
}

/// Reads letters, `#` and `%#`; `ε` or blank is the empty string.
pub fn parse_tokens(s: &str) -> Result<Vec<Token>> {
    let s = s.trim();
    if s.is_empty() || s == EPSILON {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        out.push(match c {
            '#' => Token::Hash,
            '%' => match chars.next() {
                Some('#') => Token::RhoHash,
                _ => return Err(Error::parse(format!("'%' must be followed by '#' in {s:?}"))),
            },
            c if c.is_whitespace() => return Err(Error::parse(format!("whitespace inside {s:?}"))),
            c => Token::Letter(c),
        });
    }
    Ok(out)
}

pub fn tokens_to_string(ts: &[Token]) -> String {
    if ts.is_empty() {
        return EPSILON.to_string();
    }
    ts.iter().map(ToString::to_string).collect()
}

/// `w₁#⋯#wₙ#v₁ρ#⋯vₘρ#`: every segment closed by its separator and all
/// `#`-segments first. Segments may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeparatedWord {
    pub w: Vec<FiniteWord>,
    pub v: Vec<FiniteWord>,
}

impl SeparatedWord {
    pub fn new(w: Vec<FiniteWord>, v: Vec<FiniteWord>) -> Self {
        SeparatedWord { w, v }
    }

    pub fn from_tokens(ts: &[Token]) -> Result<Self> {
        let mut out = SeparatedWord::default();
        let mut cur = FiniteWord::empty();
        for t in ts {
            match t {
                Token::Letter(c) => cur.push(*c),
                Token::Hash if out.v.is_empty() => out.w.push(std::mem::take(&mut cur)),
                Token::Hash => return Err(Error::parse("'#' after '%#'")),
                Token::RhoHash => out.v.push(std::mem::take(&mut cur)),
            }
        }
        if !cur.is_empty() {
            return Err(Error::parse(format!("trailing letters {cur} after the last separator")));
        }
        Ok(out)
    }

    pub fn to_tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        for (segs, sep) in [(&self.w, Token::Hash), (&self.v, Token::RhoHash)] {
            for s in segs {
                out.extend(s.letters().iter().map(|&c| Token::Letter(c)));
                out.push(sep);
            }
        }
        out
    }

    /// Number of tokens, each separator counting once.
    pub fn len(&self) -> usize {
        self.w.iter().chain(&self.v).map(|s| s.len() + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty() && self.v.is_empty()
    }

    /// Concatenation of the token strings, when it is again separated.
    pub fn concat(&self, other: &SeparatedWord) -> Result<SeparatedWord> {
        let mut ts = self.to_tokens();
        ts.extend(other.to_tokens());
        SeparatedWord::from_tokens(&ts)
    }
}

impl fmt::Display for SeparatedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tokens_to_string(&self.to_tokens()))
    }
}

impl FromStr for SeparatedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeparatedWord::from_tokens(&parse_tokens(s)?)
    }
}

/// Erases every letter, keeping the separators.
pub fn project_to_separators(ts: &[Token]) -> Vec<Token> {
    ts.iter().copied().filter(|t| !matches!(t, Token::Letter(_))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s: SeparatedWord = "a#aa#a%#aa%#".parse().unwrap();
        assert_eq!(s.w, vec!["a".into(), "aa".into()]);
        assert_eq!(s.v, vec!["a".into(), "aa".into()]);
        assert_eq!(s.to_string(), "a#aa#a%#aa%#");
        assert_eq!(s.len(), 10);
        let e: SeparatedWord = "##%#".parse().unwrap();
        assert_eq!(e.w, vec![FiniteWord::empty(); 2]);
        assert_eq!(e.v, vec![FiniteWord::empty()]);
        assert!("a#b".parse::<SeparatedWord>().is_err());
        assert!("a%##".parse::<SeparatedWord>().is_err());
        assert!("a%b#".parse::<SeparatedWord>().is_err());
        assert_eq!("ε".parse::<SeparatedWord>().unwrap(), SeparatedWord::default());
    }

    #[test]
    fn projection() {
        let ts = parse_tokens("a#aa#a%#aa%#").unwrap();
        assert_eq!(tokens_to_string(&project_to_separators(&ts)), "##%#%#");
        assert!(project_to_separators(&[]).is_empty());
    }
}
