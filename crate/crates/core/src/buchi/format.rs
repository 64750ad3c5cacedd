//! Line-oriented text format:
//!
//! ```text
//! alphabet a b
//! states 2
//! initial 0
//! accepting 1
//! 0 a 1
//! 1 b 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::Alphabet;

use super::BuchiAutomaton;

impl fmt::Display for BuchiAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alphabet")?;
        for c in self.alphabet.letters() {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        writeln!(f, "states {}", self.num_states())?;
        write!(f, "initial")?;
        for q in &self.initial {
            write!(f, " {q}")?;
        }
        writeln!(f)?;
        write!(f, "accepting")?;
        for q in self.accepting_states() {
            write!(f, " {q}")?;
        }
        writeln!(f)?;
        for (p, c, q) in self.transitions() {
            writeln!(f, "{p} {c} {q}")?;
        }
        Ok(())
    }
}

pub(crate) fn parse_state(t: &str) -> Result<usize> {
    t.parse().map_err(|_| Error::parse(format!("bad state id {t:?}")))
}

pub(crate) fn parse_letter(t: &str) -> Result<char> {
    let mut cs = t.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::parse(format!("letter must be a single character: {t:?}"))),
    }
}

/// Header fields shared with the classifier format.
pub(crate) struct Header {
    pub alphabet: Option<Alphabet>,
    pub states: Option<usize>,
}

impl Header {
    pub fn new() -> Self {
        Header { alphabet: None, states: None }
    }

    /// Consumes `alphabet` and `states` lines; returns false for other lines.
    pub fn take(&mut self, key: &str, rest: &[&str]) -> Result<bool> {
        match key {
            "alphabet" => {
                let letters = rest.iter().map(|t| parse_letter(t)).collect::<Result<Vec<_>>>()?;
                self.alphabet = Some(Alphabet::from_letters(letters)?);
                Ok(true)
            }
            "states" => match rest {
                [n] => {
                    self.states = Some(parse_state(n)?);
                    Ok(true)
                }
                _ => Err(Error::parse("`states` takes one number")),
            },
            _ => Ok(false),
        }
    }

    pub fn finish(self) -> Result<(Alphabet, usize)> {
        let alphabet = self.alphabet.ok_or_else(|| Error::parse("missing `alphabet` line"))?;
        let states = self.states.ok_or_else(|| Error::parse("missing `states` line"))?;
        Ok((alphabet, states))
    }
}

pub(crate) fn content_lines(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

impl FromStr for BuchiAutomaton {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut header = Header::new();
        let mut initial = Vec::new();
        let mut accepting = Vec::new();
        let mut transitions = Vec::new();
        for (line_no, toks) in content_lines(s) {
            let ctx = |e: Error| Error::parse(format!("line {line_no}: {e}"));
            let (key, rest) = (toks[0], &toks[1..]);
            if header.take(key, rest).map_err(ctx)? {
                continue;
            }
            match key {
                "initial" => initial.extend(rest.iter().map(|t| parse_state(t)).collect::<Result<Vec<_>>>().map_err(ctx)?),
                "accepting" => {
                    accepting.extend(rest.iter().map(|t| parse_state(t)).collect::<Result<Vec<_>>>().map_err(ctx)?)
                }
                _ => match toks.as_slice() {
                    [p, c, q] => transitions.push((
                        parse_state(p).map_err(ctx)?,
                        parse_letter(c).map_err(ctx)?,
                        parse_state(q).map_err(ctx)?,
                    )),
                    _ => return Err(ctx(Error::parse(format!("unrecognised line {:?}", toks.join(" "))))),
                },
            }
        }
        let (alphabet, states) = header.finish()?;
        BuchiAutomaton::from_parts(alphabet, states, transitions, initial, accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let a = BuchiAutomaton::infinitely_many(Alphabet::new("ab").unwrap(), 'a').unwrap();
        let text = a.to_string();
        assert_eq!(text.parse::<BuchiAutomaton>().unwrap(), a);
        assert!(text.starts_with("alphabet a b\nstates 2\ninitial 0\naccepting 1\n"));
    }

    #[test]
    fn rejects_undeclared_states() {
        let bad = "alphabet a\nstates 1\ninitial 0\naccepting\n0 a 3\n";
        assert!(bad.parse::<BuchiAutomaton>().is_err());
        let missing = "states 1\n";
        assert!(missing.parse::<BuchiAutomaton>().is_err());
    }
}
