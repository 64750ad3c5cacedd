use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracles::LanguageOracle;
use crate::words::{lcm, Alphabet, FiniteWord, UpWord};

use super::{compile_to_buchi, Formula, UpValuation};

/// Language symbols and the oracles that interpret them.
pub type Oracles<'a> = BTreeMap<String, &'a dyn LanguageOracle>;

/// Truth of a formula under a valuation.
///
/// First-order structure is evaluated directly on positions. A quantifier
/// of rank `r` only needs witnesses below `M + Q·(2^r + 1)`, where `M` is
/// past every prefix and assigned position and `Q` is the common period:
/// further right, shifting a witness by `Q` keeps the same marked word up to
/// `2^r` repetitions of the period, which rank `r` cannot count.
///
/// Subformulas with set quantifiers and no language atoms are compiled and
/// run on the coded valuation instead. Language atoms first check that their
/// sets partition the positions.
pub fn evaluate(f: &Formula, val: &UpValuation, oracles: &Oracles) -> Result<bool> {
    let letters = val.word.prefix().letters().iter().chain(val.word.period().letters()).copied().chain(f.letters());
    let base = Alphabet::union_of(letters)?;
    Evaluator { base, oracles }.eval(f, &mut val.clone())
}

struct Evaluator<'a, 'b> {
    base: Alphabet,
    oracles: &'b Oracles<'a>,
}

fn position(val: &UpValuation, x: &str) -> Result<u64> {
    val.positions.get(x).copied().ok_or_else(|| Error::invalid(format!("position variable {x} has no value")))
}

fn set<'v>(val: &'v UpValuation, s: &str) -> Result<&'v UpWord> {
    val.sets.get(s).ok_or_else(|| Error::invalid(format!("set variable {s} has no value")))
}

/// Common prefix length and period of the word and every set.
fn shape(val: &UpValuation) -> (u64, u64) {
    let mut prefix = val.word.prefix().len() as u64;
    let mut period = val.word.period().len() as u64;
    for s in val.sets.values() {
        prefix = prefix.max(s.prefix().len() as u64);
        period = lcm(period, s.period().len() as u64);
    }
    (prefix, period)
}

impl Evaluator<'_, '_> {
    fn eval(&self, f: &Formula, val: &mut UpValuation) -> Result<bool> {
        use Formula::*;
        if f.has_set_quantifiers() && !f.has_lang_atoms() {
            let compiled = compile_to_buchi(f, &self.base)?;
            return compiled.accepts(val);
        }
        Ok(match f {
            True => true,
            False => false,
            Less(x, y) => position(val, x)? < position(val, y)?,
            Equal(x, y) => position(val, x)? == position(val, y)?,
            In(x, s) => set(val, s)?.letter_at(position(val, x)?) == '1',
            Letter(x, c) => val.word.letter_at(position(val, x)?) == *c,
            Lang { symbol, args } => self.lang(symbol, args, val)?,
            Not(g) => !self.eval(g, val)?,
            And(fs) => {
                for g in fs {
                    if !self.eval(g, val)? {
                        return Ok(false);
                    }
                }
                true
            }
            Or(fs) => {
                for g in fs {
                    if self.eval(g, val)? {
                        return Ok(true);
                    }
                }
                false
            }
            Implies(a, b) => !self.eval(a, val)? || self.eval(b, val)?,
            Iff(a, b) => self.eval(a, val)? == self.eval(b, val)?,
            Exists1(x, g) | Forall1(x, g) => {
                let want = matches!(f, Exists1(..));
                if g.has_set_quantifiers() {
                    return Err(Error::unsupported(
                        "a position quantifier over a subformula with both set quantifiers and language atoms",
                    ));
                }
                let (prefix, period) = shape(val);
                let marks = val.positions.values().map(|p| p + 1).max().unwrap_or(0);
                let start = prefix.max(marks);
                let reps = (1u64 << f.position_rank().min(20)) + 1;
                let limit = start + period * reps;
                let saved = val.positions.get(x).copied();
                let mut result = !want;
                for p in 0..limit {
                    val.positions.insert(x.clone(), p);
                    if self.eval(g, val)? == want {
                        result = want;
                        break;
                    }
                }
                match saved {
                    Some(p) => val.positions.insert(x.clone(), p),
                    None => val.positions.remove(x),
                };
                result
            }
            Exists2(..) | Forall2(..) => {
                return Err(Error::unsupported("set quantifier over a subformula with language atoms"));
            }
        })
    }

    fn lang(&self, symbol: &str, args: &[String], val: &UpValuation) -> Result<bool> {
        let oracle = self.oracles.get(symbol).ok_or_else(|| Error::invalid(format!("no oracle for symbol {symbol}")))?;
        let letters = oracle.alphabet().letters();
        if letters.len() != args.len() {
            return Err(Error::invalid(format!("{symbol} takes {} sets, got {}", letters.len(), args.len())));
        }
        let sets: Vec<&UpWord> = args.iter().map(|s| set(val, s)).collect::<Result<_>>()?;
        let mut prefix = 0;
        let mut period = 1;
        for s in &sets {
            prefix = prefix.max(s.prefix().len() as u64);
            period = lcm(period, s.period().len() as u64);
        }
        let mut out = Vec::new();
        for i in 0..prefix + period {
            let owners: Vec<usize> = (0..sets.len()).filter(|&j| sets[j].letter_at(i) == '1').collect();
            if owners.len() != 1 {
                return Ok(false);
            }
            out.push(letters[owners[0]]);
        }
        let tail = out.split_off(prefix as usize);
        oracle.contains_up(&UpWord::new(FiniteWord::new(out), FiniteWord::new(tail))?)
    }
}
