//! Languages of finite words: rational transducers, right congruences and
//! the separator languages built from a non-regular language.

mod language;
mod looprep;
mod separated;
mod transducer;

pub use language::{
    finite_language_by_name, right_congruence_bounded, right_congruence_finite, AnBn, Congruence, FiniteLanguage, FiniteSet,
    DEFAULT_SUFFIX_BOUND,
};
pub use looprep::{loop_representation, LoopRepresentation, DEFAULT_POWER_BOUND};
pub use separated::{parse_tokens, project_to_separators, tokens_to_string, SeparatedWord, Token};
pub use transducer::{RationalTransducer, TransducerEdge, TransducerImage};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::FiniteWord;

/// A membership verdict that records whether every congruence test was exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrioVerdict {
    pub member: bool,
    pub exact: bool,
}

struct Tester<'a> {
    l: &'a dyn FiniteLanguage,
    bound: usize,
    exact: bool,
}

impl Tester<'_> {
    fn eq(&mut self, u: &FiniteWord, v: &FiniteWord) -> bool {
        let c = right_congruence_finite(self.l, u, v, self.bound);
        self.exact &= c.exact;
        c.equivalent
    }

    fn pairwise_distinct(&mut self, segs: &[FiniteWord]) -> bool {
        (0..segs.len()).all(|i| (i + 1..segs.len()).all(|j| !self.eq(&segs[i], &segs[j])))
    }
}

/// `u#u′` with `u ∼ u′`.
pub fn member_l1(l: &dyn FiniteLanguage, s: &[Token], bound: usize) -> Result<TrioVerdict> {
    if s.contains(&Token::RhoHash) {
        return Err(Error::invalid("L1 words use only '#'"));
    }
    let hashes = s.iter().filter(|&&t| t == Token::Hash).count();
    if hashes != 1 {
        return Err(Error::invalid(format!("L1 words contain exactly one '#', found {hashes}")));
    }
    let cut = s.iter().position(|&t| t == Token::Hash).expect("one separator");
    let seg = |ts: &[Token]| -> FiniteWord {
        ts.iter().map(|t| if let Token::Letter(c) = t { *c } else { unreachable!("letters only") }).collect()
    };
    let c = right_congruence_finite(l, &seg(&s[..cut]), &seg(&s[cut + 1..]), bound);
    Ok(TrioVerdict { member: c.equivalent, exact: c.exact })
}

/// Membership in the language of separated words with
/// `w₁ ∼ v₁`, `wₙ ∼ vₘ`, the `wᵢ` pairwise inequivalent, the `vⱼ` pairwise
/// inequivalent, and `wᵢ ∼ vⱼ ⇒ wᵢ₊₁ ∼ vⱼ₊₁`.
pub fn member_l2(l: &dyn FiniteLanguage, s: &SeparatedWord, bound: usize) -> TrioVerdict {
    let mut t = Tester { l, bound, exact: true };
    let member = l2_conditions(&mut t, &s.w, &s.v);
    TrioVerdict { member, exact: t.exact }
}

fn l2_conditions(t: &mut Tester, w: &[FiniteWord], v: &[FiniteWord]) -> bool {
    let (n, m) = (w.len(), v.len());
    if n == 0 || m == 0 {
        return false;
    }
    t.eq(&w[0], &v[0])
        && t.eq(&w[n - 1], &v[m - 1])
        && t.pairwise_distinct(w)
        && t.pairwise_distinct(v)
        && (0..n - 1).all(|i| (0..m - 1).all(|j| !t.eq(&w[i], &v[j]) || t.eq(&w[i + 1], &v[j + 1])))
}

/// Calls `visit` on every member of the separator language with at most
/// `max_len` tokens.
///
/// Segment lists are built left to right. A partial list that already breaks
/// a condition fixed by its completed segments (pairwise inequivalence,
/// `w₁ ∼ v₁`, the implication for the last two segments) has no member among
/// its extensions and is cut. Returns the number of lists visited.
pub fn for_each_l2_member(
    l: &dyn FiniteLanguage,
    max_len: usize,
    bound: usize,
    mut visit: impl FnMut(&SeparatedWord, TrioVerdict),
) -> usize {
    let words = FiniteWord::enumerate(l.alphabet(), max_len.saturating_sub(1));
    let mut t = Tester { l, bound, exact: true };
    let mut state = SeparatedWord::default();
    let mut visited = 0;
    grow_w(&mut t, &words, max_len, &mut state, &mut visit, &mut visited);
    visited
}

type Visit<'v> = dyn FnMut(&SeparatedWord, TrioVerdict) + 'v;

fn grow_w(t: &mut Tester, words: &[FiniteWord], budget: usize, s: &mut SeparatedWord, visit: &mut Visit, visited: &mut usize) {
    for u in words.iter().take_while(|u| u.len() < budget) {
        if s.w.iter().any(|x| t.eq(x, u)) {
            continue;
        }
        *visited += 1;
        s.w.push(u.clone());
        let rest = budget - u.len() - 1;
        grow_w(t, words, rest, s, visit, visited);
        grow_v(t, words, rest, s, visit, visited);
        s.w.pop();
    }
}

fn grow_v(t: &mut Tester, words: &[FiniteWord], budget: usize, s: &mut SeparatedWord, visit: &mut Visit, visited: &mut usize) {
    for u in words.iter().take_while(|u| u.len() < budget) {
        let j = s.v.len();
        let keeps = if j == 0 {
            t.eq(&s.w[0], u)
        } else {
            s.v.iter().all(|x| !t.eq(x, u))
                && (0..s.w.len() - 1).all(|i| !t.eq(&s.w[i], &s.v[j - 1]) || t.eq(&s.w[i + 1], u))
        };
        if !keeps {
            continue;
        }
        *visited += 1;
        s.v.push(u.clone());
        if t.eq(s.w.last().expect("nonempty"), u) {
            visit(s, TrioVerdict { member: true, exact: t.exact });
        }
        grow_v(t, words, budget - u.len() - 1, s, visit, visited);
        s.v.pop();
    }
}
