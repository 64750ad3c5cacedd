//! Bounded two-sided (Arnold) and right congruences of an oracle language.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracles::LanguageOracle;
use crate::words::{concat, FiniteWord, UpWord};

/// A context separating two words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArnoldContext {
    /// `w·u·v` versus `w·u′·v` for a lasso tail `v`.
    Tail { w: FiniteWord, v: UpWord },
    /// `w·(u·v)^ω` versus `w·(u′·v)^ω`.
    Loop { w: FiniteWord, v: FiniteWord },
}

impl ArnoldContext {
    /// The word the context builds around `u`, if it is an ω-word.
    pub fn apply(&self, u: &FiniteWord) -> Option<UpWord> {
        match self {
            ArnoldContext::Tail { w, v } => Some(concat(&w.concat(u), v)),
            ArnoldContext::Loop { w, v } => {
                let body = u.concat(v);
                if body.is_empty() {
                    None
                } else {
                    Some(UpWord::new(w.clone(), body).expect("nonempty"))
                }
            }
        }
    }
}

/// All contexts with `w, x, v ∈ Σ^{≤B}` and `y ∈ Σ^{1..B}`, tails before loops.
pub fn arnold_contexts(alphabet: &crate::words::Alphabet, bound: usize) -> Vec<ArnoldContext> {
    let words = FiniteWord::enumerate(alphabet, bound);
    let tails = UpWord::enumerate(alphabet, bound, bound);
    let mut out = Vec::with_capacity(words.len() * (tails.len() + words.len()));
    for w in &words {
        for v in &tails {
            out.push(ArnoldContext::Tail { w: w.clone(), v: v.clone() });
        }
    }
    for w in &words {
        for v in &words {
            out.push(ArnoldContext::Loop { w: w.clone(), v: v.clone() });
        }
    }
    out
}

fn signature(oracle: &dyn LanguageOracle, u: &FiniteWord, contexts: &[ArnoldContext]) -> Result<Vec<Option<bool>>> {
    contexts.iter().map(|ctx| ctx.apply(u).map(|x| oracle.contains_up(&x)).transpose()).collect()
}

fn first_difference(a: &[Option<bool>], b: &[Option<bool>]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| matches!((x, y), (Some(p), Some(q)) if p != q))
}

/// First context within bound `B` that separates `u` and `u′`, if any.
/// Loop contexts where one side is the empty word are skipped.
pub fn arnold_distinguish(
    oracle: &dyn LanguageOracle,
    u: &FiniteWord,
    u_prime: &FiniteWord,
    bound: usize,
) -> Result<Option<ArnoldContext>> {
    for ctx in arnold_contexts(oracle.alphabet(), bound) {
        if let (Some(x), Some(y)) = (ctx.apply(u), ctx.apply(u_prime)) {
            if oracle.contains_up(&x)? != oracle.contains_up(&y)? {
                return Ok(Some(ctx));
            }
        }
    }
    Ok(None)
}

pub fn arnold_equiv_bounded(oracle: &dyn LanguageOracle, u: &FiniteWord, u_prime: &FiniteWord, bound: usize) -> Result<bool> {
    if u == u_prime {
        return Ok(true);
    }
    Ok(arnold_distinguish(oracle, u, u_prime, bound)?.is_none())
}

/// Classes of the transitive closure of the pairwise verdicts on `Σ^{≤n}`,
/// plus every pair that landed in one class without being pairwise
/// equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArnoldPartition {
    pub classes: Vec<Vec<FiniteWord>>,
    pub non_transitive: Vec<(FiniteWord, FiniteWord)>,
}

impl ArnoldPartition {
    pub fn is_transitive(&self) -> bool {
        self.non_transitive.is_empty()
    }
}

pub fn arnold_classes_bounded(oracle: &dyn LanguageOracle, word_bound: usize, context_bound: usize) -> Result<ArnoldPartition> {
    let words = FiniteWord::enumerate(oracle.alphabet(), word_bound);
    let contexts = arnold_contexts(oracle.alphabet(), context_bound);
    let sigs = words.iter().map(|u| signature(oracle, u, &contexts)).collect::<Result<Vec<_>>>()?;
    let n = words.len();
    let mut equiv = vec![vec![false; n]; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n {
        for j in i..n {
            let e = first_difference(&sigs[i], &sigs[j]).is_none();
            equiv[i][j] = e;
            equiv[j][i] = e;
            if e {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<FiniteWord>> = Vec::new();
    let mut root_of_class: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_class.iter().position(|&x| x == r) {
            Some(k) => {
                classes[k].push(words[i].clone());
                members[k].push(i);
            }
            None => {
                root_of_class.push(r);
                classes.push(vec![words[i].clone()]);
                members.push(vec![i]);
            }
        }
    }
    let mut non_transitive = Vec::new();
    for m in &members {
        for (a, &i) in m.iter().enumerate() {
            for &j in &m[a + 1..] {
                if !equiv[i][j] {
                    non_transitive.push((words[i].clone(), words[j].clone()));
                }
            }
        }
    }
    Ok(ArnoldPartition { classes, non_transitive })
}

/// First lasso tail with `|prefix|, |period| ≤ B` on which `u·v` and `u′·v`
/// get different verdicts.
pub fn right_distinguish(
    oracle: &dyn LanguageOracle,
    u: &FiniteWord,
    u_prime: &FiniteWord,
    bound: usize,
) -> Result<Option<UpWord>> {
    for v in UpWord::enumerate(oracle.alphabet(), bound, bound) {
        if oracle.contains_up(&concat(u, &v))? != oracle.contains_up(&concat(u_prime, &v))? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn right_congruence_bounded(
    oracle: &dyn LanguageOracle,
    u: &FiniteWord,
    u_prime: &FiniteWord,
    bound: usize,
) -> Result<bool> {
    if u == u_prime {
        return Ok(true);
    }
    Ok(right_distinguish(oracle, u, u_prime, bound)?.is_none())
}
