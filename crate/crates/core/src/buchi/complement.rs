//! Ramsey-style complementation over the transition monoid.
//!
//! A word is rejected iff it factors as `u·v₁v₂⋯` with `[u] = s` and every
//! `[vᵢ] = e` for a linked pair `(s, e)` that does not accept. The complement
//! guesses such a factorization:
//!
//! * phase 1 tracks the class of the prefix read so far (`start` before any
//!   letter) and may jump to phase 2 once that class is some `s` with a
//!   rejecting pair `(s, e)`;
//! * phase 2 state `(e, m)` tracks the class `m` of the current factor and
//!   may close it when `m = e`, returning to `(e, start)`, which accepts.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{BuchiAutomaton, Limits, TransitionMonoid};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum State {
    Prefix(Option<usize>),
    Factor { e: usize, m: Option<usize> },
}

/// Automaton for the complement language. Fails with a budget error when the
/// monoid or the result exceeds `limits`.
pub fn complement(a: &BuchiAutomaton, limits: Limits) -> Result<BuchiAutomaton> {
    let monoid = TransitionMonoid::build(a, limits.max_monoid)?;
    let mut rejecting_for: Vec<Vec<usize>> = vec![Vec::new(); monoid.len()];
    for (s, e) in monoid.linked_pairs() {
        if !monoid.pair_accepts(s, e) {
            rejecting_for[s].push(e);
        }
    }
    let k = a.alphabet().len();
    let step = |m: Option<usize>, c: usize| match m {
        None => monoid.letter_element(c),
        Some(x) => monoid.right_letter(x, c),
    };

    let mut index: HashMap<State, usize> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |s: State, states: &mut Vec<State>| -> Result<usize> {
        if let Some(&id) = index.get(&s) {
            return Ok(id);
        }
        if states.len() >= limits.max_states {
            return Err(Error::BudgetExceeded { what: "complement states", limit: limits.max_states });
        }
        index.insert(s, states.len());
        states.push(s);
        Ok(states.len() - 1)
    };
    intern(State::Prefix(None), &mut states)?;
    let mut next = 0;
    while next < states.len() {
        let from = states[next];
        for c in 0..k {
            let letter = a.alphabet().letter(c);
            match from {
                State::Prefix(m) => {
                    let s = step(m, c);
                    let t = intern(State::Prefix(Some(s)), &mut states)?;
                    edges.push((next, letter, t));
                    for &e in &rejecting_for[s] {
                        let t = intern(State::Factor { e, m: None }, &mut states)?;
                        edges.push((next, letter, t));
                    }
                }
                State::Factor { e, m } => {
                    let x = step(m, c);
                    let t = intern(State::Factor { e, m: Some(x) }, &mut states)?;
                    edges.push((next, letter, t));
                    if x == e {
                        let t = intern(State::Factor { e, m: None }, &mut states)?;
                        edges.push((next, letter, t));
                    }
                }
            }
        }
        next += 1;
    }
    let accepting: Vec<usize> =
        states.iter().enumerate().filter(|(_, s)| matches!(s, State::Factor { m: None, .. })).map(|(i, _)| i).collect();
    BuchiAutomaton::from_parts(a.alphabet().clone(), states.len(), edges, [0], accepting)
}
