//! Nondeterministic Büchi automata over explicit alphabets.
//!
//! Boolean operations, emptiness with lasso witnesses, lasso-word membership
//! and letter-to-letter images. Complementation goes through the
//! [`TransitionMonoid`] (see [`complement`]).

mod complement;
pub(crate) mod format;
mod monoid;

pub use complement::complement;
pub use monoid::{Relation, TransitionMonoid};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::LabelledGraph;
use crate::words::{Alphabet, FiniteWord, Homomorphism, UpWord};

pub type StateId = usize;

/// Caps for constructions whose output can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_monoid: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 1_000_000, max_monoid: 100_000 }
    }
}

/// A nondeterministic Büchi automaton. Transition targets are kept sorted and
/// deduplicated, so structural equality is equality of the transition sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    // delta[state][letter index] = sorted successor list
    delta: Vec<Vec<Vec<StateId>>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

/// Result of an emptiness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    NonEmpty(UpWord),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }

    pub fn witness(&self) -> Option<&UpWord> {
        match self {
            Emptiness::Empty => None,
            Emptiness::NonEmpty(w) => Some(w),
        }
    }
}

impl BuchiAutomaton {
    /// An automaton with `states` states and no transitions, initial or accepting states.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        BuchiAutomaton { alphabet, delta: vec![vec![Vec::new(); k]; states], initial: Vec::new(), accepting: vec![false; states] }
    }

    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        transitions: impl IntoIterator<Item = (StateId, char, StateId)>,
        initial: impl IntoIterator<Item = StateId>,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let mut a = BuchiAutomaton::new(alphabet, states);
        for (p, c, q) in transitions {
            a.add_transition(p, c, q)?;
        }
        for q in initial {
            a.set_initial(q)?;
        }
        for q in accepting {
            a.set_accepting(q)?;
        }
        Ok(a)
    }

    /// Accepts every word: one accepting state with all self-loops.
    pub fn universal(alphabet: Alphabet) -> Self {
        let letters = alphabet.letters().to_vec();
        BuchiAutomaton::from_parts(alphabet, 1, letters.into_iter().map(|c| (0, c, 0)), [0], [0]).expect("valid")
    }

    /// Accepts nothing.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        BuchiAutomaton::new(alphabet, 0)
    }

    /// "Infinitely many `letter`": two states, the accepting one entered on `letter`.
    pub fn infinitely_many(alphabet: Alphabet, letter: char) -> Result<Self> {
        alphabet.index_or_err(letter)?;
        let letters = alphabet.letters().to_vec();
        let trans = letters.into_iter().flat_map(|c| {
            let q = usize::from(c == letter);
            [(0, c, q), (1, c, q)]
        });
        BuchiAutomaton::from_parts(alphabet, 2, trans, [0], [1])
    }

    /// Words using only letters from `allowed`.
    pub fn only_letters(alphabet: Alphabet, allowed: &[char]) -> Result<Self> {
        alphabet.check_letters(allowed)?;
        BuchiAutomaton::from_parts(alphabet, 1, allowed.iter().map(|&c| (0, c, 0)), [0], [0])
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q >= self.num_states() {
            return Err(Error::invalid(format!("state {q} not declared (automaton has {} states)", self.num_states())));
        }
        Ok(())
    }

    pub fn add_transition(&mut self, p: StateId, c: char, q: StateId) -> Result<()> {
        self.check_state(p)?;
        self.check_state(q)?;
        let i = self.alphabet.index_or_err(c)?;
        let succ = &mut self.delta[p][i];
        if let Err(pos) = succ.binary_search(&q) {
            succ.insert(pos, q);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.accepting[q] = true;
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    /// Successors of `q` on the letter with alphabet index `letter`.
    pub fn successors(&self, q: StateId, letter: usize) -> &[StateId] {
        &self.delta[q][letter]
    }

    /// All transitions `(p, letter, q)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, char, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(move |(p, row)| {
            row.iter().enumerate().flat_map(move |(i, succ)| succ.iter().map(move |&q| (p, self.alphabet.letter(i), q)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    fn check_same_alphabet(&self, other: &BuchiAutomaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetsDiffer { left: self.alphabet.to_string(), right: other.alphabet.to_string() });
        }
        Ok(())
    }

    /// Membership of a lasso word.
    ///
    /// Runs over `u·v^ω` are paths in the product of the automaton with the
    /// lasso's positions `0..|u|+|v|` (the last position loops back to `|u|`),
    /// so acceptance is a reachable cycle through an accepting state.
    pub fn accepts_up(&self, w: &UpWord) -> Result<bool> {
        let letters: Vec<usize> = w
            .prefix()
            .letters()
            .iter()
            .chain(w.period().letters())
            .map(|&c| self.alphabet.index_or_err(c))
            .collect::<Result<_>>()?;
        let len = letters.len();
        let loop_to = w.prefix().len();
        let n = self.num_states();
        let node = |q: usize, pos: usize| q * len + pos;
        let mut g = LabelledGraph::new(n * len);
        for q in 0..n {
            for (pos, &c) in letters.iter().enumerate() {
                let next = if pos + 1 == len { loop_to } else { pos + 1 };
                for &r in &self.delta[q][c] {
                    g.add_edge(node(q, pos), node(r, next), ());
                }
            }
        }
        let roots: Vec<usize> = self.initial.iter().map(|&q| node(q, 0)).collect();
        Ok(g.accepting_lasso(&roots, |v| self.accepting[v / len]).is_some())
    }

    fn letter_graph(&self) -> LabelledGraph<char> {
        let mut g = LabelledGraph::new(self.num_states());
        for (p, c, q) in self.transitions() {
            g.add_edge(p, q, c);
        }
        g
    }

    /// Emptiness check; a nonempty automaton yields an accepted lasso word.
    pub fn is_empty(&self) -> Emptiness {
        match self.letter_graph().accepting_lasso(&self.initial, |q| self.accepting[q]) {
            None => Emptiness::Empty,
            Some((stem, cycle)) => {
                let w = UpWord::new(FiniteWord::new(stem), FiniteWord::new(cycle)).expect("accepting cycles are nonempty");
                Emptiness::NonEmpty(w)
            }
        }
    }

    /// Drops states that are unreachable or from which no accepting cycle is reachable.
    pub fn trim(&self) -> BuchiAutomaton {
        let g = self.letter_graph();
        let reach = g.reachable(&self.initial);
        let live = g.live_nodes(|q| self.accepting[q]);
        let keep: Vec<usize> = (0..self.num_states()).filter(|&q| reach[q] && live[q]).collect();
        let mut renum = vec![usize::MAX; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            renum[q] = i;
        }
        let mut out = BuchiAutomaton::new(self.alphabet.clone(), keep.len());
        for (p, c, q) in self.transitions() {
            if renum[p] != usize::MAX && renum[q] != usize::MAX {
                out.add_transition(renum[p], c, renum[q]).expect("kept states");
            }
        }
        for &q in &self.initial {
            if renum[q] != usize::MAX {
                out.set_initial(renum[q]).expect("kept state");
            }
        }
        for &q in &keep {
            if self.accepting[q] {
                out.set_accepting(renum[q]).expect("kept state");
            }
        }
        out
    }

    /// Disjoint union.
    pub fn union(&self, other: &BuchiAutomaton) -> Result<BuchiAutomaton> {
        self.check_same_alphabet(other)?;
        let off = self.num_states();
        let mut out = BuchiAutomaton::new(self.alphabet.clone(), off + other.num_states());
        for (p, c, q) in self.transitions() {
            out.add_transition(p, c, q)?;
        }
        for (p, c, q) in other.transitions() {
            out.add_transition(p + off, c, q + off)?;
        }
        for &q in &self.initial {
            out.set_initial(q)?;
        }
        for &q in &other.initial {
            out.set_initial(q + off)?;
        }
        for q in self.accepting_states() {
            out.set_accepting(q)?;
        }
        for q in other.accepting_states() {
            out.set_accepting(q + off)?;
        }
        Ok(out)
    }

    /// Product with a phase flag: phase 0 waits for an accepting state of
    /// `self`, phase 1 for one of `other`; accepting are the phase-1 states
    /// where `other` accepts. Only reachable pairs are built.
    pub fn intersect(&self, other: &BuchiAutomaton) -> Result<BuchiAutomaton> {
        self.check_same_alphabet(other)?;
        let mut index: HashMap<(StateId, StateId, u8), usize> = HashMap::new();
        let mut states: Vec<(StateId, StateId, u8)> = Vec::new();
        let mut edges: Vec<(usize, char, usize)> = Vec::new();
        let mut intern = |key: (StateId, StateId, u8), states: &mut Vec<_>| -> usize {
            *index.entry(key).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            })
        };
        let mut init = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                init.push(intern((p, q, 0), &mut states));
            }
        }
        let mut next = 0;
        while next < states.len() {
            let (p, q, phase) = states[next];
            let flag = match phase {
                0 if self.accepting[p] => 1,
                1 if other.accepting[q] => 0,
                f => f,
            };
            for (ci, &c) in self.alphabet.letters().iter().enumerate() {
                for &p2 in &self.delta[p][ci] {
                    for &q2 in &other.delta[q][ci] {
                        let t = intern((p2, q2, flag), &mut states);
                        edges.push((next, c, t));
                    }
                }
            }
            next += 1;
        }
        let accepting = states.iter().enumerate().filter(|(_, s)| s.2 == 1 && other.accepting[s.1]).map(|(i, _)| i);
        BuchiAutomaton::from_parts(self.alphabet.clone(), states.len(), edges, init, accepting.collect::<Vec<_>>())
    }

    /// Complement with default limits.
    pub fn complement(&self) -> Result<BuchiAutomaton> {
        complement(self, Limits::default())
    }

    /// Language equivalence via emptiness of both differences.
    pub fn equivalent(&self, other: &BuchiAutomaton, limits: Limits) -> Result<bool> {
        let a_minus_b = self.intersect(&complement(other, limits)?)?;
        if !a_minus_b.is_empty().is_empty() {
            return Ok(false);
        }
        let b_minus_a = other.intersect(&complement(self, limits)?)?;
        Ok(b_minus_a.is_empty().is_empty())
    }

    /// Image under a letter-to-letter homomorphism whose source is this alphabet.
    pub fn map_letters(&self, h: &Homomorphism) -> Result<BuchiAutomaton> {
        if h.source() != &self.alphabet {
            return Err(Error::AlphabetsDiffer { left: h.source().to_string(), right: self.alphabet.to_string() });
        }
        if !h.is_letter_to_letter() {
            return Err(Error::invalid("map_letters needs a letter-to-letter homomorphism"));
        }
        let mut out = BuchiAutomaton::new(h.target().clone(), self.num_states());
        for (p, c, q) in self.transitions() {
            out.add_transition(p, h.letter_image(c)?, q)?;
        }
        out.initial = self.initial.clone();
        out.accepting = self.accepting.clone();
        Ok(out)
    }

    /// Inverse image under a letter-to-letter homomorphism whose target is this alphabet.
    pub fn inverse_map_letters(&self, h: &Homomorphism) -> Result<BuchiAutomaton> {
        if h.target() != &self.alphabet {
            return Err(Error::AlphabetsDiffer { left: h.target().to_string(), right: self.alphabet.to_string() });
        }
        if !h.is_letter_to_letter() {
            return Err(Error::invalid("inverse_map_letters needs a letter-to-letter homomorphism"));
        }
        let mut out = BuchiAutomaton::new(h.source().clone(), self.num_states());
        for &y in h.source().letters() {
            let ci = self.alphabet.index_or_err(h.letter_image(y)?)?;
            for p in 0..self.num_states() {
                for &q in &self.delta[p][ci] {
                    out.add_transition(p, y, q)?;
                }
            }
        }
        out.initial = self.initial.clone();
        out.accepting = self.accepting.clone();
        Ok(out)
    }
}
