use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::words::FiniteWord;

use super::{BuchiAutomaton, StateId};

/// State-pair relation induced by a nonempty finite word: for every pair
/// `(p, q)`, no path, a path, or a path visiting an accepting state
/// (counting the target, not the source).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    n: usize,
    cells: Vec<u8>,
}

impl Relation {
    pub const NONE: u8 = 0;
    pub const PATH: u8 = 1;
    pub const ACCEPTING: u8 = 2;

    fn of_letter(a: &BuchiAutomaton, letter: usize) -> Relation {
        let n = a.num_states();
        let mut cells = vec![Self::NONE; n * n];
        for p in 0..n {
            for &q in a.successors(p, letter) {
                cells[p * n + q] = if a.is_accepting(q) { Self::ACCEPTING } else { Self::PATH };
            }
        }
        Relation { n, cells }
    }

    pub fn get(&self, p: StateId, q: StateId) -> u8 {
        self.cells[p * self.n + q]
    }

    /// Relation of the concatenated word.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.n;
        let mut cells = vec![Self::NONE; n * n];
        for p in 0..n {
            for q in 0..n {
                let x = self.cells[p * n + q];
                if x == Self::NONE {
                    continue;
                }
                for r in 0..n {
                    let y = other.cells[q * n + r];
                    if y != Self::NONE {
                        let v = x.max(y);
                        let cell = &mut cells[p * n + r];
                        if v > *cell {
                            *cell = v;
                        }
                    }
                }
            }
        }
        Relation { n, cells }
    }
}

/// The transition semigroup of a Büchi automaton on nonempty words, with a
/// shortlex-least witness word per element.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    elements: Vec<Relation>,
    witnesses: Vec<FiniteWord>,
    index: HashMap<Relation, usize>,
    letter_element: Vec<usize>,
    // right[e][letter] = e · letter
    right: Vec<Vec<usize>>,
    initial: Vec<StateId>,
}

impl TransitionMonoid {
    /// Breadth-first closure under right multiplication by letters, which
    /// visits elements in shortlex order of their witnesses.
    pub fn build(a: &BuchiAutomaton, max_elements: usize) -> Result<Self> {
        let k = a.alphabet().len();
        let mut m = TransitionMonoid {
            elements: Vec::new(),
            witnesses: Vec::new(),
            index: HashMap::new(),
            letter_element: Vec::with_capacity(k),
            right: Vec::new(),
            initial: a.initial().to_vec(),
        };
        for ci in 0..k {
            let r = Relation::of_letter(a, ci);
            let id = m.intern(r, FiniteWord::new(vec![a.alphabet().letter(ci)]), max_elements)?;
            m.letter_element.push(id);
        }
        let mut next = 0;
        while next < m.elements.len() {
            let mut row = Vec::with_capacity(k);
            for ci in 0..k {
                let prod = m.elements[next].compose(&m.elements[m.letter_element[ci]]);
                let mut w = m.witnesses[next].clone();
                w.push(a.alphabet().letter(ci));
                row.push(m.intern(prod, w, max_elements)?);
            }
            m.right.push(row);
            next += 1;
        }
        Ok(m)
    }

    fn intern(&mut self, r: Relation, witness: FiniteWord, max: usize) -> Result<usize> {
        if let Some(&id) = self.index.get(&r) {
            return Ok(id);
        }
        if self.elements.len() >= max {
            return Err(Error::BudgetExceeded { what: "transition monoid size", limit: max });
        }
        let id = self.elements.len();
        self.index.insert(r.clone(), id);
        self.elements.push(r);
        self.witnesses.push(witness);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &Relation {
        &self.elements[id]
    }

    pub fn witness(&self, id: usize) -> &FiniteWord {
        &self.witnesses[id]
    }

    pub fn letter_element(&self, letter: usize) -> usize {
        self.letter_element[letter]
    }

    pub fn right_letter(&self, id: usize, letter: usize) -> usize {
        self.right[id][letter]
    }

    pub fn compose(&self, x: usize, y: usize) -> usize {
        let r = self.elements[x].compose(&self.elements[y]);
        self.index[&r]
    }

    /// Element of a nonempty word over the automaton's alphabet, given as letter indices.
    pub fn element_of(&self, letters: &[usize]) -> Option<usize> {
        let (&first, rest) = letters.split_first()?;
        Some(rest.iter().fold(self.letter_element[first], |e, &c| self.right[e][c]))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.compose(e, e) == e
    }

    /// Whether `u·v^ω` is accepted for any `u` in class `s` and `v` in the
    /// idempotent class `e`: some initial state reaches, via `s`, a state
    /// with an accepting `e`-loop.
    pub fn pair_accepts(&self, s: usize, e: usize) -> bool {
        let (sr, er) = (&self.elements[s], &self.elements[e]);
        self.initial.iter().any(|&i| (0..sr.n).any(|q| sr.get(i, q) != Relation::NONE && er.get(q, q) == Relation::ACCEPTING))
    }

    /// Linked pairs `(s, e)`: `s·e = s` and `e·e = e`.
    pub fn linked_pairs(&self) -> Vec<(usize, usize)> {
        let idempotents: Vec<usize> = (0..self.len()).filter(|&e| self.is_idempotent(e)).collect();
        let mut out = Vec::new();
        for s in 0..self.len() {
            for &e in &idempotents {
                if self.compose(s, e) == s {
                    out.push((s, e));
                }
            }
        }
        out
    }
}
